#pragma once

#include "selbound/curve.hpp"
#include "selbound/localfield.hpp"

namespace selbound::hypotheses {

using arith::fq_ctx;
using arith::fqelem;

enum class tristate { holds, fails, undecided };
const char* to_string(tristate t);

// dim of the span of the residue traces, with the sanity relation
// sum e_i t_i = 0 asserted before returning.
int trace_space_dim(const fq_ctx& k, const std::vector<fqelem>& traces, const std::vector<long>& e);

// Enumerates {(Tr_{k/F_2}(sigma_1 v), ..., Tr_{k/F_2}(sigma_r v)) : v in k},
// asserts its F_2-dimension equals dim_trace_space, and returns r - 1 - dim_trace_space.
long u4_image_log_index(const fq_ctx& k, const std::vector<fqelem>& traces, int dim_trace_space);

struct place_report {
    zint q;                 // residue characteristic
    int place_index = 0;    // index of v among the places of K over q
    std::string place_id;   // e.g. "2", "277", "2#1"
    long e_v = 1;
    int f_v = 1;            // absolute ramification/residue degree of v
    int r_v = 0;
    std::vector<long> e_i;
    std::vector<int> f_i;
    tristate order_identity = tristate::undecided;
    tristate component_condition = tristate::undecided;  // never computed here
    long disc_valuation = 0;
    // populated only for v | 2
    bool trace_condition_defined = false;
    bool trace_condition = false;
    int dim_trace_space = -1;
    long u4_index_log = -1;   // r_v - 1 - dim_trace_space
    long correction = 0;        // the same, used in the bound
    std::vector<zint> trace_codes;  // encodings of t_i in the residue model of v
    // local dimension triple
    long dim_J2 = -1, dim_square_classes = -1, dim_integral_square_classes = -1;
    bool certified = true;
    std::string note;
};

// local dimension triple (r-1+d2*g, 2(r-1+d2*g), r-1+2*d2*g)
void fill_local_dims(place_report& rep, int genus);

// Analyze one place of the base field over q (place_index enumerates the
// components of K at q; must be 0 when the base is Q). precision0 > 0
// overrides the disc-based starting precision (escalation still applies).
place_report analyze_place(const curve& C, const zint& q, int place_index, long precision0 = 0);

// All finite places where the order identity needs attention: everything over 2 plus
// the odd support of the discriminant.
std::vector<place_report> analyze_finite_places(const curve& C, long precision0 = 0);

tristate check_order_identity(const curve& C, const zint& q, int place_index);

// compute_V / u4 on a prepared local factorization (used directly by the
// local test suites, e.g. over unramified extensions of Q_2)
int trace_space_dim(const localfields::local_factorization& fac);
long u4_image_log_index(const localfields::local_factorization& fac);

struct arch_place {
    size_t base_embedding = 0;
    int s = 0;
    int dim_im_delta = 0;  // = s
    int marked_global = -1;               // global embedding index of vtilde
    std::vector<std::pair<int, int>> pairs;  // (v_i, v_i') global embedding indices
};

struct arch_profile {
    std::vector<arch_place> places;
    std::map<int, int> a_counts;        // #real roots (odd) -> number of places
    int complex_places = 0;
    std::vector<int> factor_offset;     // global index offset per factor field
    int total_real_embeddings = 0;      // #S_infty
    int sum_s = 0;
};

arch_profile archimedean_profile(const curve& C);

}  // namespace selbound::hypotheses
