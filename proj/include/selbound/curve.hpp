#pragma once

#include <optional>
#include <string>

#include "selbound/numberfield.hpp"

namespace selbound {

namespace nf = selbound::numberfields;
using arith::qpoly;
using selbound::qrat;
using arith::root_interval;
using arith::zpoly;

// ---- arithmetic in a number field K = Q[theta]/(m) ----
// elements are qpoly representatives of degree < deg m
qpoly nf_reduce(const nf::number_field& K, const qpoly& a);
qpoly nf_add(const nf::number_field& K, const qpoly& a, const qpoly& b);
qpoly nf_sub(const nf::number_field& K, const qpoly& a, const qpoly& b);
qpoly nf_mul(const nf::number_field& K, const qpoly& a, const qpoly& b);
qpoly nf_inv(const nf::number_field& K, const qpoly& a);

// polynomials over K, ascending coefficients
using kpoly = std::vector<qpoly>;
int kdeg(const kpoly& f);
kpoly kp_add(const nf::number_field& K, const kpoly& a, const kpoly& b);
kpoly kp_sub(const nf::number_field& K, const kpoly& a, const kpoly& b);
kpoly kp_mul(const nf::number_field& K, const kpoly& a, const kpoly& b);
void kp_divrem(const nf::number_field& K, const kpoly& a, const kpoly& b, kpoly& q, kpoly& r);
kpoly kp_gcd_monic(const nf::number_field& K, const kpoly& a, const kpoly& b);
kpoly kp_derivative(const nf::number_field& K, const kpoly& a);
qpoly kp_eval(const nf::number_field& K, const kpoly& f, const qrat& x);
qpoly kp_disc(const nf::number_field& K, const kpoly& f);  // monic f

// Trager: irreducible monic factors of a squarefree monic f over K,
// deterministic order.
std::vector<kpoly> factor_over_K(const nf::number_field& K, const kpoly& f);

// Count/isolate real roots of f^sigma for the j-th real embedding of K.
std::vector<root_interval> isolate_real_roots_at_embedding(const nf::number_field& K, const kpoly& f, size_t emb);

// ---- the curve ----

// per real place of the base: ordered real roots with the factor field and
// embedding index each root belongs to
struct real_place_profile {
    size_t base_embedding = 0;              // index into K.real_roots (0 for Q)
    std::vector<root_interval> roots;       // ascending
    std::vector<int> factor_of_root;        // index into curve factors
    std::vector<int> embedding_in_factor;   // index into that factor field's real embeddings
    int s() const { return (static_cast<int>(roots.size()) - 1) / 2; }
};

struct curve {
    std::string label;
    std::shared_ptr<const nf::number_field> K;  // null: base Q
    int d = 0, g = 0;

    zpoly pz;   // base Q: monic integral squarefree
    kpoly pk;   // base K: coefficients as power-basis representatives

    qpoly translation;  // the normalization shift c (constant for base Q)

    // factorization of p over the base
    std::vector<zpoly> factors_z;                   // base Q
    std::vector<kpoly> factors_k;                   // base K
    std::vector<std::shared_ptr<const nf::number_field>> factor_fields;  // absolute fields, one per factor
    // for base K: the absolute field of factor i is generated by
    // x + shift_i * theta; shift 0 means x itself generates
    std::vector<long> abs_shift;

    int r() const { return static_cast<int>(K ? factors_k.size() : factors_z.size()); }
    bool base_is_q() const { return !K; }
    int base_degree() const { return K ? K->degree() : 1; }

    std::vector<real_place_profile> real_places;

    // absolute Q-algebra of K[x]/(p) on the order Z[theta][x]
    nf::algebra Babs;
    zint Babs_disc;        // trace-form disc of that order
    zint abs_disc_quotient;  // Babs_disc / prod(field discs): square of the index
};

// Normalizes a_{d-1} to be even at 2 (integral translation x -> x + c),
// validates monic / odd degree / squarefree / integral.
curve make_curve_q(const std::string& label, const zpoly& p);
curve make_curve_k(const std::string& label, std::shared_ptr<const nf::number_field> K, const kpoly& p);

// y^2 = a^d p(x/a), renormalized; a nonzero integer (base Q)
curve twist_curve(const curve& C, const zint& a);

// rational roots of p (they witness 2-torsion points)
std::vector<qrat> rational_weierstrass_roots(const curve& C);

}  // namespace selbound
