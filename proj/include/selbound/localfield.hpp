#pragma once

#include <optional>

#include "selbound/fq.hpp"
#include "selbound/order.hpp"
#include "selbound/poly.hpp"

namespace selbound::localfields {

using arith::fq_ctx;
using arith::fqelem;
using arith::fqpoly;
using arith::zpoly;

// A completion presented as an unramified step (residue modulus from the
// deterministic table) optionally followed by an Eisenstein step. Arithmetic
// runs through the maximal order of a global model, carried mod p^N.
struct local_field {
    zint p;
    int f0 = 1;          // unramified degree
    int e0 = 1;          // ramification of the Eisenstein step
    long N = 0;          // working precision in uniformizer powers
    zpoly unram_modulus; // integer lift of the residue modulus
    std::vector<zpoly> eis;  // Eisenstein coefficients as polynomials in t; empty iff e0 == 1

    numberfields::algebra amb;       // global model Q[t,pi]/(u,E)
    numberfields::split_result S;    // its single component at p
    fq_ctx k;                        // residue field F_{p^f0}

    int degree() const { return e0 * f0; }
};

local_field make_qp(const zint& p, long N);
local_field make_unramified(const zint& p, int f0, long N);
// Eisenstein step over the unramified base; coeffs ascending, monic,
// given as integer polynomials in t. Validates the Eisenstein shape.
local_field make_eisenstein(const zint& p, int f0, const std::vector<zpoly>& eis_coeffs, long N);

// Elements are maximal-order coordinates mod p^N.
struct local_elem {
    std::vector<zint> coords;
    bool operator==(const local_elem& o) const { return coords == o.coords; }
};

local_elem elem_from_int(const local_field& F, const zint& a);
local_elem elem_from_tpoly(const local_field& F, const zpoly& rep);  // polynomial in t
local_elem elem_gen_t(const local_field& F);
local_elem elem_gen_pi(const local_field& F);
local_elem elem_add(const local_field& F, const local_elem& a, const local_elem& b);
local_elem elem_sub(const local_field& F, const local_elem& a, const local_elem& b);
local_elem elem_mul(const local_field& F, const local_elem& a, const local_elem& b);
// v(pi) = 1; LONG_MAX for 0 mod p^N; throws precision_error when uncertifiable
long elem_valuation(const local_field& F, const local_elem& a);
fqelem elem_residue(const local_field& F, const local_elem& a);
// section of the residue map
local_elem elem_lift_residue(const local_field& F, const fqelem& r);

// One irreducible factor of p(x) over the completion, with its residue data.
// q_i is the characteristic polynomial of Tbar over the base residue field k
// (equal to the minimal polynomial whenever k(Tbar) = k_i); its subleading
// coefficient realizes t_i = Tr_{k_i/k}(Tbar).
struct local_factor_data {
    long e = 0, f = 0;
    fq_ctx ki;               // absolute residue field F_{p^(f0*f)}
    fqelem Tbar;             // image of x in ki
    fqpoly residue_charpoly; // over k, degree f
    fqelem trace;            // t_i in k
    // monic factor to precision N; coefficients are elements of the base
    // completion (empty when the lift was not computed)
    std::vector<local_elem> factor;
};

struct local_factorization {
    local_field F;
    std::vector<zpoly> input_coeffs;  // coefficients of p(x) as polynomials in t
    long N = 0;
    zint pN;
    bool certified = false;   // (e_i, f_i, residue data) certified exact
    bool lifted = false;      // factor polynomials available mod p^N
    std::vector<local_factor_data> factors;
    int r() const { return static_cast<int>(factors.size()); }

    // engine over the x-algebra, kept for valuation queries (Q_p base only)
    std::optional<numberfields::split_result> engine;
};

// Factor a monic integral polynomial over the completion. Coefficients are
// given as integer polynomials in t (constants when F = Q_p). Precision
// escalation doubles N from the disc-based default up to the cap; an
// uncertified result is returned (never thrown) when the cap is hit.
local_factorization local_factor(const std::vector<zpoly>& coeffs, const local_field& F);
local_factorization local_factor(const zpoly& f, const local_field& F);

// Trace vector (t_1, ..., t_r) in k; refuses uncertified input.
std::vector<fqelem> residue_trace_vector(const local_factorization& fac);

// v(Res(p_i, p_j)) for i < j, as a full symmetric matrix with -1 on the
// diagonal. Throws precision_error if some entry cannot be certified.
std::vector<std::vector<long>> cross_resultant_valuations(const local_factorization& fac);

// Valuation of disc(p) in the completion (exact; input data is global).
long disc_valuation(const std::vector<zpoly>& coeffs, const local_field& F);

}  // namespace selbound::localfields
