#pragma once

#include <memory>
#include <vector>

#include "selbound/poly.hpp"

namespace selbound::arith {

// F_{p^k} = F_p[z]/(modulus); elements are coefficient vectors of length < k
// with entries reduced into [0, p).
struct fq_ctx {
    zint p;
    int k = 1;
    zpoly modulus;  // monic irreducible over F_p, degree k

    zint q() const {
        zint r;
        mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(k));
        return r;
    }
    bool operator==(const fq_ctx& o) const { return p == o.p && k == o.k && modulus == o.modulus; }
};

// Deterministic modulus table: the monic irreducible of degree k over F_p
// whose coefficient vector (a_0,...,a_{k-1}), read as a base-p number, is
// smallest. Reproducible across runs and machines.
fq_ctx make_fq(const zint& p, int k);

struct fqelem {
    std::vector<zint> c;  // length <= k, reduced, no trailing zeros
    bool is_zero() const { return c.empty(); }
    bool operator==(const fqelem& o) const { return c == o.c; }
    bool operator!=(const fqelem& o) const { return !(c == o.c); }
};

fqelem fq_make(const fq_ctx& F, const zpoly& rep);
fqelem fq_from_int(const fq_ctx& F, const zint& a);
fqelem fq_zero();
fqelem fq_one(const fq_ctx& F);
fqelem fq_gen(const fq_ctx& F);  // class of z
fqelem fq_add(const fq_ctx& F, const fqelem& a, const fqelem& b);
fqelem fq_sub(const fq_ctx& F, const fqelem& a, const fqelem& b);
fqelem fq_neg(const fq_ctx& F, const fqelem& a);
fqelem fq_mul(const fq_ctx& F, const fqelem& a, const fqelem& b);
fqelem fq_inv(const fq_ctx& F, const fqelem& a);
fqelem fq_pow(const fq_ctx& F, const fqelem& a, const zint& e);
// a^(p^j): Frobenius iterate
fqelem fq_frob(const fq_ctx& F, const fqelem& a, int j = 1);
// Tr_{F/F_p}(a), returned as an integer in [0,p)
zint fq_trace_abs(const fq_ctx& F, const fqelem& a);
// Encoding sum a_i p^i; total order used for deterministic choices.
zint fq_code(const fq_ctx& F, const fqelem& a);
// minimal polynomial over F_p (integer coefficients in [0,p))
zpoly fq_minpoly(const fq_ctx& F, const fqelem& a);

// Polynomials over F_q, ascending coefficients, no trailing zeros.
struct fqpoly {
    std::vector<fqelem> c;
    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    const fqelem& lc() const { return c.back(); }
    bool operator==(const fqpoly& o) const { return c == o.c; }
};

fqpoly fqp_from_zpoly(const fq_ctx& F, const zpoly& f);  // reduce integer coeffs
zpoly fqp_to_zpoly(const fq_ctx& F, const fqpoly& f);    // requires k == 1
fqpoly fqp_x(const fq_ctx& F);
fqpoly fqp_one(const fq_ctx& F);
fqpoly fqp_add(const fq_ctx& F, const fqpoly& a, const fqpoly& b);
fqpoly fqp_sub(const fq_ctx& F, const fqpoly& a, const fqpoly& b);
fqpoly fqp_mul(const fq_ctx& F, const fqpoly& a, const fqpoly& b);
fqpoly fqp_mul_scalar(const fq_ctx& F, const fqelem& a, const fqpoly& b);
fqpoly fqp_monic(const fq_ctx& F, const fqpoly& a);
void fqp_divrem(const fq_ctx& F, const fqpoly& a, const fqpoly& b, fqpoly& q, fqpoly& r);
fqpoly fqp_gcd(const fq_ctx& F, const fqpoly& a, const fqpoly& b);  // monic
fqpoly fqp_powmod(const fq_ctx& F, const fqpoly& a, const zint& e, const fqpoly& m);
fqpoly fqp_derivative(const fq_ctx& F, const fqpoly& a);
fqelem fqp_eval(const fq_ctx& F, const fqpoly& a, const fqelem& x);
fqpoly fqp_compose_mod(const fq_ctx& F, const fqpoly& a, const fqpoly& b, const fqpoly& m);
fqelem fqp_resultant(const fq_ctx& F, const fqpoly& a, const fqpoly& b);

struct fq_factor {
    fqpoly poly;  // monic irreducible
    int mult = 1;
};

// Distinct-degree + equal-degree splitting; deterministic output order
// (by degree, then by coefficient codes).
std::vector<fq_factor> fqp_factor(const fq_ctx& F, const fqpoly& f);
bool fqp_is_irreducible(const fq_ctx& F, const fqpoly& f);
std::vector<fqelem> fqp_roots(const fq_ctx& F, const fqpoly& f);  // distinct roots, sorted by code

// Smallest root (by code) of `sub.modulus` in F; defines the canonical
// embedding F_{p^m} -> F_{p^k} for m | k.
fqelem fq_subfield_gen(const fq_ctx& F, const fq_ctx& sub);
// Write a (lying in the image of `sub`) as a polynomial in zeta = subfield gen.
fqelem fq_express_in_subfield(const fq_ctx& F, const fq_ctx& sub, const fqelem& zeta, const fqelem& a);
// Tr_{F/sub}(a) as an element of `sub` (via the canonical embedding zeta).
fqelem fq_trace_rel(const fq_ctx& F, const fq_ctx& sub, const fqelem& zeta, const fqelem& a);

}  // namespace selbound::arith
