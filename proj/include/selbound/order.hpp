#pragma once

#include "selbound/fq.hpp"
#include "selbound/linalg.hpp"
#include "selbound/poly.hpp"

namespace selbound::numberfields {

using arith::fq_ctx;
using arith::fqelem;
using arith::zmat;
using arith::zpoly;

// Etale Q-algebra carrying a distinguished Z-spanning order: basis
// w_0..w_{n-1} with integer structure constants w_i w_j = sum_k c_ijk w_k.
struct algebra {
    int n = 0;
    std::vector<zmat> lmul;   // lmul[i].at(j,k) = coefficient of w_k in w_i*w_j
    std::vector<zint> one;    // coordinates of 1

    std::vector<zint> mul(const std::vector<zint>& a, const std::vector<zint>& b) const;
    std::vector<qrat> mul_q(const std::vector<qrat>& a, const std::vector<qrat>& b) const;
    std::vector<zint> mul_mod(const std::vector<zint>& a, const std::vector<zint>& b, const zint& m) const;
    std::vector<zint> pow_mod(const std::vector<zint>& a, const zint& e, const zint& m) const;
    // trace of multiplication by w_i, precomputable
    zint trace_basis(int i) const;
};

// Z[x]/(f) on the power basis, f monic integral.
algebra algebra_from_poly(const zpoly& f);
// Tensor-style relative presentation: elements sum c_{ab} u_a x^b where
// u spans a base order (balg) and x satisfies a monic poly whose
// coefficients are given over that base order.
algebra algebra_relative(const algebra& base, const std::vector<std::vector<zint>>& poly_coeffs);

// trace-form discriminant of the distinguished order
zint algebra_disc(const algebra& A);

// p-maximal overorder of the distinguished order (Pohst-Zassenhaus round 2).
struct pmax_order {
    algebra A;    // multiplication table of the maximal order itself
    zmat num;     // rows: basis of O over the ambient basis, scaled by p^s
    long s = 0;   // denominator exponent
    long index_vp = 0;  // v_p([O : ambient order])
};
pmax_order p_maximal_order(const algebra& amb, const zint& p);

// Decomposition of O (x) Z_p into its local components, carried modulo p^N.
struct residue_component {
    int dim = 0;   // e * f
    int fdeg = 0;  // residue degree over F_p
    long e = 0;    // dim / fdeg
    fq_ctx k;      // standard model of the residue field
    zmat res_map;  // n x fdeg over F_p: residue coords of each O-basis vector
    std::vector<zint> idem;  // idempotent, O-coords mod p^N
    zmat comp_basis;         // dim x n over Z/p^N: rows span eps*O
    std::vector<int> pivots; // unit-pivot columns of comp_basis
};

struct split_result {
    zint p;
    long N = 0;
    zint pN;
    algebra amb;   // the ambient algebra the coordinates refer to
    pmax_order O;
    std::vector<residue_component> comps;

    // O-coordinates of an ambient element; requires p-integral coordinates.
    std::vector<zint> to_order_coords_mod(const std::vector<qrat>& amb_el) const;
    // residue of an element of O in component ci
    fqelem residue(int ci, const std::vector<zint>& o_coords) const;
};

split_result split_at_p(const algebra& amb, const zint& p, long N);

// Characteristic polynomial of multiplication by el on component ci,
// monic over Z/p^N (symmetric representatives).
zpoly component_charpoly(const split_result& S, int ci, const std::vector<zint>& el_ocoords);

// Valuation of el in the component's local field (v(uniformizer)=1).
// Returns -1 when the valuation cannot be certified at precision N and
// LONG_MAX when el is 0 mod p^N in the component.
long component_valuation(const split_result& S, int ci, const std::vector<zint>& el_ocoords);

// Default working precision: N = 2 v_p(disc) + 20, doubled on retry.
long default_precision(long disc_vp);
// Cap for precision escalation: 2^14 unless SELBOUND_PRECISION_CAP is set.
long precision_cap();

}  // namespace selbound::numberfields
