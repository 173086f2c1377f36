#pragma once

#include "selbound/poly.hpp"

namespace selbound::arith {

// Factorization over Q. Factors are primitive integer polynomials with
// positive leading coefficient; f = content * prod factors[i]^mult[i].
// Deterministic order: by degree, then by coefficients compared from the
// leading one down.
struct qfactorization {
    qrat content;
    std::vector<std::pair<zpoly, int>> factors;
};

qfactorization factor_over_Q(const qpoly& f);
qfactorization factor_over_Q(const zpoly& f);

bool is_irreducible_over_Q(const zpoly& f);

// Rational roots of f (exact), ascending.
std::vector<qrat> rational_roots(const zpoly& f);

}  // namespace selbound::arith
