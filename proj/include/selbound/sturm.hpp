#pragma once

#include "selbound/poly.hpp"

namespace selbound::arith {

// Isolating interval for one real root: the root lies in [lo, hi];
// lo == hi means the root is the rational number itself.
struct root_interval {
    qrat lo, hi;
    qrat width() const { return hi - lo; }
    bool exact() const { return lo == hi; }
};

int sign_at(const zpoly& f, const qrat& x);

// Sturm chain of a squarefree integer polynomial (primitive remainders).
std::vector<zpoly> sturm_chain(const zpoly& f);
// Distinct roots in (a, b]; a, b must not be roots of f.
int sturm_count(const std::vector<zpoly>& chain, const qrat& a, const qrat& b);
int real_root_count(const zpoly& f);  // accepts any squarefree f

// Cauchy bound: all real roots lie in (-B, B).
qrat root_bound(const zpoly& f);

// One interval per real root, pairwise disjoint, ascending.
// Throws invalid_input_error on non-squarefree input.
std::vector<root_interval> isolate_real_roots(const zpoly& f);
std::vector<root_interval> isolate_real_roots(const qpoly& f);

// Shrink iv until width <= target (or exact); iv must isolate a root of f.
void refine_root(const zpoly& f, root_interval& iv, const qrat& target);

}  // namespace selbound::arith
