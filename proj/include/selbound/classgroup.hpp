#pragma once

#include "selbound/curve.hpp"
#include "selbound/hypotheses.hpp"

namespace selbound::classgroups {

using arith::zmat;
using arith::zpoly;

struct class_relation {
    std::vector<long> exps;           // exponents over the generating primes
    std::vector<std::uint8_t> signs;  // sign bits at the real embeddings
};

struct class_group_data {
    zpoly field_poly;
    std::vector<zint> invariants;  // SNF diagonal, entries > 1, divisibility chain
    std::vector<nf::prime_ideal> generators;
    std::vector<class_relation> relations;
    std::vector<std::vector<std::uint8_t>> unit_signs;  // rows: -1 first, then units
    int r1 = 0;

    enum class source_t { builtin, imported } source = source_t::builtin;
    std::string provenance;  // effort string or import path
    std::string digest;      // sha256 of the imported file
    bool heuristic = true;   // false when the trivial-bound certificate applies

    zint order() const {
        zint h = 1;
        for (const auto& d : invariants) h *= d;
        return h;
    }
    int two_rank() const {
        int r = 0;
        for (const auto& d : invariants)
            if (zmod(d, 2) == 0) r++;
        return r;
    }
};

struct builtin_effort {
    long coord_bound = 3;   // element search box half-width
    int passes = 2;         // effort-doubling stability passes
    long max_degree = 5;
    zint max_disc = zpow(10, 8);
};

// Minkowski-bound generators + bounded element search; throws
// provider_unavailable_error beyond the configured limits.
class_group_data class_group_builtin(const nf::number_field& L, const builtin_effort& effort = {});

// JSON import (schema documented in docs/formats.md); digest recorded.
class_group_data import_class_data(const std::string& path);

// narrow class number odd? (used for the base-field hypothesis); certified
// only when the underlying data is
struct narrow_result {
    zint h_plus;
    bool odd;
    bool heuristic;
};
narrow_result narrow_class_info(const class_group_data& data);

struct cl_star_result {
    int two_rank = 0;
    std::vector<zint> invariants;  // of the presented group
    int dim_Q = 0;                 // = sum s_v
    bool heuristic = true;
};

// Presentation-based Cl_*(A_K, C)[2] rank from per-factor class data and the
// archimedean pairing structure.
cl_star_result cl_star_two_rank(const curve& C, const hypotheses::arch_profile& prof,
                                const std::vector<class_group_data>& data);

// #(A_O^x / (A_O^x)^2)_square, computed by the closed form and by the direct
// Dirichlet count; throws internal_inconsistency_error on mismatch.
zint square_class_unit_count(const curve& C, const hypotheses::arch_profile& prof);

}  // namespace selbound::classgroups
