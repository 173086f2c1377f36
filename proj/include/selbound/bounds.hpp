#pragma once

#include <optional>

#include "selbound/classgroup.hpp"

namespace selbound::bounds {

using selbound::qrat;

enum class bound_mode { unconditional, conditional, relaxed };
const char* to_string(bound_mode m);

struct analysis_options {
    long padic_precision = 0;  // 0: disc-based default policy
    // one entry per factor field: an import path, or builtin when absent
    std::vector<std::optional<std::string>> class_data_imports;
    classgroups::builtin_effort effort;
    // pre-assembled class data (used by the twist scanner to share the base
    // curve's data across eligible twists); bypasses imports and builtin
    std::optional<std::vector<classgroups::class_group_data>> provided_class_data;
};

struct selmer_bounds_report {
    int genus = 0;
    int base_degree = 1;
    int cl_star_two_rank = 0;
    int dim_Q = 0;
    std::vector<std::pair<std::string, long>> corrections;  // v | 2: r_v - 1 - dim V_v
    long correction_sum = 0;
    long lower = 0, upper = 0;
    long lower_raw = 0;  // before torsion witnesses
    int torsion_witness_dim = 0;
    bound_mode mode = bound_mode::unconditional;
    std::vector<std::string> undecided_places;
    bool base_narrow_odd = true;
    bool base_narrow_heuristic = false;
    bool class_data_heuristic = false;
    std::vector<std::string> class_data_provenance;
    std::string family_note;
};

struct curve_analysis {
    std::vector<hypotheses::place_report> places;
    hypotheses::arch_profile arch;
    std::vector<classgroups::class_group_data> class_data;
    classgroups::cl_star_result clstar;
    selmer_bounds_report bounds;
};

curve_analysis analyze(const curve& C, const analysis_options& opt = {});
selmer_bounds_report selmer_bounds(const curve& C, const analysis_options& opt = {});

// family bound for y^2 = x^5 + a x with a = -p, p prime, p = 3 mod 8
curve_analysis relaxed_bounds_x5ax(const curve& C, const analysis_options& opt = {});

struct square_class_elem {
    qrat x_coord, y_coord;
    qrat norm_certificate;  // = p(a) = b^2
    struct parity_entry {
        int factor;
        zint p;
        int comp_index;
        long v;
    };
    std::vector<parity_entry> valuations;  // support valuations of (a - T)
    bool all_even = true;
};

// class of (a - T) for a rational point (a, b) with b != 0; base Q curves
square_class_elem delta_square_class(const curve& C, const qrat& a, const qrat& b);

// naive rational point search: x = n/d with |n|, d <= height, p(x) square
std::vector<std::pair<qrat, qrat>> search_rational_points(const curve& C, long height);

}  // namespace selbound::bounds
