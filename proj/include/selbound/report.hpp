#pragma once

#include <json.hpp>

#include "selbound/bounds.hpp"
#include "selbound/twists.hpp"

namespace selbound::report {

using ordered_json = nlohmann::ordered_json;

// Curve specification document. See docs/formats.md.
struct curve_spec {
    std::string label;
    bool rational_base = true;
    arith::zpoly base_poly;               // when not rational
    arith::zpoly coeffs_q;                // base Q coefficients
    std::vector<arith::zpoly> coeffs_k;   // base K: power-basis integer vectors
    std::optional<double> declared_inert_density;
    std::map<int, std::string> class_data_refs;  // factor index -> file path
};

curve_spec load_curve_spec(const std::string& path);
curve make_curve(const curve_spec& spec);

// fills analysis options from the spec's class-data references
bounds::analysis_options options_from_spec(const curve_spec& spec);

ordered_json place_to_json(const hypotheses::place_report& rep);
ordered_json arch_to_json(const hypotheses::arch_profile& prof);
ordered_json class_data_to_json(const classgroups::class_group_data& d);
ordered_json bounds_to_json(const bounds::selmer_bounds_report& b);
ordered_json analysis_to_json(const curve& C, const bounds::curve_analysis& A);
ordered_json delta_to_json(const bounds::square_class_elem& e);
ordered_json density_to_json(const twists::density_report& d);

}  // namespace selbound::report
