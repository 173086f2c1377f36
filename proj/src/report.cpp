#include "selbound/report.hpp"

#include <filesystem>
#include <fstream>

namespace selbound::report {

using namespace selbound::arith;

curve_spec load_curve_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw invalid_input_error("cannot open curve spec: " + path);
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw invalid_input_error(std::string("curve spec parse error: ") + e.what());
    }
    curve_spec spec;
    spec.label = j.value("label", path);
    auto get_int = [](const ordered_json& x) {
        if (x.is_string()) return zint(x.get<std::string>().c_str());
        return zint(x.get<long>());
    };
    if (j.contains("base_field") && j["base_field"].is_object()) {
        spec.rational_base = false;
        std::vector<zint> c;
        for (const auto& x : j["base_field"]["poly"]) c.push_back(get_int(x));
        spec.base_poly = zpoly(std::move(c));
    } else if (j.contains("base_field") && j["base_field"].is_string() && j["base_field"] != "rational") {
        throw invalid_input_error("curve spec: base_field must be \"rational\" or {\"poly\": [...]}");
    }
    if (!j.contains("coefficients")) throw invalid_input_error("curve spec: missing coefficients");
    if (spec.rational_base) {
        std::vector<zint> c;
        for (const auto& x : j["coefficients"]) {
            if (x.is_array()) throw invalid_input_error("curve spec: nested coefficients need a base_field poly");
            c.push_back(get_int(x));
        }
        spec.coeffs_q = zpoly(std::move(c));
    } else {
        for (const auto& x : j["coefficients"]) {
            std::vector<zint> c;
            if (x.is_array())
                for (const auto& y : x) c.push_back(get_int(y));
            else c.push_back(get_int(x));
            spec.coeffs_k.push_back(zpoly(std::move(c)));
        }
    }
    if (j.contains("galois") && j["galois"].contains("inert_density"))
        spec.declared_inert_density = j["galois"]["inert_density"].get<double>();
    if (j.contains("class_data")) {
        auto dir = std::filesystem::path(path).parent_path();
        for (const auto& [k, v] : j["class_data"].items()) {
            std::filesystem::path ref = v.get<std::string>();
            if (ref.is_relative()) ref = dir / ref;
            spec.class_data_refs[std::stoi(k)] = ref.lexically_normal().string();
        }
    }
    return spec;
}

curve make_curve(const curve_spec& spec) {
    if (spec.rational_base) return make_curve_q(spec.label, spec.coeffs_q);
    auto K = nf::make_number_field(spec.base_poly);
    kpoly p;
    for (const auto& c : spec.coeffs_k) p.push_back(to_qpoly(c));
    return make_curve_k(spec.label, K, p);
}

bounds::analysis_options options_from_spec(const curve_spec& spec) {
    bounds::analysis_options opt;
    int maxidx = -1;
    for (const auto& [i, path] : spec.class_data_refs) maxidx = std::max(maxidx, i);
    opt.class_data_imports.assign(static_cast<size_t>(maxidx + 1), std::nullopt);
    for (const auto& [i, path] : spec.class_data_refs) opt.class_data_imports[static_cast<size_t>(i)] = path;
    return opt;
}

ordered_json place_to_json(const hypotheses::place_report& rep) {
    ordered_json j;
    j["place"] = rep.place_id;
    j["residue_characteristic"] = rep.q.get_str();
    j["e"] = rep.e_v;
    j["f"] = rep.f_v;
    j["disc_valuation"] = rep.disc_valuation;
    j["r"] = rep.r_v;
    j["factor_e"] = rep.e_i;
    j["factor_f"] = rep.f_i;
    j["order_identity"] = hypotheses::to_string(rep.order_identity);
    j["component_condition"] = "undecided (component groups not computed here)";
    if (rep.trace_condition_defined) {
        j["trace_condition"] = rep.trace_condition ? "holds" : "fails";
        j["trace_space_dim"] = rep.dim_trace_space;
        j["S_space_dim"] = rep.r_v - 1;
        j["u4_image_log_index"] = rep.u4_index_log;
        ordered_json tc = ordered_json::array();
        for (const auto& t : rep.trace_codes) tc.push_back(t.get_str());
        j["trace_vector_codes"] = tc;
    }
    j["local_dims"] = {rep.dim_J2, rep.dim_square_classes, rep.dim_integral_square_classes};
    j["certified"] = rep.certified;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

ordered_json arch_to_json(const hypotheses::arch_profile& prof) {
    ordered_json j;
    ordered_json places = ordered_json::array();
    for (const auto& p : prof.places) {
        ordered_json pj;
        pj["base_embedding"] = p.base_embedding;
        pj["s"] = p.s;
        pj["dim_im_delta"] = p.dim_im_delta;
        pj["marked_embedding"] = p.marked_global;
        ordered_json prs = ordered_json::array();
        for (const auto& [a, b] : p.pairs) prs.push_back({a, b});
        pj["pairs"] = prs;
        places.push_back(pj);
    }
    j["real_places"] = places;
    ordered_json ac = ordered_json::object();
    for (const auto& [i, c] : prof.a_counts) ac[std::to_string(i)] = c;
    j["a_counts"] = ac;
    j["complex_places"] = prof.complex_places;
    j["total_real_embeddings"] = prof.total_real_embeddings;
    j["sum_s"] = prof.sum_s;
    return j;
}

ordered_json class_data_to_json(const classgroups::class_group_data& d) {
    ordered_json j;
    j["field_poly"] = to_string(d.field_poly);
    ordered_json inv = ordered_json::array();
    for (const auto& x : d.invariants) inv.push_back(x.get_str());
    j["invariants"] = inv;
    j["order"] = d.order().get_str();
    j["two_rank"] = d.two_rank();
    j["generators"] = d.generators.size();
    j["relations"] = d.relations.size();
    j["provenance"] = (d.source == classgroups::class_group_data::source_t::imported ? "imported" : "builtin");
    j["detail"] = d.provenance;
    if (!d.digest.empty()) j["sha256"] = d.digest;
    j["heuristic"] = d.heuristic;
    return j;
}

ordered_json bounds_to_json(const bounds::selmer_bounds_report& b) {
    ordered_json j;
    j["genus"] = b.genus;
    j["base_degree"] = b.base_degree;
    j["cl_star_two_rank"] = b.cl_star_two_rank;
    j["dim_Q"] = b.dim_Q;
    ordered_json corr = ordered_json::array();
    for (const auto& [id, c] : b.corrections) corr.push_back({{"place", id}, {"r-1-dimV", c}});
    j["corrections_at_2"] = corr;
    j["correction_sum"] = b.correction_sum;
    j["lower"] = b.lower;
    j["upper"] = b.upper;
    j["lower_before_witnesses"] = b.lower_raw;
    j["torsion_witness_dim"] = b.torsion_witness_dim;
    j["mode"] = bounds::to_string(b.mode);
    if (!b.undecided_places.empty()) j["undecided_places"] = b.undecided_places;
    j["base_narrow_class_odd"] = b.base_narrow_odd;
    j["class_data_heuristic"] = b.class_data_heuristic;
    j["class_data_provenance"] = b.class_data_provenance;
    if (!b.family_note.empty()) j["family_note"] = b.family_note;
    return j;
}

ordered_json analysis_to_json(const curve& C, const bounds::curve_analysis& A) {
    ordered_json j;
    j["schema_version"] = 1;
    j["tool"] = "selbound";
    ordered_json cj;
    cj["label"] = C.label;
    cj["base_field"] = C.base_is_q() ? ordered_json("rational") : ordered_json{{"poly", to_string(C.K->poly)}};
    cj["degree"] = C.d;
    cj["genus"] = C.g;
    if (C.base_is_q()) cj["polynomial"] = to_string(C.pz);
    else {
        ordered_json cc = ordered_json::array();
        for (const auto& c : C.pk) cc.push_back(to_string(c, "t"));
        cj["polynomial_coefficients"] = cc;
    }
    cj["normalization_translation"] = to_string(C.translation, "t");
    j["curve"] = cj;
    ordered_json pl = ordered_json::array();
    for (const auto& p : A.places) pl.push_back(place_to_json(p));
    j["finite_places"] = pl;
    j["archimedean"] = arch_to_json(A.arch);
    ordered_json cg = ordered_json::array();
    for (const auto& d : A.class_data) cg.push_back(class_data_to_json(d));
    j["class_groups"] = cg;
    ordered_json cs;
    cs["two_rank"] = A.clstar.two_rank;
    ordered_json inv = ordered_json::array();
    for (const auto& x : A.clstar.invariants) inv.push_back(x.get_str());
    cs["invariants"] = inv;
    cs["dim_Q"] = A.clstar.dim_Q;
    cs["heuristic"] = A.clstar.heuristic;
    j["cl_star"] = cs;
    j["bounds"] = bounds_to_json(A.bounds);
    return j;
}

ordered_json delta_to_json(const bounds::square_class_elem& e) {
    ordered_json j;
    j["point"] = {e.x_coord.get_str(), e.y_coord.get_str()};
    j["norm_certificate"] = e.norm_certificate.get_str();
    ordered_json vals = ordered_json::array();
    for (const auto& v : e.valuations) {
        vals.push_back({{"factor", v.factor}, {"p", v.p.get_str()}, {"component", v.comp_index}, {"v", v.v}});
    }
    j["valuations"] = vals;
    j["all_parities_even"] = e.all_even;
    return j;
}

ordered_json density_to_json(const twists::density_report& d) {
    ordered_json j;
    j["schema_version"] = d.schema_version;
    j["max_prime"] = d.max_prime.get_str();
    j["primes_scanned"] = d.primes_scanned;
    j["inert"] = d.inert;
    j["totally_ramified"] = d.totally_ramified;
    j["eligible"] = d.eligible_count;
    j["observed_inert_frequency"] = d.observed_inert_frequency;
    if (d.declared_expectation) {
        j["declared_expectation"] = *d.declared_expectation;
        j["sigma"] = d.sigma;
        j["within_3_sigma"] = d.within_3_sigma;
    }
    j["uniform_window"] = d.uniform_window;
    j["note"] = d.note;
    return j;
}

}  // namespace selbound::report
