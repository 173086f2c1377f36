#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "selbound/report.hpp"

namespace py = pybind11;
using namespace selbound;

namespace {

py::object json_to_py(const nlohmann::ordered_json& j) {
    switch (j.type()) {
        case nlohmann::ordered_json::value_t::null: return py::none();
        case nlohmann::ordered_json::value_t::boolean: return py::bool_(j.get<bool>());
        case nlohmann::ordered_json::value_t::number_integer: return py::int_(j.get<long long>());
        case nlohmann::ordered_json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case nlohmann::ordered_json::value_t::number_float: return py::float_(j.get<double>());
        case nlohmann::ordered_json::value_t::string: return py::str(j.get<std::string>());
        case nlohmann::ordered_json::value_t::array: {
            py::list out;
            for (const auto& x : j) out.append(json_to_py(x));
            return out;
        }
        case nlohmann::ordered_json::value_t::object: {
            py::dict out;
            for (const auto& [k, v] : j.items()) out[py::str(k)] = json_to_py(v);
            return out;
        }
        default: return py::none();
    }
}

arith::zpoly poly_from_list(const std::vector<std::string>& coeffs) {
    std::vector<zint> c;
    for (const auto& s : coeffs) c.emplace_back(s.c_str());
    return arith::zpoly(std::move(c));
}

py::object analyze_file(const std::string& path, bool relaxed) {
    auto spec = report::load_curve_spec(path);
    curve C = report::make_curve(spec);
    auto opt = report::options_from_spec(spec);
    auto A = relaxed ? bounds::relaxed_bounds_x5ax(C, opt) : bounds::analyze(C, opt);
    return json_to_py(report::analysis_to_json(C, A));
}

py::object analyze_coeffs(const std::vector<std::string>& coeffs, const std::string& label) {
    curve C = make_curve_q(label, poly_from_list(coeffs));
    auto A = bounds::analyze(C, {});
    return json_to_py(report::analysis_to_json(C, A));
}

py::object local_place(const std::string& path, const std::string& place) {
    auto spec = report::load_curve_spec(path);
    curve C = report::make_curve(spec);
    zint q;
    int pidx = 0;
    auto hash = place.find('#');
    if (hash == std::string::npos) {
        q = zint(place.c_str());
    } else {
        q = zint(place.substr(0, hash).c_str());
        pidx = std::stoi(place.substr(hash + 1));
    }
    return json_to_py(report::place_to_json(hypotheses::analyze_place(C, q, pidx)));
}

py::object delta_point(const std::string& path, const std::string& a, const std::string& b) {
    auto spec = report::load_curve_spec(path);
    curve C = report::make_curve(spec);
    qrat qa(a), qb(b);
    qa.canonicalize();
    qb.canonicalize();
    return json_to_py(report::delta_to_json(bounds::delta_square_class(C, qa, qb)));
}

py::object twist_scan(const std::string& path, long max_prime, const std::string& out, int jobs) {
    auto spec = report::load_curve_spec(path);
    curve C = report::make_curve(spec);
    twists::scan_options so;
    so.max_prime = max_prime;
    so.out_path = out;
    so.jobs = jobs;
    so.analysis = report::options_from_spec(spec);
    so.declared_inert_density = spec.declared_inert_density;
    return json_to_py(report::density_to_json(twists::scan(C, so)));
}

std::vector<std::pair<std::vector<std::string>, int>> factor_q(const std::vector<std::string>& coeffs) {
    auto fac = arith::factor_over_Q(poly_from_list(coeffs));
    std::vector<std::pair<std::vector<std::string>, int>> out;
    for (const auto& [g, m] : fac.factors) {
        std::vector<std::string> cs;
        for (const auto& c : g.c) cs.push_back(c.get_str());
        out.emplace_back(cs, m);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> isolate_roots(const std::vector<std::string>& coeffs) {
    auto ivs = arith::isolate_real_roots(poly_from_list(coeffs));
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& iv : ivs) out.emplace_back(iv.lo.get_str(), iv.hi.get_str());
    return out;
}

std::string disc_str(const std::vector<std::string>& coeffs) {
    return arith::discriminant_z(poly_from_list(coeffs)).get_str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "2-Selmer rank bounds for Jacobians of odd-degree hyperelliptic curves";
    m.def("analyze", &analyze_file, py::arg("spec_path"), py::arg("relaxed") = false,
          "Full analysis report for a curve specification file");
    m.def("analyze_coefficients", &analyze_coeffs, py::arg("coefficients"), py::arg("label") = "curve",
          "Analyze y^2 = p(x) over Q from ascending integer coefficients (as strings)");
    m.def("local_place", &local_place, py::arg("spec_path"), py::arg("place"),
          "Place report for one finite place (e.g. '2' or '5#1')");
    m.def("delta", &delta_point, py::arg("spec_path"), py::arg("x"), py::arg("y"),
          "Square class data of (x(P) - T) for a rational point");
    m.def("twist_scan", &twist_scan, py::arg("spec_path"), py::arg("max_prime"), py::arg("out_path"),
          py::arg("jobs") = 1, "Scan quadratic twists by primes; appends NDJSON records");
    m.def("factor_over_q", &factor_q, py::arg("coefficients"),
          "Irreducible factors over Q with multiplicities (coefficients as strings)");
    m.def("isolate_real_roots", &isolate_roots, py::arg("coefficients"),
          "Isolating rational intervals for the real roots");
    m.def("discriminant", &disc_str, py::arg("coefficients"), "Discriminant of an integer polynomial");
    m.attr("__version__") = "0.1.0";
}
