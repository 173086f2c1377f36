#include "selbound/bounds.hpp"

#include <algorithm>
#include <numeric>

#include "selbound/primes.hpp"

namespace selbound::bounds {

using namespace selbound::arith;
using namespace selbound::classgroups;
using namespace selbound::hypotheses;

const char* to_string(bound_mode m) {
    switch (m) {
        case bound_mode::unconditional: return "unconditional";
        case bound_mode::conditional: return "conditional";
        default: return "relaxed";
    }
}

namespace {

std::vector<class_group_data> collect_class_data(const curve& C, const analysis_options& opt) {
    if (opt.provided_class_data) {
        if (opt.provided_class_data->size() != C.factor_fields.size())
            throw invalid_input_error("provided class data: factor count mismatch");
        return *opt.provided_class_data;
    }
    std::vector<class_group_data> out;
    for (size_t i = 0; i < C.factor_fields.size(); i++) {
        if (i < opt.class_data_imports.size() && opt.class_data_imports[i]) {
            auto data = import_class_data(*opt.class_data_imports[i]);
            if (!(data.field_poly == C.factor_fields[i]->poly))
                throw invalid_input_error("class data import: field polynomial does not match factor " +
                                          std::to_string(i));
            out.push_back(std::move(data));
        } else {
            out.push_back(class_group_builtin(*C.factor_fields[i], opt.effort));
        }
    }
    return out;
}

int torsion_witness_dim(const curve& C) {
    int t = static_cast<int>(rational_weierstrass_roots(C).size());
    if (t == 0) return 0;
    return t == C.d ? C.d - 1 : t;
}

void assemble_bounds(const curve& C, curve_analysis& A, bool base_narrow_odd, bool base_narrow_heuristic) {
    auto& B = A.bounds;
    B.genus = C.g;
    B.base_degree = C.base_degree();
    B.cl_star_two_rank = A.clstar.two_rank;
    B.dim_Q = A.clstar.dim_Q;
    B.correction_sum = 0;
    for (const auto& rep : A.places) {
        if (rep.q == 2) {
            B.corrections.emplace_back(rep.place_id, rep.correction);
            B.correction_sum += rep.correction;
        }
        if (rep.order_identity != tristate::holds) B.undecided_places.push_back(rep.place_id);
    }
    B.upper = A.clstar.two_rank + static_cast<long>(C.g) * C.base_degree();
    long raw = A.clstar.two_rank - B.correction_sum;
    B.lower_raw = std::max(0L, raw);
    B.torsion_witness_dim = torsion_witness_dim(C);
    B.lower = std::max(B.lower_raw, static_cast<long>(B.torsion_witness_dim));
    B.base_narrow_odd = base_narrow_odd;
    B.base_narrow_heuristic = base_narrow_heuristic;
    B.class_data_heuristic = A.clstar.heuristic;
    for (const auto& d : A.class_data)
        B.class_data_provenance.push_back(
            (d.source == class_group_data::source_t::imported ? "imported:" : "") + d.provenance +
            (d.digest.empty() ? "" : " sha256:" + d.digest));
    B.mode = bound_mode::unconditional;
    if (!B.undecided_places.empty() || !base_narrow_odd) B.mode = bound_mode::conditional;
    if (B.lower > B.upper) throw internal_inconsistency_error("bounds: lower exceeds upper");
}

}  // namespace

curve_analysis analyze(const curve& C, const analysis_options& opt) {
    curve_analysis A;
    A.places = analyze_finite_places(C, opt.padic_precision);
    A.arch = archimedean_profile(C);
    A.class_data = collect_class_data(C, opt);
    A.clstar = cl_star_two_rank(C, A.arch, A.class_data);
    bool narrow_odd = true, narrow_heur = false;
    if (!C.base_is_q()) {
        auto base_cg = class_group_builtin(*C.K, opt.effort);
        auto nr = narrow_class_info(base_cg);
        narrow_odd = nr.odd;
        narrow_heur = nr.heuristic;
    }
    assemble_bounds(C, A, narrow_odd, narrow_heur);
    return A;
}

selmer_bounds_report selmer_bounds(const curve& C, const analysis_options& opt) { return analyze(C, opt).bounds; }

curve_analysis relaxed_bounds_x5ax(const curve& C, const analysis_options& opt) {
    if (!C.base_is_q()) throw invalid_input_error("relaxed bound: the x^5+ax family lives over Q");
    if (C.d != 5) throw invalid_input_error("relaxed bound: degree-5 family only");
    // shape x^5 + a x, a = -p, p prime, p = 3 mod 8 (the analysis of this
    // family is specific to that congruence class)
    zint a = C.pz.coeff(1);
    if (C.pz.coeff(0) != 0 || C.pz.coeff(2) != 0 || C.pz.coeff(3) != 0 || C.pz.coeff(4) != 0)
        throw invalid_input_error("relaxed bound: curve is not of the form y^2 = x^5 + a x");
    zint p = -a;
    if (p <= 0 || !is_prime(p)) throw invalid_input_error("relaxed bound: a = -p with p prime required");
    if (zmod(p, 8) != 3) throw invalid_input_error("relaxed bound: p = 3 mod 8 required");

    curve_analysis A;
    A.places = analyze_finite_places(C, opt.padic_precision);
    A.arch = archimedean_profile(C);
    A.class_data = collect_class_data(C, opt);
    A.clstar = cl_star_two_rank(C, A.arch, A.class_data);
    assemble_bounds(C, A, true, false);
    auto& B = A.bounds;
    B.mode = bound_mode::relaxed;
    // (0,0) is a 2-torsion point; the upper bound carries +2 for the even
    // place and +1 for the single bad odd place p
    B.lower = 1;
    B.upper = A.clstar.two_rank + 2 + 1;
    B.family_note = "x^5 - p x family, p = " + p.get_str() +
                    " (3 mod 8): upper bound Cl_*[2] + 2 + 1, lower from the 2-torsion point (0,0)";
    if (B.lower > B.upper) throw internal_inconsistency_error("relaxed bounds: lower exceeds upper");
    return A;
}

square_class_elem delta_square_class(const curve& C, const qrat& a, const qrat& b) {
    if (!C.base_is_q()) throw provider_unavailable_error("delta evaluation implemented for base Q curves");
    if (b == 0) throw invalid_input_error("delta: 2-torsion points (b = 0) are handled as witnesses only");
    qrat pa = eval(C.pz, a);
    if (b * b != pa) throw invalid_input_error("delta: point is not on the curve");
    square_class_elem out;
    out.x_coord = a;
    out.y_coord = b;
    out.norm_certificate = pa;
    // norm identity per factor: N(a - T_i) = p_i(a); product = p(a) = b^2
    qrat prod = 1;
    for (const auto& g : C.factors_z) prod *= eval(g, a);
    if (prod != pa) throw internal_inconsistency_error("delta: factor norm product mismatch");
    for (size_t i = 0; i < C.factors_z.size(); i++) {
        const auto& L = C.factor_fields[i];
        qrat Ni = eval(C.factors_z[i], a);
        if (Ni == 0) throw invalid_input_error("delta: x(P) is a root of p");
        // support of the fractional ideal (a - theta_i)
        std::map<zint, long> support = factorize(abs(Ni.get_num()) * Ni.get_den());
        qpoly rep;
        rep.c = {a, qrat(-1)};
        for (const auto& [q, e] : support) {
            auto S = L->split(q);
            for (size_t ci = 0; ci < S->comps.size(); ci++) {
                long v = L->valuation(rep, q, static_cast<int>(ci));
                if (v != 0) {
                    out.valuations.push_back({static_cast<int>(i), q, static_cast<int>(ci), v});
                    if (v % 2 != 0) out.all_even = false;
                }
            }
        }
    }
    return out;
}

std::vector<std::pair<qrat, qrat>> search_rational_points(const curve& C, long height) {
    std::vector<std::pair<qrat, qrat>> out;
    for (long den = 1; den <= height; den++) {
        for (long num = -height; num <= height; num++) {
            if (std::gcd(std::abs(num), den) != 1) continue;
            qrat x(num, den);
            x.canonicalize();
            qrat px = eval(C.pz, x);
            if (px <= 0) continue;  // need b != 0 for delta evaluation
            qrat b;
            if (qis_square(px, &b)) out.emplace_back(x, b);
        }
    }
    return out;
}

}  // namespace selbound::bounds
