#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "selbound/report.hpp"

using namespace selbound;
using namespace selbound::arith;

static zpoly P(std::initializer_list<long> asc) { return zpoly(asc); }

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "."
#endif

TEST_CASE("selmer bounds spec examples") {
    {
        auto spec = report::load_curve_spec(std::string(FIXTURE_DIR) + "/curves/277a.json");
        curve C = report::make_curve(spec);
        auto A = bounds::analyze(C, report::options_from_spec(spec));
        CHECK(A.bounds.lower == 0);
        CHECK(A.bounds.upper == 2);
        CHECK(A.bounds.mode == bounds::bound_mode::unconditional);
    }
    {
        auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));
        auto A = bounds::analyze(C, {});
        CHECK(A.bounds.lower == 0);
        CHECK(A.bounds.upper == 2);  // contains the externally computed rank 2
        CHECK(A.bounds.mode == bounds::bound_mode::unconditional);
        CHECK(!A.bounds.class_data_heuristic);
    }
    {
        auto spec = report::load_curve_spec(std::string(FIXTURE_DIR) + "/curves/g5_b.json");
        curve C = report::make_curve(spec);
        auto A = bounds::analyze(C, report::options_from_spec(spec));
        CHECK(A.bounds.lower == 0);
        CHECK(A.bounds.upper == 5);
    }
    {
        // the order identity fails at an odd place: conditional mode, numbers still shown
        auto C = make_curve_q("x5_3x", P({0, -3, 0, 0, 0, 1}));
        bounds::analysis_options opt;
        opt.effort.coord_bound = 4;
        auto A = bounds::analyze(C, opt);
        CHECK(A.bounds.mode == bounds::bound_mode::conditional);
        CHECK(A.bounds.undecided_places == std::vector<std::string>{"3"});
        CHECK(A.bounds.lower <= A.bounds.upper);
        CHECK(A.bounds.torsion_witness_dim == 1);  // root x = 0
        CHECK(A.bounds.lower >= 1);
    }
}

TEST_CASE("relaxed family bounds") {
    {
        auto C = make_curve_q("x5-3x", P({0, -3, 0, 0, 0, 1}));
        bounds::analysis_options opt;
        opt.effort.coord_bound = 4;
        auto A = bounds::relaxed_bounds_x5ax(C, opt);
        CHECK(A.bounds.lower == 1);
        CHECK(A.bounds.upper == 3);
        CHECK(A.bounds.mode == bounds::bound_mode::relaxed);
    }
    {
        // 5 = 5 mod 8: refused
        auto C = make_curve_q("x5-5x", P({0, -5, 0, 0, 0, 1}));
        CHECK_THROWS_AS(bounds::relaxed_bounds_x5ax(C, {}), invalid_input_error);
    }
    {
        // not in the family
        auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));
        CHECK_THROWS_AS(bounds::relaxed_bounds_x5ax(C, {}), invalid_input_error);
    }
}

TEST_CASE("delta square class examples") {
    auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));
    {
        auto e = bounds::delta_square_class(C, 0, 1);
        CHECK(e.norm_certificate == 1);
        CHECK(e.all_even);
        CHECK(e.valuations.empty());  // norm 1: unit, trivially even
    }
    {
        // any (a, b): norm certificate equals b^2
        auto pts = bounds::search_rational_points(C, 12);
        REQUIRE(!pts.empty());
        for (const auto& [a, b] : pts) {
            auto e = bounds::delta_square_class(C, a, b);
            CHECK(e.norm_certificate == b * b);
        }
    }
    CHECK_THROWS_AS(bounds::delta_square_class(C, 1, 1), invalid_input_error);   // not on curve
    CHECK_THROWS_AS(bounds::delta_square_class(C, 0, 0), invalid_input_error);   // b = 0 refused
}

TEST_CASE("bounds invariant under the normalization translation") {
    // x -> x + 2 is another model of the same curve
    zpoly p = P({1, 0, 1, 0, 0, 1});
    auto C1 = make_curve_q("m1", p);
    auto C2 = make_curve_q("m2", translate(p, 2));
    auto A1 = bounds::analyze(C1, {});
    auto A2 = bounds::analyze(C2, {});
    CHECK(A1.bounds.lower == A2.bounds.lower);
    CHECK(A1.bounds.upper == A2.bounds.upper);
    CHECK(A1.bounds.cl_star_two_rank == A2.bounds.cl_star_two_rank);
}

TEST_CASE("twist construction and eligibility") {
    auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));
    {
        auto Ct = twist_curve(C, 1);
        CHECK(Ct.pz == C.pz);
    }
    {
        auto er = twists::eligible(C, 31);
        CHECK(er.eligible);
        CHECK(er.splitting.per_factor[0] == nf::split_kind::inert);
        auto er2 = twists::eligible(C, 2);
        CHECK(er2.eligible);  // x^5+x^2+1 irreducible mod 2
        CHECK(er2.splitting.per_factor[0] == nf::split_kind::inert);
    }
    {
        // 277 splits as P1 * P2^2 * P3 in the 277 quintic field (the tame e=2
        // matches v_277(disc) = 1), so it is neither inert nor totally
        // ramified: not eligible. Cross-checked against the local oracle.
        auto C277 = make_curve_q("277a", P({32, -48, 16, 8, 10, 1}));
        auto er = twists::eligible(C277, 277);
        CHECK(!er.eligible);
        CHECK(er.splitting.per_factor[0] == nf::split_kind::other);
        auto F = localfields::make_qp(277, 24);
        auto fac = localfields::local_factor(P({32, -48, 16, 8, 10, 1}), F);
        REQUIRE(fac.r() == 3);
        long esum = 0;
        for (const auto& fd : fac.factors) esum += fd.e * fd.f;
        CHECK(esum == 5);
    }
    {
        // reducible p refused with the irreducibility hypothesis
        auto Cred = make_curve_q("red", P({0, -3, 0, 0, 0, 1}));
        CHECK_THROWS_AS(twists::eligible(Cred, 7), invalid_input_error);
    }
}

TEST_CASE("twist by a and a*b^2 give identical bounds") {
    auto spec = report::load_curve_spec(std::string(FIXTURE_DIR) + "/curves/277a.json");
    curve C = report::make_curve(spec);
    auto opt = report::options_from_spec(spec);
    auto base = bounds::analyze(C, opt);
    bounds::analysis_options twist_opt;
    twist_opt.provided_class_data = base.class_data;
    for (long a : {3L, 7L}) {
        for (long b : {2L, 3L}) {
            curve Ca = twist_curve(C, a);
            curve Cab = twist_curve(C, a * b * b);
            auto oa = twist_opt, ob = twist_opt;
            (*oa.provided_class_data)[0].field_poly = Ca.factors_z[0];
            (*ob.provided_class_data)[0].field_poly = Cab.factors_z[0];
            auto Aa = bounds::analyze(Ca, oa);
            auto Ab = bounds::analyze(Cab, ob);
            CHECK(Aa.bounds.lower == Ab.bounds.lower);
            CHECK(Aa.bounds.upper == Ab.bounds.upper);
            CHECK(Aa.bounds.cl_star_two_rank == Ab.bounds.cl_star_two_rank);
        }
    }
}

TEST_CASE("scan: ascending records, resume without duplicates") {
    auto spec = report::load_curve_spec(std::string(FIXTURE_DIR) + "/curves/277a.json");
    curve C = report::make_curve(spec);
    std::string path = "test_scan_tmp.ndjson";
    std::remove(path.c_str());
    twists::scan_options so;
    so.out_path = path;
    so.analysis = report::options_from_spec(spec);
    so.declared_inert_density = 0.2;
    so.max_prime = 40;
    auto d1 = twists::scan(C, so);
    so.max_prime = 100;
    auto d2 = twists::scan(C, so);
    CHECK(d2.eligible_count == 7);
    CHECK(d2.inert == 6);
    CHECK(d2.uniform_window);
    std::ifstream in(path);
    std::string line;
    std::vector<zint> qs;
    while (std::getline(in, line)) {
        auto j = nlohmann::json::parse(line);
        qs.emplace_back(j["q"].get<std::string>().c_str());
    }
    REQUIRE(qs.size() == 7);
    for (size_t i = 1; i < qs.size(); i++) CHECK(qs[i - 1] < qs[i]);
    CHECK(qs == std::vector<zint>({2, 3, 7, 13, 29, 41, 59}));
    std::remove(path.c_str());
}

TEST_CASE("report determinism: identical inputs give byte-identical reports") {
    auto spec = report::load_curve_spec(std::string(FIXTURE_DIR) + "/curves/277a.json");
    curve C1 = report::make_curve(spec);
    curve C2 = report::make_curve(spec);
    auto A1 = bounds::analyze(C1, report::options_from_spec(spec));
    auto A2 = bounds::analyze(C2, report::options_from_spec(spec));
    CHECK(report::analysis_to_json(C1, A1).dump() == report::analysis_to_json(C2, A2).dump());
}

TEST_CASE("curve spec validation errors") {
    CHECK_THROWS_AS(make_curve_q("even", P({1, 0, 0, 0, 1})), invalid_input_error);      // even degree
    CHECK_THROWS_AS(make_curve_q("nonsf", P({0, 0, 1}) * P({-1, 1})), invalid_input_error);  // not squarefree
    std::vector<zint> c{1, 1, 1, 2};
    CHECK_THROWS_AS(make_curve_q("nonmonic", zpoly(std::move(c))), invalid_input_error);
}
