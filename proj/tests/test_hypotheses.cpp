#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selbound/hypotheses.hpp"

using namespace selbound;
using namespace selbound::arith;
using namespace selbound::hypotheses;

static zpoly P(std::initializer_list<long> asc) { return zpoly(asc); }

TEST_CASE("order identity examples") {
    {
        // 277 quintic at 2 and 277: holds
        auto C = make_curve_q("277.a", P({32, -48, 16, 8, 10, 1}));
        CHECK(check_order_identity(C, 2, 0) == tristate::holds);
        CHECK(check_order_identity(C, 277, 0) == tristate::holds);
    }
    {
        // p with factors x and x+2: fails at 2
        zpoly p = P({0, 1}) * P({2, 1}) * P({-5, 1});
        auto C = make_curve_q("xx2", p);
        CHECK(check_order_identity(C, 2, 0) == tristate::fails);
    }
    {
        // y^2 = x(x^4 - 3): the order identity fails at 3 (v(Res(x, x^4-3)) = 1)
        auto C = make_curve_q("x5_3x", P({0, -3, 0, 0, 0, 1}));
        CHECK(check_order_identity(C, 3, 0) == tristate::fails);
        CHECK(check_order_identity(C, 5, 0) == tristate::holds);  // disc val 0 fast path
    }
}

TEST_CASE("compute_V and star") {
    {
        // r_v = 1: dim V = 0, star holds, index 1
        auto C = make_curve_q("277.a", P({32, -48, 16, 8, 10, 1}));
        auto rep = analyze_place(C, 2, 0);
        CHECK(rep.r_v == 1);
        CHECK(rep.dim_trace_space == 0);
        CHECK(rep.trace_condition_defined);
        CHECK(rep.trace_condition);
        CHECK(rep.u4_index_log == 0);
        CHECK(rep.correction == 0);
        // local dims: Q_2, r=1, g=2 -> (2, 4, 4)
        CHECK(rep.dim_J2 == 2);
        CHECK(rep.dim_square_classes == 4);
        CHECK(rep.dim_integral_square_classes == 4);
    }
    {
        // x(x^4+1) over Q_2: traces (0,1), dim V = 1 = r-1, star holds
        auto C = make_curve_q("x5x", P({0, 1, 0, 0, 0, 1}));
        auto rep = analyze_place(C, 2, 0);
        CHECK(rep.r_v == 2);
        CHECK(rep.dim_trace_space == 1);
        CHECK(rep.trace_condition);
        CHECK(rep.u4_index_log == 0);
        CHECK(rep.order_identity == tristate::holds);
        REQUIRE(rep.trace_codes.size() == 2);
        CHECK(rep.trace_codes[0] == 0);
        CHECK(rep.trace_codes[1] == 1);
        // local dims: Q_2, r=2, g=2 -> (3, 6, 5)
        CHECK(rep.dim_J2 == 3);
        CHECK(rep.dim_square_classes == 6);
        CHECK(rep.dim_integral_square_classes == 5);
    }
}

TEST_CASE("local dims formula spot checks") {
    place_report rep;
    rep.q = 3;
    rep.r_v = 2;
    rep.e_v = 1;
    rep.f_v = 1;
    fill_local_dims(rep, 1);  // Q_3, r=2, g=1 -> (1, 2, 1)
    CHECK(rep.dim_J2 == 1);
    CHECK(rep.dim_square_classes == 2);
    CHECK(rep.dim_integral_square_classes == 1);
    rep.q = 2;
    fill_local_dims(rep, 1);  // Q_2, r=2, g=1 -> (2, 4, 3)
    CHECK(rep.dim_J2 == 2);
    CHECK(rep.dim_square_classes == 4);
    CHECK(rep.dim_integral_square_classes == 3);
}

TEST_CASE("unramified cubic extension of Q_2: trace space of dim 3 < 4 = r-1") {
    using namespace selbound::localfields;
    auto Q8 = make_unramified(2, 3, 30);
    std::vector<zpoly> roots = {P({0}), P({1}), P({0, 1}), P({0, 0, 1}), P({1, 1, 1})};
    std::vector<zpoly> coeffs = {P({1})};
    for (const auto& rt : roots) {
        std::vector<zpoly> next(coeffs.size() + 1);
        for (size_t i = 0; i < coeffs.size(); i++) {
            next[i + 1] = next[i + 1] + coeffs[i];
            next[i] = next[i] - rt * coeffs[i];
        }
        coeffs = std::move(next);
    }
    zpoly u = P({-1, -1, 0, 1});
    for (auto& c : coeffs) {
        zpoly q, r;
        zdivrem_monic(c, u, q, r);
        c = r;
    }
    auto fac = local_factor(coeffs, Q8);
    REQUIRE(fac.r() == 5);
    int dimV = trace_space_dim(fac);
    CHECK(dimV == 3);
    CHECK(u4_image_log_index(fac) == 1);  // [U_4 : W] = 2^(r-1-dimV) = 2
    auto M = cross_resultant_valuations(fac);
    bool all_zero = true;
    for (int i = 0; i < 5; i++)
        for (int j = i + 1; j < 5; j++)
            if (M[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) all_zero = false;
    CHECK(all_zero);
}

TEST_CASE("archimedean profiles") {
    {
        auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));
        auto prof = archimedean_profile(C);
        REQUIRE(prof.places.size() == 1);
        CHECK(prof.places[0].s == 0);
        CHECK(prof.places[0].dim_im_delta == 0);
        CHECK(prof.a_counts[1] == 1);
        CHECK(prof.total_real_embeddings == 1);
    }
    {
        // x(x^2-2)(x^2-3): 5 real roots, s = 2
        auto C = make_curve_q("5real", P({0, 1}) * P({-2, 0, 1}) * P({-3, 0, 1}));
        auto prof = archimedean_profile(C);
        REQUIRE(prof.places.size() == 1);
        CHECK(prof.places[0].s == 2);
        CHECK(prof.places[0].pairs.size() == 2);
        CHECK(prof.total_real_embeddings == 5);
        CHECK(prof.a_counts[5] == 1);
    }
    {
        // x(x^4-3): marked root -3^(1/4) in the quartic factor; the pair is
        // cross-field (0 from the linear factor, +3^(1/4) from the quartic)
        auto C = make_curve_q("x5_3x", P({0, -3, 0, 0, 0, 1}));
        auto prof = archimedean_profile(C);
        REQUIRE(prof.places.size() == 1);
        CHECK(prof.places[0].s == 1);
        // factor order: [x, x^4-3]; offsets: x -> 0, quartic -> 1
        CHECK(prof.factor_offset.size() == 2);
        CHECK(prof.places[0].marked_global == 1);  // -3^(1/4): first embedding of the quartic
        REQUIRE(prof.places[0].pairs.size() == 1);
        CHECK(prof.places[0].pairs[0].first == 0);   // 0: the linear factor's embedding
        CHECK(prof.places[0].pairs[0].second == 2);  // +3^(1/4): second embedding of the quartic
    }
}

TEST_CASE("explicit starting precision still escalates to a certified answer") {
    // starting far below the disc-based default must not change the verdicts
    auto C = make_curve_q("277.a", P({32, -48, 16, 8, 10, 1}));
    auto lo = analyze_place(C, 2, 0, 4);
    auto hi = analyze_place(C, 2, 0, 200);
    CHECK(lo.r_v == hi.r_v);
    CHECK(lo.order_identity == hi.order_identity);
    CHECK(lo.dim_trace_space == hi.dim_trace_space);
    CHECK(lo.certified);
}

TEST_CASE("base K = Q(sqrt5): curve construction and local analysis at 2") {
    auto K = nf::make_number_field(P({-5, 0, 1}));
    // p = x^5 + x^4 + sqrt5 x^2 + x + 1
    kpoly p(6);
    p[0] = to_qpoly(P({1}));
    p[1] = to_qpoly(P({1}));
    p[2] = to_qpoly(P({0, 1}));  // sqrt5
    p[3] = qpoly{};
    p[4] = to_qpoly(P({1}));
    p[5] = to_qpoly(P({1}));
    auto C = make_curve_k("sqrt5_quintic", K, p);
    CHECK(C.d == 5);
    CHECK(C.g == 2);
    CHECK(C.r() == 1);  // irreducible over K
    REQUIRE(C.factor_fields.size() == 1);
    CHECK(C.factor_fields[0]->degree() == 10);
    CHECK(C.real_places.size() == 2);

    // at 2 (inert in K): p stays irreducible, r_v = 1
    auto rep = analyze_place(C, 2, 0);
    CHECK(rep.e_v == 1);
    CHECK(rep.f_v == 2);
    CHECK(rep.r_v == 1);
    CHECK(rep.order_identity == tristate::holds);
    CHECK(rep.dim_trace_space == 0);
    CHECK(rep.trace_condition);
    CHECK(rep.correction == 0);
}

TEST_CASE("base K = Q(sqrt5) with p reducible over K") {
    auto K = nf::make_number_field(P({-5, 0, 1}));
    // p = (x - 1)(x^2 - theta)(x^2 + x + 1)
    kpoly lin(2), quad(3), cyc(3);
    lin[0] = to_qpoly(P({-1}));
    lin[1] = to_qpoly(P({1}));
    quad[0] = to_qpoly(P({0, -1}));
    quad[2] = to_qpoly(P({1}));
    cyc[0] = to_qpoly(P({1}));
    cyc[1] = to_qpoly(P({1}));
    cyc[2] = to_qpoly(P({1}));
    auto p = kp_mul(*K, kp_mul(*K, lin, quad), cyc);
    auto C = make_curve_k("krel", K, p);
    REQUIRE(C.r() == 3);
    // the linear factor contributes K itself as its absolute field
    std::vector<int> degs;
    for (const auto& f : C.factor_fields) degs.push_back(f->degree());
    std::sort(degs.begin(), degs.end());
    CHECK(degs == std::vector<int>({2, 4, 4}));
    REQUIRE(C.real_places.size() == 2);
    std::vector<size_t> counts{C.real_places[0].roots.size(), C.real_places[1].roots.size()};
    std::sort(counts.begin(), counts.end());
    CHECK(counts == std::vector<size_t>({1, 3}));
    // at 2 (inert in K): x^2+x+1 splits over F_4, so r_v = 1 + 1 + 2
    auto rep = analyze_place(C, 2, 0);
    CHECK(rep.r_v == 4);
    CHECK(rep.dim_trace_space == 2);
    CHECK(rep.correction == 1);
    auto rep5 = analyze_place(C, 5, 0);
    CHECK(rep5.r_v == 3);
    CHECK(rep5.order_identity == tristate::holds);
}
