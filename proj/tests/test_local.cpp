#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selbound/localfield.hpp"

using namespace selbound;
using namespace selbound::arith;
using namespace selbound::localfields;

static zpoly P(std::initializer_list<long> asc) { return zpoly(asc); }

TEST_CASE("local_factor spec examples over Q_2") {
    auto Q2 = make_qp(2, 40);
    {
        auto fac = local_factor(P({-2, 0, 1}), Q2);  // x^2-2: Eisenstein
        CHECK(fac.certified);
        REQUIRE(fac.r() == 1);
        CHECK(fac.factors[0].e == 2);
        CHECK(fac.factors[0].f == 1);
    }
    {
        auto fac = local_factor(P({32, -48, 16, 8, 10, 1}), make_qp(2, 76));
        CHECK(fac.certified);
        REQUIRE(fac.r() == 1);
        CHECK(fac.factors[0].e == 5);
        CHECK(fac.factors[0].f == 1);
    }
    {
        // x^2-17: 17 is a 2-adic square, two linear factors
        auto fac = local_factor(P({-17, 0, 1}), Q2);
        CHECK(fac.certified);
        REQUIRE(fac.r() == 2);
        CHECK(fac.factors[0].e == 1);
        CHECK(fac.factors[0].f == 1);
        CHECK(fac.factors[1].e == 1);
        CHECK(fac.factors[1].f == 1);
        // hand Hensel oracle: the roots are == +-1 mod 4 and square to 17 mod 2^5
        for (const auto& fd : fac.factors) {
            zint root = zmod(-fd.factor[0].coords[0], zint(1) << 5);
            CHECK(zmod(root * root - 17, zint(1) << 5) == 0);
        }
    }
}

TEST_CASE("residue traces: x(x^4+1) over Q_2 gives (0, 1)") {
    auto Q2 = make_qp(2, 40);
    auto fac = local_factor(P({0, 1, 0, 0, 0, 1}), Q2);
    CHECK(fac.certified);
    REQUIRE(fac.r() == 2);
    auto tr = residue_trace_vector(fac);
    // component order: (e,f) = (1,1) then (4,1)
    CHECK(fac.factors[0].e == 1);
    CHECK(fac.factors[1].e == 4);
    CHECK(tr[0].is_zero());          // factor x: Tbar = 0
    CHECK(fq_code(fac.F.k, tr[1]) == 1);  // Phi_8: residue root 1
    // charpoly invariant: t_i = -(coefficient of x^{f-1})
    for (const auto& fd : fac.factors) {
        REQUIRE(fd.residue_charpoly.deg() == fd.f);
        fqelem expect = fq_neg(fac.F.k, fd.residue_charpoly.c[static_cast<size_t>(fd.f - 1)]);
        CHECK(fd.trace == expect);
    }
}

TEST_CASE("cross-resultant valuations over Q_2 / Q_3") {
    {
        auto Q2 = make_qp(2, 30);
        auto fac = local_factor(P({0, 2, 1}), Q2);  // x(x+2)
        REQUIRE(fac.r() == 2);
        auto M = cross_resultant_valuations(fac);
        CHECK(M[0][1] == 1);
    }
    {
        auto Q2 = make_qp(2, 30);
        auto fac = local_factor(P({0, 1, 1}), Q2);  // x(x+1)
        REQUIRE(fac.r() == 2);
        auto M = cross_resultant_valuations(fac);
        CHECK(M[0][1] == 0);
    }
    {
        auto Q3 = make_qp(3, 30);
        auto fac = local_factor(P({0, -3, 0, 0, 0, 1}), Q3);  // x(x^4-3)
        REQUIRE(fac.r() == 2);
        auto M = cross_resultant_valuations(fac);
        CHECK(M[0][1] == 1);
    }
}

TEST_CASE("disc valuation additivity v(disc p) = sum v(disc p_i) + 2 sum cross") {
    detrng rng(3141);
    auto Q2 = make_qp(2, 50);
    int done = 0;
    while (done < 25) {
        int d = 2 + static_cast<int>(rng.below(5));
        std::vector<zint> c(static_cast<size_t>(d) + 1);
        for (auto& x : c) x = zint(static_cast<long>(rng.below(17)) - 8);
        c.back() = 1;
        zpoly f(std::move(c));
        if (!is_squarefree(f)) continue;
        zint disc = discriminant_z(f);
        if (disc == 0) continue;
        long vd = disc == 0 ? 0 : zvaluation(disc, 2);
        if (vd * 2 + 20 > 50) continue;  // keep inside the fixed precision of this test
        auto fac = local_factor(f, Q2);
        if (!fac.certified) continue;
        long sum = 0;
        for (const auto& fd : fac.factors) {
            std::vector<zint> fc;
            for (const auto& e : fd.factor) fc.push_back(zmods(e.coords[0], fac.pN));
            zpoly g(std::move(fc));
            if (g.deg() >= 1) {
                zint dg = zmods(discriminant_z(g), fac.pN);
                if (dg != 0) sum += zvaluation(dg, 2);
            }
        }
        auto M = cross_resultant_valuations(fac);
        for (int i = 0; i < fac.r(); i++)
            for (int j = i + 1; j < fac.r(); j++) sum += 2 * M[static_cast<size_t>(i)][static_cast<size_t>(j)];
        CHECK(sum == vd);
        done++;
    }
}

TEST_CASE("Q_8 example: linear factors, traces span all of F_8") {
    // K = Q_2[t]/(t^3 - t - 1); p(x) = x(x-1)(x-t)(x-t^2)(x-(1+t+t^2))
    auto Q8 = make_unramified(2, 3, 30);
    CHECK(Q8.k.k == 3);
    // build p's coefficients by multiplying the linear factors over Z[t]
    std::vector<zpoly> roots = {P({0}), P({1}), P({0, 1}), P({0, 0, 1}), P({1, 1, 1})};
    // p = prod (x - root): coefficients as t-polys
    std::vector<zpoly> coeffs = {P({1})};  // constant poly 1 (deg 0 in x)
    for (const auto& rt : roots) {
        std::vector<zpoly> next(coeffs.size() + 1);
        for (size_t i = 0; i < coeffs.size(); i++) {
            next[i + 1] = next[i + 1] + coeffs[i];
            next[i] = next[i] - rt * coeffs[i];
        }
        coeffs = std::move(next);
    }
    // reduce coefficients mod t^3 - t - 1
    zpoly u = P({-1, -1, 0, 1});
    for (auto& c : coeffs) {
        zpoly q, r;
        zdivrem_monic(c, u, q, r);
        c = r;
    }
    auto fac = local_factor(coeffs, Q8);
    CHECK(fac.certified);
    CHECK(fac.lifted);
    REQUIRE(fac.r() == 5);
    for (const auto& fd : fac.factors) {
        CHECK(fd.e == 1);
        CHECK(fd.f == 1);
    }
    auto tr = residue_trace_vector(fac);
    // traces are the residues of the roots: 0, 1, t, t^2, 1+t+t^2
    std::vector<zint> codes;
    for (const auto& t : tr) codes.push_back(fq_code(Q8.k, t));
    std::sort(codes.begin(), codes.end());
    // residues: 0, 1, t(code 2), t^2(code 4), 1+t+t^2(code 7)
    CHECK(codes == std::vector<zint>({zint(0), zint(1), zint(2), zint(4), zint(7)}));
    // all cross-resultants are units
    auto M = cross_resultant_valuations(fac);
    for (int i = 0; i < 5; i++)
        for (int j = 0; j < 5; j++)
            if (i != j) CHECK(M[static_cast<size_t>(i)][static_cast<size_t>(j)] == 0);
}

TEST_CASE("x^2-5 over Q_2 via tower machinery: inert quadratic") {
    auto Q2 = make_qp(2, 30);
    auto fac = local_factor(P({-5, 0, 1}), Q2);
    REQUIRE(fac.r() == 1);
    CHECK(fac.factors[0].e == 1);
    CHECK(fac.factors[0].f == 2);
    // Tbar has trace 0 in F_2: charpoly x^2+1 = (x+1)^2 over F_2
    CHECK(fac.factors[0].residue_charpoly.deg() == 2);
}

TEST_CASE("eisenstein tower construction and valuations") {
    // Q_5(sqrt 5) via x^2 + 5x + 5 (Eisenstein at 5)
    auto F = make_eisenstein(5, 1, {P({5}), P({5}), P({1})}, 20);
    CHECK(F.degree() == 2);
    auto pi = elem_gen_pi(F);
    CHECK(elem_valuation(F, pi) == 1);
    CHECK(elem_valuation(F, elem_from_int(F, 5)) == 2);
    CHECK(elem_valuation(F, elem_from_int(F, 3)) == 0);
    // non-Eisenstein data refused
    CHECK_THROWS_AS(make_eisenstein(5, 1, {P({25}), P({5}), P({1})}, 20), invalid_input_error);
}

TEST_CASE("precision-stability: doubled precision keeps (e, f, q_i)") {
    for (long N : {24L, 48L}) {
        auto Q2 = make_qp(2, N);
        auto fac = local_factor(P({0, 1, 0, 0, 0, 1}), Q2);
        REQUIRE(fac.r() == 2);
        CHECK(fac.factors[0].e == 1);
        CHECK(fac.factors[1].e == 4);
        CHECK(fac.factors[0].f == 1);
        CHECK(fac.factors[1].f == 1);
    }
}
