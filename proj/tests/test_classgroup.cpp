#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <numeric>

#include "selbound/classgroup.hpp"
#include "selbound/primes.hpp"

using namespace selbound;
using namespace selbound::arith;
using namespace selbound::classgroups;

static zpoly P(std::initializer_list<long> asc) { return zpoly(asc); }
static qpoly QP(std::initializer_list<long> asc) { return to_qpoly(zpoly(asc)); }

// Test oracle: class number of the imaginary quadratic field of fundamental
// discriminant D < 0 by counting reduced primitive binary quadratic forms.
static long bqf_class_number(long D) {
    long h = 0;
    for (long a = 1; a * a <= -D / 3 + 1; a++) {
        for (long b = -a; b <= a; b++) {
            long num = b * b - D;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if ((std::abs(b) == a || a == c) && b < 0) continue;  // avoid double counting
            long g = std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
            if (g != 1) continue;
            h++;
        }
    }
    return h;
}

TEST_CASE("builtin class groups: quadratic spec examples") {
    {
        // Q(sqrt(-5)): Z/2
        auto L = nf::make_number_field(P({5, 0, 1}));
        auto cg = class_group_builtin(*L);
        CHECK(cg.order() == 2);
        CHECK(cg.two_rank() == 1);
        CHECK(bqf_class_number(-20) == 2);  // oracle agrees
    }
    {
        // Q(sqrt(5)): trivial, and narrow trivial (unit of norm -1)
        auto L = nf::make_number_field(P({-5, 0, 1}));
        auto cg = class_group_builtin(*L);
        CHECK(cg.order() == 1);
        CHECK(!cg.heuristic);  // trivial-bound certificate
        auto nr = narrow_class_info(cg);
        CHECK(nr.h_plus == 1);
        CHECK(nr.odd);
    }
    {
        // Q(sqrt(3)): h = 1, narrow class number 2 (fundamental unit norm +1)
        auto L = nf::make_number_field(P({-3, 0, 1}));
        auto cg = class_group_builtin(*L);
        CHECK(cg.order() == 1);
        auto nr = narrow_class_info(cg);
        CHECK(nr.h_plus == 2);
        CHECK(!nr.odd);
    }
}

TEST_CASE("builtin matches the quadratic-forms oracle on imaginary quadratics") {
    int done = 0;
    for (long n = 1; done < 50; n++) {
        zpoly f = P({n, 0, 1});  // x^2 + n
        if (!is_squarefree(f)) continue;
        zint sq;
        if (zis_square(zint(n), &sq)) continue;
        auto L = nf::make_number_field(f);
        auto cg = class_group_builtin(*L);
        long D = static_cast<long>(L->field_disc.get_si());
        CHECK(cg.order() == bqf_class_number(D));
        done++;
    }
}

TEST_CASE("quartic field Q(3^(1/4)): odd class number, narrow twice it") {
    auto L = nf::make_number_field(P({-3, 0, 0, 0, 1}));
    CHECK(L->field_disc == -zpow(2, 8) * zpow(3, 3));
    builtin_effort eff;
    eff.coord_bound = 4;
    auto cg = class_group_builtin(*L, eff);
    CHECK(zmod(cg.order(), 2) != 0);
    auto nr = narrow_class_info(cg);
    CHECK(nr.h_plus == 2 * cg.order());
}

TEST_CASE("import provider: schema, digest, chain validation") {
    {
        std::ofstream f("/tmp/cd_good.json");
        f << R"({"field":{"poly":[1,0,1,0,0,1]},"invariants":[],"generators":[],)"
          << R"x("relations":[],"units":{"sign_matrix":[[1]]},"source":"narrow class number 1 (external tables)"})x";
        f.close();
        auto cg = import_class_data("/tmp/cd_good.json");
        CHECK(cg.source == class_group_data::source_t::imported);
        CHECK(cg.digest.size() == 64);
        CHECK(cg.order() == 1);
        CHECK(cg.r1 == 1);
        auto nr = narrow_class_info(cg);
        CHECK(nr.h_plus == 1);
    }
    {
        std::ofstream f("/tmp/cd_bad.json");
        f << R"({"field":{"poly":[1,0,1]},"invariants":[4,2,3],"generators":[],"relations":[],)"
          << R"("units":{"sign_matrix":[]},"source":"x"})";
        f.close();
        CHECK_THROWS_AS(import_class_data("/tmp/cd_bad.json"), invalid_input_error);
    }
}

TEST_CASE("cl_star: no paired places means Cl_* = Cl") {
    // x^5+x^2+1 has one real root: H is everything, Q = 0
    auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));
    auto prof = hypotheses::archimedean_profile(C);
    CHECK(prof.sum_s == 0);
    std::vector<class_group_data> data;
    for (const auto& L : C.factor_fields) data.push_back(class_group_builtin(*L));
    auto res = cl_star_two_rank(C, prof, data);
    CHECK(res.dim_Q == 0);
    CHECK(res.two_rank == 0);
    CHECK(res.two_rank == data[0].two_rank());
}

TEST_CASE("cl_star for the x(x^4-p) family: rank 0 at p = 3") {
    auto C = make_curve_q("x5_3x", P({0, -3, 0, 0, 0, 1}));
    auto prof = hypotheses::archimedean_profile(C);
    CHECK(prof.sum_s == 1);  // one cross-field pair (0, 3^(1/4))
    std::vector<class_group_data> data;
    builtin_effort eff;
    eff.coord_bound = 4;
    for (const auto& L : C.factor_fields) data.push_back(class_group_builtin(*L, eff));
    auto res = cl_star_two_rank(C, prof, data);
    CHECK(res.dim_Q == 1);
    CHECK(res.two_rank == 0);
    // sandwich: rank Cl[2] <= two_rank <= rank Cl[2] + dim Q
    int cl2 = 0;
    for (const auto& d : data) cl2 += d.two_rank();
    CHECK(cl2 <= res.two_rank);
    CHECK(res.two_rank <= cl2 + res.dim_Q);
}

TEST_CASE("imported and builtin data for the same field give the same ClStarResult") {
    auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));
    auto prof = hypotheses::archimedean_profile(C);
    auto builtin = class_group_builtin(*C.factor_fields[0]);
    std::ofstream f("/tmp/cd_equiv.json");
    f << R"({"field":{"poly":[1,0,1,0,0,1]},"invariants":[],"generators":[],"relations":[],)"
      << R"("units":{"sign_matrix":[[1]]},"source":"equivalent import"})";
    f.close();
    auto imported = import_class_data("/tmp/cd_equiv.json");
    auto r1 = cl_star_two_rank(C, prof, {builtin});
    auto r2 = cl_star_two_rank(C, prof, {imported});
    CHECK(r1.two_rank == r2.two_rank);
    CHECK(r1.invariants == r2.invariants);
    CHECK(r1.dim_Q == r2.dim_Q);
}

TEST_CASE("square-class unit counts: closed form equals the direct count") {
    {
        auto C = make_curve_q("x5x2_1", P({1, 0, 1, 0, 0, 1}));  // a_1 = 1, g = 2
        auto prof = hypotheses::archimedean_profile(C);
        CHECK(square_class_unit_count(C, prof) == 4);
    }
    {
        auto C = make_curve_q("5real", P({0, 1}) * P({-2, 0, 1}) * P({-3, 0, 1}));  // a_5 = 1
        auto prof = hypotheses::archimedean_profile(C);
        CHECK(square_class_unit_count(C, prof) == 16);
    }
}
