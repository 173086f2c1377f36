#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "selbound/fq.hpp"
#include "selbound/poly.hpp"
#include "selbound/primes.hpp"

using namespace selbound;
using namespace selbound::arith;

static zpoly P(std::initializer_list<long> asc) { return zpoly(asc); }

TEST_CASE("resultant sign convention and values") {
    // Res(f,g) = lc(f)^deg(g) prod g(alpha_i) over roots of f
    CHECK(resultant(P({-1, 1}), P({1, 1})) == 2);   // Res(x-1, x+1) = g(1) = 2
    CHECK(resultant(P({1, 1}), P({-1, 1})) == -2);  // antisymmetry for odd degrees
    CHECK(resultant(P({1, 0, 1}), P({-1, 0, 1})) == 4);
    // linked to the discriminant of x(x^4-3)
    zpoly p = P({0, -3, 0, 0, 0, 1});
    zint d = discriminant_z(p);
    CHECK(d == -zpow(2, 8) * zpow(3, 5));
    zint r = resultant(p, derivative(p));
    // disc = (-1)^(5*4/2) Res / lc = Res
    CHECK(r == d);
}

TEST_CASE("discriminants") {
    CHECK(discriminant_z(P({1, 0, 1})) == -4);
    CHECK(discriminant_z(P({-3, 0, 0, 0, 1})) == -zpow(2, 8) * zpow(3, 3));
    CHECK(discriminant_z(P({1, -2, 1})) == 0);
    CHECK_THROWS_AS(discriminant_z(P({7})), invalid_input_error);
}

TEST_CASE("disc multiplicativity: disc(gh) = disc(g) disc(h) Res(g,h)^2") {
    detrng rng(12345);
    int done = 0;
    while (done < 120) {
        int dg = 1 + static_cast<int>(rng.below(4));
        int dh = 1 + static_cast<int>(rng.below(4));
        std::vector<zint> gc(static_cast<size_t>(dg) + 1), hc(static_cast<size_t>(dh) + 1);
        for (auto& x : gc) x = zint(static_cast<long>(rng.below(21)) - 10);
        for (auto& x : hc) x = zint(static_cast<long>(rng.below(21)) - 10);
        gc.back() = 1;
        hc.back() = 1;
        zpoly g(std::move(gc)), h(std::move(hc));
        if (!is_squarefree(g) || !is_squarefree(h)) continue;
        if (zgcd_poly(g, h).deg() != 0) continue;
        zpoly f = g * h;
        if (!is_squarefree(f)) continue;
        zint R = resultant(g, h);
        CHECK(discriminant_z(f) == discriminant_z(g) * discriminant_z(h) * R * R);
        done++;
    }
}

TEST_CASE("gcd, squarefree, translate, scale") {
    zpoly f = P({-1, 0, 1});           // x^2-1
    zpoly g = P({1, 2, 1});            // (x+1)^2
    CHECK(zgcd_poly(f, g) == P({1, 1}));
    CHECK(squarefree_part(g) == P({1, 1}));
    CHECK(is_squarefree(f));
    CHECK(!is_squarefree(g));
    CHECK(translate(P({0, 0, 1}), 1) == P({1, 2, 1}));
    CHECK(scale_arg(P({0, 0, 1}), 3) == P({0, 0, 9}));
    auto parts = squarefree_decomposition(P({0, 0, 1}) * P({-1, 1}));  // x^2 (x-1)
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == P({-1, 1}));
    CHECK(parts[1] == P({0, 1}));
}

TEST_CASE("factor_mod_p spec examples") {
    {
        auto F = make_fq(2, 1);
        auto fs = fqp_factor(F, fqp_from_zpoly(F, P({1, 0, 0, 0, 1})));  // x^4+1 over F_2
        REQUIRE(fs.size() == 1);
        CHECK(fs[0].mult == 4);
        CHECK(fqp_to_zpoly(F, fs[0].poly) == P({1, 1}));
    }
    {
        auto F = make_fq(5, 1);
        auto fs = fqp_factor(F, fqp_from_zpoly(F, P({1, 0, 1})));  // x^2+1 over F_5
        REQUIRE(fs.size() == 2);
        CHECK(fs[0].mult == 1);
        CHECK(fs[1].mult == 1);
        CHECK(fqp_to_zpoly(F, fs[0].poly) == P({2, 1}));
        CHECK(fqp_to_zpoly(F, fs[1].poly) == P({3, 1}));
    }
    {
        // x^5+x^2+1 irreducible over F_2. Independent oracle: trial division
        // by every monic polynomial of degree 1 and 2 over F_2.
        auto F = make_fq(2, 1);
        zpoly f = P({1, 0, 1, 0, 0, 1});
        bool has_small_factor = false;
        for (long code = 0; code < 2; code++) {
            zpoly d({zint(code), zint(1)});
            zpoly q, r;
            zdivrem_monic(f, d, q, r);
            zpoly rm(std::vector<zint>{zmod(r.coeff(0), 2)});
            if (rm.is_zero()) has_small_factor = true;
        }
        for (long c0 = 0; c0 < 2; c0++)
            for (long c1 = 0; c1 < 2; c1++) {
                zpoly d({zint(c0), zint(c1), zint(1)});
                zpoly q, r;
                zdivrem_monic(f, d, q, r);
                bool zero = true;
                for (int i = 0; i <= r.deg(); i++)
                    if (zmod(r.coeff(i), 2) != 0) zero = false;
                if (zero) has_small_factor = true;
            }
        CHECK(!has_small_factor);  // no factor of degree <= 2 => irreducible (deg 5)
        auto fs = fqp_factor(F, fqp_from_zpoly(F, f));
        REQUIRE(fs.size() == 1);
        CHECK(fs[0].mult == 1);
        CHECK(fs[0].poly.deg() == 5);
        CHECK(fqp_is_irreducible(F, fs[0].poly));
    }
}

TEST_CASE("factor_mod_p properties: degree sum, irreducibility recheck, product") {
    detrng rng(777);
    for (int iter = 0; iter < 120; iter++) {
        long ps[] = {2, 3, 5, 13};
        zint p = ps[rng.below(4)];
        int k = 1 + static_cast<int>(rng.below(2));  // F_p and F_{p^2}
        auto F = make_fq(p, k);
        int d = 2 + static_cast<int>(rng.below(7));
        fqpoly f;
        f.c.resize(static_cast<size_t>(d) + 1);
        for (auto& e : f.c) {
            zpoly rep;
            rep.c.resize(static_cast<size_t>(k));
            for (auto& x : rep.c) x = rng.zbelow(p);
            rep.trim();
            e = fq_make(F, rep);
        }
        f.c.back() = fq_one(F);
        auto fs = fqp_factor(F, f);
        int degsum = 0;
        fqpoly prod = fqp_one(F);
        for (const auto& fac : fs) {
            degsum += fac.poly.deg() * fac.mult;
            CHECK(fqp_is_irreducible(F, fac.poly));
            for (int m = 0; m < fac.mult; m++) prod = fqp_mul(F, prod, fac.poly);
        }
        CHECK(degsum == d);
        CHECK(prod == f);
    }
}

TEST_CASE("finite field traces and subfields") {
    // F_8 = F_2[t]/(t^3+t+1): traces of elements
    auto F8 = make_fq(2, 3);
    CHECK(F8.modulus == P({1, 1, 0, 1}));  // smallest irreducible cubic by code
    fqelem t = fq_gen(F8);
    // Tr(1) = 3*1 = 1 over F_2
    CHECK(fq_trace_abs(F8, fq_one(F8)) == 1);
    // Tr(t) = t + t^2 + t^4 = coefficient identity: minpoly t^3+t+1 -> trace 0
    CHECK(fq_trace_abs(F8, t) == 0);
    // relative trace F_16 / F_4
    auto F16 = make_fq(2, 4);
    auto F4 = make_fq(2, 2);
    fqelem zeta = fq_subfield_gen(F16, F4);
    // zeta satisfies F4's modulus inside F16
    fqelem img = fqp_eval(F16, fqp_from_zpoly(F16, F4.modulus), zeta);
    CHECK(img.is_zero());
    fqelem g16 = fq_gen(F16);
    fqelem tr = fq_trace_rel(F16, F4, zeta, g16);
    // check against Tr(x) = x + x^4 computed in F16 then expressed in F4
    fqelem manual = fq_add(F16, g16, fq_frob(F16, g16, 2));
    CHECK(fq_express_in_subfield(F16, F4, zeta, manual) == tr);
}

TEST_CASE("deterministic modulus table") {
    CHECK(make_fq(2, 2).modulus == P({1, 1, 1}));
    CHECK(make_fq(2, 3).modulus == P({1, 1, 0, 1}));
    CHECK(make_fq(3, 2).modulus == P({1, 0, 1}));  // x^2+1 irreducible mod 3
    CHECK(make_fq(5, 2).modulus == P({2, 0, 1}));  // x^2+2 irreducible mod 5
}

TEST_CASE("prime utilities") {
    CHECK(is_prime(zint(277)));
    CHECK(!is_prime(zint(1)));
    auto f = factorize(zint(-6912));
    CHECK(f[zint(2)] == 8);
    CHECK(f[zint(3)] == 3);
    zint big = zpow(2, 28) * 277;
    auto f2 = factorize(big);
    CHECK(f2[zint(2)] == 28);
    CHECK(f2[zint(277)] == 1);
    auto pr = primes_up_to(30);
    CHECK(pr.size() == 10);
    CHECK(pr.back() == 29);
}
