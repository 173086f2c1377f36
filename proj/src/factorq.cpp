#include "selbound/factorq.hpp"

#include <algorithm>

#include "selbound/fq.hpp"
#include "selbound/primes.hpp"

namespace selbound::arith {

namespace {

zpoly zp_mod(const zpoly& f, const zint& m) {
    std::vector<zint> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = zmod(f.c[i], m);
    return zpoly(std::move(c));
}

zpoly zp_mods(const zpoly& f, const zint& m) {
    std::vector<zint> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = zmods(f.c[i], m);
    return zpoly(std::move(c));
}

zpoly mulmod(const zpoly& a, const zpoly& b, const zint& m) { return zp_mod(a * b, m); }

// division by monic divisor, coefficients mod m
void divrem_monic_mod(const zpoly& a, const zpoly& b, const zint& m, zpoly& q, zpoly& r) {
    q = zpoly{};
    r = zp_mod(a, m);
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        zint f = r.lc();
        std::vector<zint> qc(static_cast<size_t>(k) + 1);
        qc[static_cast<size_t>(k)] = f;
        zpoly mono(std::move(qc));
        q = zp_mod(q + mono, m);
        r = zp_mod(r - mono * b, m);
    }
}

// Quadratic Hensel step: f == g*h (mod m), s*g + t*h == 1 (mod m),
// f, g, h monic. Returns g', h', s', t' satisfying the same mod m^2.
struct hensel_pair {
    zpoly g, h, s, t;
};

hensel_pair hensel_step(const zpoly& f, const hensel_pair& in, const zint& m) {
    zint m2 = m * m;
    zpoly e = zp_mod(f - in.g * in.h, m2);
    zpoly q, r;
    divrem_monic_mod(in.s * e, in.h, m2, q, r);
    zpoly g1 = zp_mod(in.g + in.t * e + q * in.g, m2);
    zpoly h1 = zp_mod(in.h + r, m2);
    zpoly b = zp_mod(in.s * g1 + in.t * h1 - zpoly({zint(1)}), m2);
    zpoly c, d;
    divrem_monic_mod(in.s * b, h1, m2, c, d);
    zpoly s1 = zp_mod(in.s - d, m2);
    zpoly t1 = zp_mod(in.t - in.t * b - c * g1, m2);
    return {g1, h1, s1, t1};
}

// Extended Euclid over F_p for monic coprime g, h: s*g + t*h = 1.
void bezout_mod_p(const zpoly& g, const zpoly& h, const zint& p, zpoly& s, zpoly& t) {
    fq_ctx F = make_fq(p, 1);
    fqpoly a = fqp_from_zpoly(F, g), b = fqp_from_zpoly(F, h);
    fqpoly r0 = a, r1 = b;
    fqpoly s0 = fqp_one(F), s1{};
    fqpoly t0{}, t1 = fqp_one(F);
    while (!r1.is_zero()) {
        fqpoly q, r;
        fqp_divrem(F, r0, r1, q, r);
        fqpoly s2 = fqp_sub(F, s0, fqp_mul(F, q, s1));
        fqpoly t2 = fqp_sub(F, t0, fqp_mul(F, q, t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.deg() != 0) throw internal_inconsistency_error("bezout_mod_p: inputs not coprime");
    fqelem inv = fq_inv(F, r0.lc());
    s = fqp_to_zpoly(F, fqp_mul_scalar(F, inv, s0));
    t = fqp_to_zpoly(F, fqp_mul_scalar(F, inv, t0));
}

// Lift the factorization f == prod(factors) mod p (all monic, coprime) to mod p^target_exp.
std::vector<zpoly> hensel_lift_tree(const zpoly& f, const std::vector<zpoly>& factors, const zint& p,
                                    unsigned long target_exp) {
    if (factors.size() == 1) {
        return {zp_mod(f, zpow(p, target_exp))};
    }
    size_t half = factors.size() / 2;
    std::vector<zpoly> L(factors.begin(), factors.begin() + static_cast<long>(half));
    std::vector<zpoly> R(factors.begin() + static_cast<long>(half), factors.end());
    zpoly gl = zpoly({zint(1)}), gr = zpoly({zint(1)});
    for (const auto& x : L) gl = zp_mod(gl * x, p);
    for (const auto& x : R) gr = zp_mod(gr * x, p);
    zpoly s, t;
    bezout_mod_p(gl, gr, p, s, t);
    hensel_pair hp{gl, gr, s, t};
    zint m = p;
    while (true) {
        // f == g*h mod m holds; stop once m >= p^target
        zint target = zpow(p, target_exp);
        if (m >= target) break;
        hp = hensel_step(zp_mod(f, m * m), hp, m);
        m = m * m;
    }
    zint target = zpow(p, target_exp);
    zpoly gfin = zp_mod(hp.g, target), hfin = zp_mod(hp.h, target);
    auto left = hensel_lift_tree(gfin, L, p, target_exp);
    auto right = hensel_lift_tree(hfin, R, p, target_exp);
    left.insert(left.end(), right.begin(), right.end());
    return left;
}

// Landau-Mignotte style bound on |coefficients| of lc(g)*h for any factor h of g.
zint coeff_bound(const zpoly& g) {
    zint norm2 = 0;
    for (const auto& c : g.c) norm2 += c * c;
    zint s;
    mpz_sqrt(s.get_mpz_t(), norm2.get_mpz_t());
    s += 1;
    return (zint(1) << static_cast<unsigned long>(g.deg() + 1)) * s * abs(g.lc());
}

std::vector<zpoly> factor_squarefree_primitive(const zpoly& g) {
    if (g.deg() <= 0) return {};
    if (g.deg() == 1) return {g};

    // choose a prime keeping g squarefree; among a few candidates prefer the
    // one with the fewest modular factors
    zint best_p = 0;
    std::vector<zpoly> best_factors;
    zint p = 2;
    int tried = 0;
    while (tried < 4) {
        p = next_prime(p);
        if (g.lc() % p == 0) continue;
        fq_ctx F = make_fq(p, 1);
        fqpoly gp = fqp_from_zpoly(F, g);
        fqpoly dgp = fqp_derivative(F, gp);
        if (dgp.is_zero()) continue;
        if (fqp_gcd(F, gp, dgp).deg() != 0) continue;
        auto fs = fqp_factor(F, fqp_monic(F, gp));
        std::vector<zpoly> lifted;
        for (const auto& fac : fs) lifted.push_back(fqp_to_zpoly(F, fac.poly));
        if (best_p == 0 || lifted.size() < best_factors.size()) {
            best_p = p;
            best_factors = lifted;
        }
        tried++;
        if (best_factors.size() == 1) break;
    }
    p = best_p;
    if (best_factors.size() == 1) return {g};

    // lift a monic model: gm = g / lc mod p^a
    zint bound = coeff_bound(g);
    unsigned long a = 1;
    zint pa = p;
    while (pa <= 2 * bound) {
        pa *= p;
        a++;
    }
    zint lc = g.lc();
    zint lcinv = zinvmod(lc, pa);
    zpoly gm = zp_mod(lcinv * g, pa);
    std::vector<zpoly> lifted = hensel_lift_tree(gm, best_factors, p, a);

    // subset recombination
    std::vector<zpoly> result;
    std::vector<zpoly> pool = lifted;
    zpoly rest = g;
    size_t k = 1;
    while (2 * k <= pool.size()) {
        bool found = false;
        // iterate k-subsets of pool in lexicographic index order
        std::vector<size_t> idx(k);
        for (size_t i = 0; i < k; i++) idx[i] = i;
        while (true) {
            zpoly cand({rest.lc()});
            for (size_t i : idx) cand = zp_mod(cand * pool[i], pa);
            cand = zp_mods(cand, pa);
            zpoly pp = primitive_part(cand);
            if (divides(pp, rest)) {
                qpoly q, r;
                qdivrem(to_qpoly(rest), to_qpoly(pp), q, r);
                rest = to_zpoly(q);
                result.push_back(pp);
                std::vector<zpoly> np;
                for (size_t i = 0, j = 0; i < pool.size(); i++) {
                    if (j < idx.size() && idx[j] == i) {
                        j++;
                        continue;
                    }
                    np.push_back(pool[i]);
                }
                pool = np;
                found = true;
                break;
            }
            // next k-subset
            long pos = static_cast<long>(k) - 1;
            while (pos >= 0 && idx[static_cast<size_t>(pos)] == pool.size() - k + static_cast<size_t>(pos)) pos--;
            if (pos < 0) break;
            idx[static_cast<size_t>(pos)]++;
            for (size_t j = static_cast<size_t>(pos) + 1; j < k; j++) idx[j] = idx[j - 1] + 1;
        }
        if (!found) k++;
    }
    if (rest.deg() > 0) result.push_back(primitive_part(rest));
    return result;
}

bool factor_order_less(const std::pair<zpoly, int>& a, const std::pair<zpoly, int>& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    for (int i = a.first.deg(); i >= 0; i--) {
        zint ca = a.first.coeff(i), cb = b.first.coeff(i);
        if (ca != cb) return ca < cb;
    }
    return false;
}

}  // namespace

qfactorization factor_over_Q(const qpoly& f) {
    if (f.is_zero()) throw invalid_input_error("factor_over_Q: zero polynomial");
    qfactorization out;
    zint num, den;
    zpoly F = to_zpoly_primitive(f, num, den);
    out.content = qrat(num, den);
    out.content.canonicalize();
    if (F.deg() <= 0) return out;
    auto parts = squarefree_decomposition(F);
    for (size_t m = 0; m < parts.size(); m++) {
        if (parts[m].deg() <= 0) continue;
        for (const auto& irr : factor_squarefree_primitive(parts[m]))
            out.factors.emplace_back(irr, static_cast<int>(m) + 1);
    }
    std::sort(out.factors.begin(), out.factors.end(), factor_order_less);
    return out;
}

qfactorization factor_over_Q(const zpoly& f) { return factor_over_Q(to_qpoly(f)); }

bool is_irreducible_over_Q(const zpoly& f) {
    if (f.deg() <= 0) return false;
    auto fac = factor_over_Q(f);
    return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

std::vector<qrat> rational_roots(const zpoly& f) {
    std::vector<qrat> out;
    auto fac = factor_over_Q(f);
    for (const auto& [g, m] : fac.factors) {
        if (g.deg() == 1) {
            qrat r(-g.coeff(0), g.coeff(1));
            r.canonicalize();
            out.push_back(r);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace selbound::arith
