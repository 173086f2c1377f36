#include "selbound/fq.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <map>

#include "selbound/primes.hpp"

namespace selbound::arith {

namespace {

zpoly reduce_mod_p(const zpoly& f, const zint& p) {
    std::vector<zint> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = zmod(f.c[i], p);
    return zpoly(std::move(c));
}

}  // namespace

fqelem fq_make(const fq_ctx& F, const zpoly& rep) {
    zpoly r = reduce_mod_p(rep, F.p);
    if (r.deg() >= F.k) {
        // reduce mod modulus over F_p
        zpoly q, rem;
        // modulus is monic; do division with mod-p reduction as we go
        rem = r;
        while (rem.deg() >= F.k) {
            int sh = rem.deg() - F.k;
            zint top = rem.lc();
            std::vector<zint> mc(static_cast<size_t>(sh) + 1);
            mc[static_cast<size_t>(sh)] = top;
            rem = rem - zpoly(std::move(mc)) * F.modulus;
            rem = reduce_mod_p(rem, F.p);
        }
        r = rem;
    }
    return fqelem{std::move(r.c)};
}

fqelem fq_from_int(const fq_ctx& F, const zint& a) {
    zint r = zmod(a, F.p);
    if (r == 0) return {};
    return fqelem{{r}};
}

fqelem fq_zero() { return {}; }
fqelem fq_one(const fq_ctx& F) { return fq_from_int(F, 1); }

fqelem fq_gen(const fq_ctx& F) { return fq_make(F, zpoly({zint(0), zint(1)})); }

fqelem fq_add(const fq_ctx& F, const fqelem& a, const fqelem& b) {
    std::vector<zint> c(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < c.size(); i++) {
        zint x = (i < a.c.size() ? a.c[i] : zint(0)) + (i < b.c.size() ? b.c[i] : zint(0));
        c[i] = zmod(x, F.p);
    }
    zpoly r(std::move(c));
    return fqelem{std::move(r.c)};
}

fqelem fq_neg(const fq_ctx& F, const fqelem& a) {
    std::vector<zint> c(a.c.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = zmod(-a.c[i], F.p);
    zpoly r(std::move(c));
    return fqelem{std::move(r.c)};
}

fqelem fq_sub(const fq_ctx& F, const fqelem& a, const fqelem& b) { return fq_add(F, a, fq_neg(F, b)); }

fqelem fq_mul(const fq_ctx& F, const fqelem& a, const fqelem& b) {
    if (a.is_zero() || b.is_zero()) return {};
    zpoly prod = zpoly(std::vector<zint>(a.c)) * zpoly(std::vector<zint>(b.c));
    return fq_make(F, prod);
}

fqelem fq_pow(const fq_ctx& F, const fqelem& a, const zint& e) {
    if (e < 0) return fq_pow(F, fq_inv(F, a), -e);
    fqelem r = fq_one(F), base = a;
    zint k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = fq_mul(F, r, base);
        base = fq_mul(F, base, base);
        k >>= 1;
    }
    return r;
}

fqelem fq_inv(const fq_ctx& F, const fqelem& a) {
    if (a.is_zero()) throw invalid_input_error("fq_inv(0)");
    // a^(q-2)
    return fq_pow(F, a, F.q() - 2);
}

fqelem fq_frob(const fq_ctx& F, const fqelem& a, int j) {
    fqelem r = a;
    for (int i = 0; i < j; i++) r = fq_pow(F, r, F.p);
    return r;
}

zint fq_trace_abs(const fq_ctx& F, const fqelem& a) {
    fqelem s = fq_zero(), cur = a;
    for (int i = 0; i < F.k; i++) {
        s = fq_add(F, s, cur);
        cur = fq_frob(F, cur);
    }
    if (s.is_zero()) return 0;
    if (s.c.size() != 1) throw internal_inconsistency_error("trace not in prime field");
    return s.c[0];
}

zint fq_code(const fq_ctx& F, const fqelem& a) {
    zint r = 0;
    for (size_t i = a.c.size(); i-- > 0;) r = r * F.p + a.c[i];
    return r;
}

zpoly fq_minpoly(const fq_ctx& F, const fqelem& a) {
    // product of (x - sigma(a)) over the Frobenius orbit
    std::vector<fqelem> orbit;
    fqelem cur = a;
    do {
        orbit.push_back(cur);
        cur = fq_frob(F, cur);
    } while (!(cur == a));
    // multiply out over F_q; coefficients land in F_p
    std::vector<fqelem> poly{fq_one(F)};
    for (const auto& r : orbit) {
        std::vector<fqelem> next(poly.size() + 1);
        for (size_t i = 0; i < poly.size(); i++) {
            next[i + 1] = fq_add(F, next[i + 1], poly[i]);
            next[i] = fq_sub(F, next[i], fq_mul(F, r, poly[i]));
        }
        poly = std::move(next);
    }
    std::vector<zint> c(poly.size());
    for (size_t i = 0; i < poly.size(); i++) {
        if (poly[i].is_zero()) c[i] = 0;
        else if (poly[i].c.size() == 1) c[i] = poly[i].c[0];
        else throw internal_inconsistency_error("fq_minpoly: coefficient not in F_p");
    }
    return zpoly(std::move(c));
}

namespace {

bool is_irreducible_fp(const zint& p, const zpoly& f);

std::map<std::pair<std::string, int>, fq_ctx>& modulus_cache() {
    static std::map<std::pair<std::string, int>, fq_ctx> cache;
    return cache;
}

std::mutex& modulus_cache_mu() {
    static std::mutex mu;
    return mu;
}

}  // namespace

fq_ctx make_fq(const zint& p, int k) {
    auto key = std::make_pair(p.get_str(), k);
    auto& cache = modulus_cache();
    {
        std::lock_guard<std::mutex> lk(modulus_cache_mu());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    fq_ctx F;
    F.p = p;
    F.k = k;
    if (k == 1) {
        F.modulus = zpoly({zint(0), zint(1)});  // x
    } else {
        // smallest monic irreducible by base-p code of (a_0..a_{k-1})
        zint code = 0;
        while (true) {
            std::vector<zint> c(static_cast<size_t>(k) + 1);
            zint t = code;
            for (int i = 0; i < k; i++) {
                c[static_cast<size_t>(i)] = zmod(t, p);
                t /= p;
            }
            c[static_cast<size_t>(k)] = 1;
            zpoly cand(std::move(c));
            if (is_irreducible_fp(p, cand)) {
                F.modulus = cand;
                break;
            }
            code += 1;
        }
    }
    std::lock_guard<std::mutex> lk(modulus_cache_mu());
    cache[key] = F;
    return F;
}

fqpoly fqp_from_zpoly(const fq_ctx& F, const zpoly& f) {
    fqpoly r;
    r.c.resize(f.c.size());
    for (size_t i = 0; i < f.c.size(); i++) r.c[i] = fq_from_int(F, f.c[i]);
    r.trim();
    return r;
}

zpoly fqp_to_zpoly(const fq_ctx& F, const fqpoly& f) {
    (void)F;
    std::vector<zint> c(f.c.size());
    for (size_t i = 0; i < c.size(); i++) {
        if (f.c[i].is_zero()) c[i] = 0;
        else if (f.c[i].c.size() == 1) c[i] = f.c[i].c[0];
        else throw invalid_input_error("fqp_to_zpoly: coefficient outside prime field");
    }
    return zpoly(std::move(c));
}

fqpoly fqp_x(const fq_ctx& F) {
    fqpoly r;
    r.c = {fq_zero(), fq_one(F)};
    return r;
}

fqpoly fqp_one(const fq_ctx& F) {
    fqpoly r;
    r.c = {fq_one(F)};
    return r;
}

fqpoly fqp_add(const fq_ctx& F, const fqpoly& a, const fqpoly& b) {
    fqpoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t i = 0; i < r.c.size(); i++) {
        fqelem x = i < a.c.size() ? a.c[i] : fq_zero();
        fqelem y = i < b.c.size() ? b.c[i] : fq_zero();
        r.c[i] = fq_add(F, x, y);
    }
    r.trim();
    return r;
}

fqpoly fqp_sub(const fq_ctx& F, const fqpoly& a, const fqpoly& b) {
    fqpoly nb;
    nb.c.resize(b.c.size());
    for (size_t i = 0; i < b.c.size(); i++) nb.c[i] = fq_neg(F, b.c[i]);
    return fqp_add(F, a, nb);
}

fqpoly fqp_mul(const fq_ctx& F, const fqpoly& a, const fqpoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    fqpoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, fq_zero());
    for (size_t i = 0; i < a.c.size(); i++)
        for (size_t j = 0; j < b.c.size(); j++)
            r.c[i + j] = fq_add(F, r.c[i + j], fq_mul(F, a.c[i], b.c[j]));
    r.trim();
    return r;
}

fqpoly fqp_mul_scalar(const fq_ctx& F, const fqelem& a, const fqpoly& b) {
    if (a.is_zero()) return {};
    fqpoly r;
    r.c.resize(b.c.size());
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = fq_mul(F, a, b.c[i]);
    r.trim();
    return r;
}

fqpoly fqp_monic(const fq_ctx& F, const fqpoly& a) {
    if (a.is_zero()) return a;
    return fqp_mul_scalar(F, fq_inv(F, a.lc()), a);
}

void fqp_divrem(const fq_ctx& F, const fqpoly& a, const fqpoly& b, fqpoly& q, fqpoly& r) {
    if (b.is_zero()) throw invalid_input_error("fqp_divrem: zero divisor");
    q = fqpoly{};
    r = a;
    fqelem linv = fq_inv(F, b.lc());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int k = r.deg() - b.deg();
        fqelem f = fq_mul(F, r.lc(), linv);
        fqpoly mono;
        mono.c.assign(static_cast<size_t>(k) + 1, fq_zero());
        mono.c.back() = f;
        q = fqp_add(F, q, mono);
        r = fqp_sub(F, r, fqp_mul(F, mono, b));
    }
}

fqpoly fqp_gcd(const fq_ctx& F, const fqpoly& a, const fqpoly& b) {
    fqpoly f = a, g = b;
    while (!g.is_zero()) {
        fqpoly q, r;
        fqp_divrem(F, f, g, q, r);
        f = g;
        g = r;
    }
    return f.is_zero() ? f : fqp_monic(F, f);
}

fqpoly fqp_powmod(const fq_ctx& F, const fqpoly& a, const zint& e, const fqpoly& m) {
    fqpoly r = fqp_one(F), base;
    {
        fqpoly q, rem;
        fqp_divrem(F, a, m, q, rem);
        base = rem;
    }
    zint k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) {
            fqpoly q, rem;
            fqp_divrem(F, fqp_mul(F, r, base), m, q, rem);
            r = rem;
        }
        fqpoly q, rem;
        fqp_divrem(F, fqp_mul(F, base, base), m, q, rem);
        base = rem;
        k >>= 1;
    }
    return r;
}

fqpoly fqp_derivative(const fq_ctx& F, const fqpoly& a) {
    if (a.deg() <= 0) return {};
    fqpoly r;
    r.c.resize(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); i++)
        r.c[i - 1] = fq_mul(F, fq_from_int(F, zint(static_cast<long>(i))), a.c[i]);
    r.trim();
    return r;
}

fqelem fqp_eval(const fq_ctx& F, const fqpoly& a, const fqelem& x) {
    fqelem r = fq_zero();
    for (size_t i = a.c.size(); i-- > 0;) r = fq_add(F, fq_mul(F, r, x), a.c[i]);
    return r;
}

fqpoly fqp_compose_mod(const fq_ctx& F, const fqpoly& a, const fqpoly& b, const fqpoly& m) {
    fqpoly r;
    for (size_t i = a.c.size(); i-- > 0;) {
        fqpoly t = fqp_mul(F, r, b);
        fqpoly ci;
        if (!a.c[i].is_zero()) ci.c = {a.c[i]};
        t = fqp_add(F, t, ci);
        fqpoly q, rem;
        fqp_divrem(F, t, m, q, rem);
        r = rem;
    }
    return r;
}

fqelem fqp_resultant(const fq_ctx& F, const fqpoly& a, const fqpoly& b) {
    if (a.is_zero() || b.is_zero()) return fq_zero();
    // Euclidean resultant over a field
    fqpoly f = a, g = b;
    fqelem res = fq_one(F);
    bool neg = false;
    while (g.deg() > 0) {
        fqpoly q, r;
        fqp_divrem(F, f, g, q, r);
        if (r.is_zero()) return fq_zero();
        // Res(f,g) = (-1)^(deg f * deg g) lc(g)^(deg f - deg r) Res(g, r)
        if ((f.deg() % 2) && (g.deg() % 2)) neg = !neg;
        res = fq_mul(F, res, fq_pow(F, g.lc(), zint(f.deg() - r.deg())));
        f = g;
        g = r;
    }
    res = fq_mul(F, res, fq_pow(F, g.lc(), zint(f.deg())));
    if (neg) res = fq_neg(F, res);
    return res;
}

namespace {

bool is_irreducible_fq(const fq_ctx& F, const fqpoly& f) {
    int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    fqpoly x = fqp_x(F);
    // x^(q^n) == x mod f, and for each prime l | n: gcd(x^(q^(n/l)) - x, f) = 1
    fqpoly h = x;
    std::vector<int> prime_divs;
    int m = n;
    for (int l = 2; l * l <= m; l++)
        if (m % l == 0) {
            prime_divs.push_back(l);
            while (m % l == 0) m /= l;
        }
    if (m > 1) prime_divs.push_back(m);
    zint q = F.q();
    for (int l : prime_divs) {
        fqpoly hl = x;
        for (int i = 0; i < n / l; i++) hl = fqp_powmod(F, hl, q, f);
        fqpoly g = fqp_gcd(F, fqp_sub(F, hl, x), f);
        if (g.deg() != 0) return false;
    }
    fqpoly hn = x;
    for (int i = 0; i < n; i++) hn = fqp_powmod(F, hn, q, f);
    return fqp_sub(F, hn, x).is_zero();
}

bool is_irreducible_fp(const zint& p, const zpoly& f) {
    fq_ctx F;
    F.p = p;
    F.k = 1;
    F.modulus = zpoly({zint(0), zint(1)});
    return is_irreducible_fq(F, fqp_from_zpoly(F, f));
}

zint zpow_d(const zint& q, int d) {
    zint r = 1;
    for (int i = 0; i < d; i++) r *= q;
    return r;
}

// equal-degree splitting of a squarefree product of irreducibles of degree d
void edf(const fq_ctx& F, const fqpoly& f, int d, detrng& rng, std::vector<fqpoly>& out) {
    if (f.deg() == d) {
        out.push_back(fqp_monic(F, f));
        return;
    }
    zint q = F.q();
    int n = f.deg();
    while (true) {
        // random poly of degree < n
        fqpoly r;
        r.c.resize(static_cast<size_t>(n));
        for (auto& e : r.c) {
            zpoly rep;
            rep.c.resize(static_cast<size_t>(F.k));
            for (auto& x : rep.c) x = rng.zbelow(F.p);
            rep.trim();
            e = fq_make(F, rep);
        }
        r.trim();
        if (r.deg() < 1) continue;
        fqpoly g = fqp_gcd(F, r, f);
        if (g.deg() > 0 && g.deg() < n) {
            fqpoly q2, rem;
            fqp_divrem(F, f, g, q2, rem);
            edf(F, g, d, rng, out);
            edf(F, q2, d, rng, out);
            return;
        }
        fqpoly s;
        if (F.p == 2) {
            // trace map sum r^(2^i), i < k*d
            int bits = F.k * d;
            fqpoly acc, cur = r;
            for (int i = 0; i < bits; i++) {
                acc = fqp_add(F, acc, cur);
                fqpoly q3, rem3;
                fqp_divrem(F, fqp_mul(F, cur, cur), f, q3, rem3);
                cur = rem3;
            }
            s = acc;
        } else {
            zint e = (zpow_d(q, d) - 1) / 2;
            s = fqp_powmod(F, r, e, f);
            // s - 1
            fqpoly one = fqp_one(F);
            s = fqp_sub(F, s, one);
        }
        fqpoly g2 = fqp_gcd(F, s, f);
        if (g2.deg() > 0 && g2.deg() < n) {
            fqpoly q2, rem;
            fqp_divrem(F, f, g2, q2, rem);
            edf(F, g2, d, rng, out);
            edf(F, q2, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<fq_factor> fqp_factor(const fq_ctx& F, const fqpoly& f0) {
    if (f0.is_zero()) throw invalid_input_error("fqp_factor: zero polynomial");
    std::map<std::pair<int, std::string>, std::pair<fqpoly, int>> found;  // (deg, key) -> (poly, mult)
    auto add_factor = [&](const fqpoly& g, int mult) {
        std::string key;
        for (const auto& e : g.c) key += fq_code(F, e).get_str() + ",";
        auto k = std::make_pair(g.deg(), key);
        auto it = found.find(k);
        if (it == found.end()) found[k] = {g, mult};
        else it->second.second += mult;
    };

    // recursion handles p-th power parts
    std::function<void(const fqpoly&, int)> run = [&](const fqpoly& fin, int mult) {
        fqpoly f = fqp_monic(F, fin);
        if (f.deg() == 0) return;
        fqpoly df = fqp_derivative(F, f);
        if (df.is_zero()) {
            // f = g(x^p): p-th root with coefficient Frobenius-inverse
            unsigned long p_ul = F.p.get_ui();
            fqpoly g;
            g.c.resize(static_cast<size_t>(f.deg() / static_cast<int>(p_ul)) + 1);
            for (size_t i = 0; i < g.c.size(); i++) {
                fqelem a = f.c[i * p_ul];
                // p-th root = a^(p^(k-1))
                g.c[i] = fq_frob(F, a, F.k - 1);
            }
            g.trim();
            run(g, mult * static_cast<int>(p_ul));
            return;
        }
        fqpoly gcd = fqp_gcd(F, f, df);
        if (gcd.deg() > 0) {
            fqpoly quo, rem0;
            fqp_divrem(F, f, gcd, quo, rem0);
            run(quo, mult);   // squarefree part, one copy of each factor
            run(gcd, mult);   // remaining multiplicity
            return;
        }
        // f squarefree: distinct-degree then equal-degree
        std::uint64_t seed = 0xcbf29ce484222325ull;
        for (const auto& e : f.c) seed = hash_zint(fq_code(F, e), seed);
        detrng rng(seed);
        fqpoly x = fqp_x(F);
        fqpoly h = x, rest = f;
        int d = 0;
        zint q = F.q();
        while (rest.deg() > 0 && rest.deg() > 2 * d) {
            d++;
            h = fqp_powmod(F, h, q, rest);
            fqpoly g = fqp_gcd(F, fqp_sub(F, h, x), rest);
            if (g.deg() > 0) {
                std::vector<fqpoly> pieces;
                edf(F, g, d, rng, pieces);
                for (const auto& pc : pieces) add_factor(pc, mult);
                fqpoly q2, r2;
                fqp_divrem(F, rest, g, q2, r2);
                rest = q2;
                fqpoly q3, r3;
                fqp_divrem(F, h, rest, q3, r3);
                h = r3;
            }
        }
        if (rest.deg() > 0) add_factor(fqp_monic(F, rest), mult);
    };
    run(f0, 1);

    std::vector<fq_factor> out;
    for (auto& [k, v] : found) out.push_back({v.first, v.second});
    std::sort(out.begin(), out.end(), [&](const fq_factor& a, const fq_factor& b) {
        if (a.poly.deg() != b.poly.deg()) return a.poly.deg() < b.poly.deg();
        for (int i = a.poly.deg(); i >= 0; i--) {
            zint ca = i < static_cast<int>(a.poly.c.size()) ? fq_code(F, a.poly.c[static_cast<size_t>(i)]) : zint(0);
            zint cb = i < static_cast<int>(b.poly.c.size()) ? fq_code(F, b.poly.c[static_cast<size_t>(i)]) : zint(0);
            if (ca != cb) return ca < cb;
        }
        return false;
    });
    return out;
}

bool fqp_is_irreducible(const fq_ctx& F, const fqpoly& f) { return is_irreducible_fq(F, f); }

std::vector<fqelem> fqp_roots(const fq_ctx& F, const fqpoly& f) {
    std::vector<fqelem> out;
    for (const auto& fac : fqp_factor(F, f)) {
        if (fac.poly.deg() == 1) {
            // monic x + c -> root -c
            out.push_back(fq_neg(F, fac.poly.c[0]));
        }
    }
    std::sort(out.begin(), out.end(), [&](const fqelem& a, const fqelem& b) { return fq_code(F, a) < fq_code(F, b); });
    return out;
}

fqelem fq_subfield_gen(const fq_ctx& F, const fq_ctx& sub) {
    if (F.k % sub.k != 0 || F.p != sub.p) throw invalid_input_error("fq_subfield_gen: not a subfield");
    if (sub.k == 1) return fq_one(F);
    fqpoly m = fqp_from_zpoly(F, sub.modulus);
    auto roots = fqp_roots(F, m);
    if (roots.empty()) throw internal_inconsistency_error("fq_subfield_gen: modulus has no root");
    return roots.front();
}

fqelem fq_express_in_subfield(const fq_ctx& F, const fq_ctx& sub, const fqelem& zeta, const fqelem& a) {
    // solve a = sum_{i<sub.k} c_i zeta^i with c_i in F_p
    int m = sub.k;
    std::vector<fqelem> pows(static_cast<size_t>(m));
    fqelem cur = fq_one(F);
    for (int i = 0; i < m; i++) {
        pows[static_cast<size_t>(i)] = cur;
        cur = fq_mul(F, cur, zeta);
    }
    // Gaussian elimination over F_p on a (F.k) x m system
    int rows = F.k;
    std::vector<std::vector<zint>> A(static_cast<size_t>(rows), std::vector<zint>(static_cast<size_t>(m) + 1));
    for (int j = 0; j < m; j++)
        for (int i = 0; i < rows; i++)
            A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                i < static_cast<int>(pows[static_cast<size_t>(j)].c.size()) ? pows[static_cast<size_t>(j)].c[static_cast<size_t>(i)] : zint(0);
    for (int i = 0; i < rows; i++)
        A[static_cast<size_t>(i)][static_cast<size_t>(m)] = i < static_cast<int>(a.c.size()) ? a.c[static_cast<size_t>(i)] : zint(0);

    std::vector<int> pivot_col(static_cast<size_t>(rows), -1);
    int rank = 0;
    for (int col = 0; col < m && rank < rows; col++) {
        int pr = -1;
        for (int i = rank; i < rows; i++)
            if (A[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[static_cast<size_t>(pr)], A[static_cast<size_t>(rank)]);
        zint inv = zinvmod(A[static_cast<size_t>(rank)][static_cast<size_t>(col)], F.p);
        for (int j = col; j <= m; j++)
            A[static_cast<size_t>(rank)][static_cast<size_t>(j)] = zmod(A[static_cast<size_t>(rank)][static_cast<size_t>(j)] * inv, F.p);
        for (int i = 0; i < rows; i++) {
            if (i == rank) continue;
            zint fct = A[static_cast<size_t>(i)][static_cast<size_t>(col)];
            if (fct == 0) continue;
            for (int j = col; j <= m; j++)
                A[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    zmod(A[static_cast<size_t>(i)][static_cast<size_t>(j)] - fct * A[static_cast<size_t>(rank)][static_cast<size_t>(j)], F.p);
        }
        pivot_col[static_cast<size_t>(rank)] = col;
        rank++;
    }
    std::vector<zint> coef(static_cast<size_t>(m), zint(0));
    for (int i = 0; i < rank; i++) coef[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = A[static_cast<size_t>(i)][static_cast<size_t>(m)];
    // consistency: rows beyond rank must have zero rhs
    for (int i = rank; i < rows; i++)
        if (A[static_cast<size_t>(i)][static_cast<size_t>(m)] != 0)
            throw internal_inconsistency_error("fq_express_in_subfield: element not in subfield");
    zpoly rep(std::move(coef));
    return fqelem{std::move(rep.c)};
}

fqelem fq_trace_rel(const fq_ctx& F, const fq_ctx& sub, const fqelem& zeta, const fqelem& a) {
    if (F.k % sub.k != 0) throw invalid_input_error("fq_trace_rel: not a subfield");
    int steps = F.k / sub.k;
    fqelem s = fq_zero(), cur = a;
    for (int i = 0; i < steps; i++) {
        s = fq_add(F, s, cur);
        cur = fq_frob(F, cur, sub.k);
    }
    return fq_express_in_subfield(F, sub, zeta, s);
}

}  // namespace selbound::arith
