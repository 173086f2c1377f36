#include "selbound/curve.hpp"

#include <algorithm>

#include "selbound/primes.hpp"

namespace selbound {

using namespace selbound::arith;
using nf::make_number_field;
using nf::number_field;

qpoly nf_reduce(const number_field& K, const qpoly& a) {
    if (a.deg() < K.degree()) return a;
    qpoly q, r;
    qdivrem(a, to_qpoly(K.poly), q, r);
    return r;
}

qpoly nf_add(const number_field& K, const qpoly& a, const qpoly& b) {
    (void)K;
    return a + b;
}

qpoly nf_sub(const number_field& K, const qpoly& a, const qpoly& b) {
    (void)K;
    return a - b;
}

qpoly nf_mul(const number_field& K, const qpoly& a, const qpoly& b) { return nf_reduce(K, a * b); }

qpoly nf_inv(const number_field& K, const qpoly& a) {
    if (a.is_zero()) throw invalid_input_error("nf_inv(0)");
    // extended euclid over Q[x]: s*a + t*m = 1
    qpoly r0 = nf_reduce(K, a), r1 = to_qpoly(K.poly);
    qpoly s0, s1;
    s0.c = {qrat(1)};
    while (!r1.is_zero()) {
        qpoly q, r;
        qdivrem(r0, r1, q, r);
        qpoly s2 = s0 - q * s1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
    }
    if (r0.deg() != 0) throw internal_inconsistency_error("nf_inv: element not invertible");
    qrat inv = 1 / r0.coeff(0);
    return nf_reduce(K, inv * s0);
}

int kdeg(const kpoly& f) {
    for (size_t i = f.size(); i-- > 0;)
        if (!f[i].is_zero()) return static_cast<int>(i);
    return -1;
}

static void ktrim(kpoly& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

kpoly kp_add(const number_field& K, const kpoly& a, const kpoly& b) {
    (void)K;
    kpoly c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < c.size(); i++) {
        qpoly x = i < a.size() ? a[i] : qpoly{};
        qpoly y = i < b.size() ? b[i] : qpoly{};
        c[i] = x + y;
    }
    ktrim(c);
    return c;
}

kpoly kp_sub(const number_field& K, const kpoly& a, const kpoly& b) {
    (void)K;
    kpoly c(std::max(a.size(), b.size()));
    for (size_t i = 0; i < c.size(); i++) {
        qpoly x = i < a.size() ? a[i] : qpoly{};
        qpoly y = i < b.size() ? b[i] : qpoly{};
        c[i] = x - y;
    }
    ktrim(c);
    return c;
}

kpoly kp_mul(const number_field& K, const kpoly& a, const kpoly& b) {
    if (a.empty() || b.empty()) return {};
    kpoly c(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); i++)
        for (size_t j = 0; j < b.size(); j++)
            if (!a[i].is_zero() && !b[j].is_zero()) c[i + j] = c[i + j] + nf_mul(K, a[i], b[j]);
    ktrim(c);
    return c;
}

void kp_divrem(const number_field& K, const kpoly& a, const kpoly& b, kpoly& q, kpoly& r) {
    int db = kdeg(b);
    if (db < 0) throw invalid_input_error("kp_divrem: zero divisor");
    qpoly binv = nf_inv(K, b[static_cast<size_t>(db)]);
    q.clear();
    r = a;
    ktrim(r);
    while (kdeg(r) >= db) {
        int k = kdeg(r) - db;
        qpoly f = nf_mul(K, r[static_cast<size_t>(kdeg(r))], binv);
        if (static_cast<int>(q.size()) < k + 1) q.resize(static_cast<size_t>(k) + 1);
        q[static_cast<size_t>(k)] = q[static_cast<size_t>(k)] + f;
        kpoly mono(static_cast<size_t>(k) + 1);
        mono[static_cast<size_t>(k)] = f;
        r = kp_sub(K, r, kp_mul(K, mono, b));
    }
    ktrim(q);
}

kpoly kp_gcd_monic(const number_field& K, const kpoly& a, const kpoly& b) {
    kpoly f = a, g = b;
    ktrim(f);
    ktrim(g);
    while (kdeg(g) >= 0) {
        kpoly q, r;
        kp_divrem(K, f, g, q, r);
        f = g;
        g = r;
    }
    int df = kdeg(f);
    if (df < 0) return f;
    qpoly inv = nf_inv(K, f[static_cast<size_t>(df)]);
    for (auto& c : f) c = nf_mul(K, c, inv);
    return f;
}

kpoly kp_derivative(const number_field& K, const kpoly& a) {
    (void)K;
    if (a.size() <= 1) return {};
    kpoly d(a.size() - 1);
    for (size_t i = 1; i < a.size(); i++) d[i - 1] = qrat(static_cast<long>(i)) * a[i];
    ktrim(d);
    return d;
}

qpoly kp_eval(const number_field& K, const kpoly& f, const qrat& x) {
    qpoly acc;
    for (size_t i = f.size(); i-- > 0;) {
        acc = x * acc + f[i];
        acc = nf_reduce(K, acc);
    }
    return acc;
}

qpoly kp_disc(const number_field& K, const kpoly& f) {
    // division-free Sylvester determinant of (f, f') over K, then the
    // standard sign/lc normalization (f monic)
    kpoly df = kp_derivative(K, f);
    int n = kdeg(f), m = kdeg(df);
    if (n < 1) throw invalid_input_error("kp_disc: constant polynomial");
    int size = n + m;
    std::vector<std::vector<qpoly>> M(static_cast<size_t>(size), std::vector<qpoly>(static_cast<size_t>(size)));
    for (int i = 0; i < m; i++)
        for (int j = 0; j <= n; j++) M[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f[static_cast<size_t>(n - j)];
    for (int i = 0; i < n; i++)
        for (int j = 0; j <= m; j++)
            M[static_cast<size_t>(m + i)][static_cast<size_t>(i + j)] = df[static_cast<size_t>(m - j)];
    // Berkowitz determinant over K
    std::vector<qpoly> pvec{to_qpoly(zpoly({zint(1)}))};
    for (int kk = 1; kk <= size; kk++) {
        std::vector<qpoly> q(static_cast<size_t>(kk) + 1);
        q[0] = to_qpoly(zpoly({zint(1)}));
        q[1] = qpoly{} - M[static_cast<size_t>(kk - 1)][static_cast<size_t>(kk - 1)];
        if (kk >= 2) {
            int mm = kk - 1;
            std::vector<qpoly> v(static_cast<size_t>(mm));
            for (int i = 0; i < mm; i++) v[static_cast<size_t>(i)] = M[static_cast<size_t>(i)][static_cast<size_t>(kk - 1)];
            for (int j = 2; j <= kk; j++) {
                qpoly dot;
                for (int i = 0; i < mm; i++)
                    dot = dot + nf_mul(K, M[static_cast<size_t>(kk - 1)][static_cast<size_t>(i)], v[static_cast<size_t>(i)]);
                q[static_cast<size_t>(j)] = qpoly{} - dot;
                if (j < kk) {
                    std::vector<qpoly> nv(static_cast<size_t>(mm));
                    for (int i = 0; i < mm; i++) {
                        qpoly s;
                        for (int l = 0; l < mm; l++)
                            s = s + nf_mul(K, M[static_cast<size_t>(i)][static_cast<size_t>(l)], v[static_cast<size_t>(l)]);
                        nv[static_cast<size_t>(i)] = s;
                    }
                    v = std::move(nv);
                }
            }
        }
        std::vector<qpoly> np(static_cast<size_t>(kk) + 1);
        for (size_t i = 0; i < np.size(); i++) {
            qpoly s;
            for (size_t j = 0; j <= i && j < q.size(); j++)
                if (i - j < pvec.size()) s = s + nf_mul(K, q[j], pvec[i - j]);
            np[i] = s;
        }
        pvec = std::move(np);
    }
    qpoly res = pvec.back();
    if (size % 2 == 1) res = qpoly{} - res;
    long e = (static_cast<long>(n) * (n - 1)) / 2;
    if (e % 2 == 1) res = qpoly{} - res;
    return nf_reduce(K, res);
}

std::vector<kpoly> factor_over_K(const number_field& K, const kpoly& f0) {
    kpoly f = f0;
    ktrim(f);
    int d = kdeg(f);
    if (d < 1) throw invalid_input_error("factor_over_K: degree >= 1 required");
    // require monic
    if (!(f[static_cast<size_t>(d)] == to_qpoly(zpoly({zint(1)}))))
        throw invalid_input_error("factor_over_K: monic polynomial required");
    if (d == 1) return {f};

    // Trager: find shift s with squarefree norm
    qpoly theta;
    theta.c = {qrat(0), qrat(1)};
    for (long s = 0; s < 64; s++) {
        // g(x) = f(x - s*theta); norm via resultant in theta
        kpoly g = f;
        if (s != 0) {
            // compose with x -> x - s*theta using Horner over K[x]
            kpoly acc;
            kpoly lin(2);
            lin[0] = qrat(-s) * theta;
            lin[1] = to_qpoly(zpoly({zint(1)}));
            for (size_t i = f.size(); i-- > 0;) {
                acc = kp_mul(K, acc, lin);
                if (acc.empty()) acc.resize(1);
                acc[0] = nf_reduce(K, acc[0] + f[i]);
                ktrim(acc);
            }
            g = acc;
        }
        // norm polynomial: N(x) = Res_theta(m(theta), g(x; theta)) computed by
        // viewing g as a bivariate polynomial and taking the resultant
        // coefficient-wise; use exact arithmetic over Q[x].
        // Build matrices over Q[x]: Sylvester of m(t) and g(t) with
        // coefficients in Q[x], via classic evaluation/interpolation on
        // integers to keep it simple and exact.
        int nk = K.degree();
        int total_deg = d * nk;
        std::vector<qrat> xs, ys;
        for (long t = 0; xs.size() < static_cast<size_t>(total_deg) + 1; t++) {
            qrat xv(t);
            // evaluate g at x = xv: a K-element; then norm via resultant
            qpoly val = kp_eval(K, g, xv);
            qrat nv = resultant(to_qpoly(K.poly), val);
            if (val.is_zero()) nv = 0;
            xs.push_back(xv);
            ys.push_back(nv);
        }
        // Lagrange interpolation to recover N(x) of degree <= total_deg
        qpoly Npoly;
        for (size_t i = 0; i < xs.size(); i++) {
            qpoly term;
            term.c = {qrat(1)};
            qrat denom = 1;
            for (size_t j = 0; j < xs.size(); j++) {
                if (i == j) continue;
                qpoly lin;
                lin.c = {-xs[j], qrat(1)};
                term = term * lin;
                denom *= (xs[i] - xs[j]);
            }
            Npoly = Npoly + (ys[i] / denom) * term;
        }
        zint num, den;
        zpoly NZ = to_zpoly_primitive(Npoly, num, den);
        if (!is_squarefree(NZ)) continue;
        auto nf_factors = factor_over_Q(NZ);
        std::vector<kpoly> out;
        for (const auto& [h, mult] : nf_factors.factors) {
            if (mult != 1) throw internal_inconsistency_error("factor_over_K: norm factor multiplicity");
            // K-factor = gcd(f(x), h(x + s*theta))
            kpoly hk;
            {
                // h(x + s*theta)
                kpoly acc;
                kpoly lin(2);
                lin[0] = qrat(s) * theta;
                lin[1] = to_qpoly(zpoly({zint(1)}));
                for (int i = h.deg(); i >= 0; i--) {
                    acc = kp_mul(K, acc, lin);
                    if (acc.empty()) acc.resize(1);
                    acc[0] = nf_reduce(K, acc[0] + to_qpoly(zpoly({h.coeff(i)})));
                    ktrim(acc);
                }
                hk = acc;
            }
            kpoly gk = kp_gcd_monic(K, f, hk);
            if (kdeg(gk) >= 1) out.push_back(gk);
        }
        int degsum = 0;
        for (const auto& gk : out) degsum += kdeg(gk);
        if (degsum != d) throw internal_inconsistency_error("factor_over_K: factor degrees do not sum");
        std::sort(out.begin(), out.end(), [](const kpoly& a, const kpoly& b) { return kdeg(a) < kdeg(b); });
        return out;
    }
    throw internal_inconsistency_error("factor_over_K: no squarefree shift found");
}

namespace {

// sign at embedding of an element given as qpoly rep
int ksign(const number_field& K, const qpoly& a, size_t emb) {
    return nf::sign_at_real_embedding(K, a, emb);
}

// signed remainder chain over K, primitive-free (field arithmetic)
std::vector<kpoly> ksturm_chain(const number_field& K, const kpoly& f) {
    std::vector<kpoly> chain;
    kpoly a = f;
    ktrim(a);
    chain.push_back(a);
    kpoly b = kp_derivative(K, a);
    if (kdeg(b) < 0) return chain;
    chain.push_back(b);
    while (true) {
        kpoly q, r;
        kp_divrem(K, chain[chain.size() - 2], chain.back(), q, r);
        if (kdeg(r) < 0) break;
        for (auto& c : r) c = qrat(-1) * c;
        chain.push_back(r);
        if (kdeg(chain.back()) == 0) break;
    }
    return chain;
}

int kvariations(const number_field& K, const std::vector<kpoly>& chain, const qrat& x, size_t emb) {
    int v = 0, last = 0;
    for (const auto& g : chain) {
        qpoly val = kp_eval(K, g, x);
        int s = val.is_zero() ? 0 : ksign(K, val, emb);
        if (s == 0) continue;
        if (last != 0 && s != last) v++;
        last = s;
    }
    return v;
}

qrat kroot_bound(const number_field& K, const kpoly& f, size_t emb) {
    // Cauchy-style bound via rational bounds on |sigma(c_i)|
    int d = kdeg(f);
    qrat best = 1;
    for (int i = 0; i < d; i++) {
        const qpoly& c = f[static_cast<size_t>(i)];
        if (c.is_zero()) continue;
        // crude bound: sum |coeff_j| * B^j where B bounds |theta| at the embedding
        root_interval iv = K.real_roots[emb];
        qrat B = abs(iv.lo) > abs(iv.hi) ? abs(iv.lo) : abs(iv.hi);
        B += 1;
        qrat acc = 0, pw = 1;
        for (int j = 0; j <= c.deg(); j++) {
            acc += abs(c.coeff(j)) * pw;
            pw *= B;
        }
        if (acc > best) best = acc;
    }
    return best + 2;
}

}  // namespace

std::vector<root_interval> isolate_real_roots_at_embedding(const number_field& K, const kpoly& f, size_t emb) {
    auto chain = ksturm_chain(K, f);
    qrat B = kroot_bound(K, f, emb);
    auto count = [&](const qrat& a, const qrat& b) {
        return kvariations(K, chain, a, emb) - kvariations(K, chain, b, emb);
    };
    auto value_nonzero = [&](const qrat& x) {
        qpoly v = kp_eval(K, f, x);
        return !v.is_zero();
    };
    std::vector<root_interval> out;
    struct seg {
        qrat lo, hi;
        int count;
    };
    std::vector<seg> stack;
    int total = count(-B, B);
    if (total > 0) stack.push_back({-B, B, total});
    int dd = kdeg(f);
    while (!stack.empty()) {
        seg s = stack.back();
        stack.pop_back();
        if (s.count == 1) {
            out.push_back({s.lo, s.hi});
            continue;
        }
        qrat m;
        bool found = false;
        for (int j = 1; j <= dd + 2 && !found; j++) {
            qrat t(j, dd + 3);
            t.canonicalize();
            m = s.lo + (s.hi - s.lo) * t;
            if (value_nonzero(m)) found = true;
        }
        if (!found) throw internal_inconsistency_error("isolate_at_embedding: no split point");
        int left = count(s.lo, m);
        int right = s.count - left;
        if (right > 0) stack.push_back({m, s.hi, right});
        if (left > 0) stack.push_back({s.lo, m, left});
    }
    std::sort(out.begin(), out.end(), [](const root_interval& a, const root_interval& b) { return a.lo < b.lo; });
    return out;
}

namespace {

// Match each root interval of p to the factor root it isolates: refine all
// intervals until the overlap relation is a perfect matching. refine(kind,
// fi, j, iv) shrinks interval j of list fi (fi < 0 means the p-root list).
template <typename RefineFn>
void match_roots(std::vector<root_interval>& proots, std::vector<std::vector<root_interval>>& froots,
                 RefineFn refine, std::vector<int>& owner, std::vector<int>& emb) {
    owner.assign(proots.size(), -1);
    emb.assign(proots.size(), -1);
    for (int round = 0; round < 128; round++) {
        bool perfect = true;
        std::vector<std::vector<int>> used(froots.size());
        for (size_t fi = 0; fi < froots.size(); fi++) used[fi].assign(froots[fi].size(), 0);
        for (size_t ri = 0; ri < proots.size(); ri++) {
            int hits = 0;
            for (size_t fi = 0; fi < froots.size(); fi++)
                for (size_t j = 0; j < froots[fi].size(); j++) {
                    const auto& o = froots[fi][j];
                    if (!(o.hi < proots[ri].lo || proots[ri].hi < o.lo)) {
                        hits++;
                        owner[ri] = static_cast<int>(fi);
                        emb[ri] = static_cast<int>(j);
                    }
                }
            if (hits != 1) {
                perfect = false;
                owner[ri] = -1;
            } else {
                used[static_cast<size_t>(owner[ri])][static_cast<size_t>(emb[ri])]++;
            }
        }
        if (perfect) {
            for (const auto& u : used)
                for (int c : u)
                    if (c > 1) perfect = false;
        }
        if (perfect) return;
        for (size_t ri = 0; ri < proots.size(); ri++) refine(-1, static_cast<int>(ri), proots[ri]);
        for (size_t fi = 0; fi < froots.size(); fi++)
            for (size_t j = 0; j < froots[fi].size(); j++) refine(static_cast<int>(fi), static_cast<int>(j), froots[fi][j]);
    }
    throw internal_inconsistency_error("match_roots: no perfect matching after refinement");
}

void finish_curve_q(curve& C) {
    auto fac = factor_over_Q(C.pz);
    for (const auto& [g, m] : fac.factors) {
        if (m > 1) throw invalid_input_error("curve: polynomial not squarefree");
        C.factors_z.push_back(g);
        C.factor_fields.push_back(make_number_field(g));
        C.abs_shift.push_back(0);
    }
    // archimedean data: one real place, roots of p with factor assignment
    real_place_profile prof;
    prof.base_embedding = 0;
    prof.roots = arith::isolate_real_roots(C.pz);
    if (prof.roots.size() % 2 == 0) throw internal_inconsistency_error("curve: even number of real roots for odd degree");
    std::vector<std::vector<root_interval>> froots;
    for (const auto& L : C.factor_fields) froots.push_back(L->real_roots);
    auto refine = [&](int fi, int j, root_interval& iv) {
        (void)j;
        const zpoly& f = fi < 0 ? C.pz : C.factors_z[static_cast<size_t>(fi)];
        if (!iv.exact()) refine_root(f, iv, iv.width() / 4);
    };
    match_roots(prof.roots, froots, refine, prof.factor_of_root, prof.embedding_in_factor);
    C.real_places.push_back(std::move(prof));

    // absolute algebra (trivial base)
    C.Babs = nf::algebra_from_poly(C.pz);
    C.Babs_disc = nf::algebra_disc(C.Babs);
    zint prod = 1;
    for (const auto& L : C.factor_fields) prod *= L->field_disc;
    C.abs_disc_quotient = zdivexact(C.Babs_disc, prod);
}

}  // namespace

curve make_curve_q(const std::string& label, const zpoly& p) {
    curve C;
    C.label = label;
    if (!p.is_monic()) throw invalid_input_error("curve: polynomial must be monic");
    if (p.deg() < 3 || p.deg() % 2 == 0) throw invalid_input_error("curve: odd degree >= 3 required");
    if (!is_squarefree(p)) throw invalid_input_error("curve: polynomial must be squarefree");
    C.d = p.deg();
    C.g = (C.d - 1) / 2;
    // normalize a_{d-1} even: x -> x + c with c = a_{d-1} mod 2
    zint c = zmod(p.coeff(C.d - 1), 2);
    C.pz = c == 0 ? p : translate(p, c);
    C.translation.c = {qrat(c)};
    C.translation.trim();
    finish_curve_q(C);
    return C;
}

curve make_curve_k(const std::string& label, std::shared_ptr<const number_field> K, const kpoly& p0) {
    curve C;
    C.label = label;
    C.K = K;
    if (K->degree() < 2) throw invalid_input_error("curve: use the rational-base constructor for K = Q");
    kpoly p = p0;
    // reduce coefficients into the power basis; they must be integral there
    // (the curve-spec format supplies them that way), which implies
    // integrality in O_K
    for (auto& cf : p) {
        cf = nf_reduce(*K, cf);
        for (int j = 0; j <= cf.deg(); j++)
            if (cf.coeff(j).get_den() != 1)
                throw invalid_input_error("curve: coefficient not integral on the power basis of K");
    }
    ktrim(p);
    int d = kdeg(p);
    if (d < 3 || d % 2 == 0) throw invalid_input_error("curve: odd degree >= 3 required");
    if (!(p[static_cast<size_t>(d)] == to_qpoly(zpoly({zint(1)})))) throw invalid_input_error("curve: monic required");
    C.d = d;
    C.g = (d - 1) / 2;
    // squarefree over K
    {
        qpoly disc = kp_disc(*K, p);
        if (disc.is_zero()) throw invalid_input_error("curve: polynomial must be squarefree");
    }
    // normalize a_{d-1} even at 2: since d is odd, c = a_{d-1} reduced mod 2
    // coefficient-wise satisfies a_{d-1} + d*c == 0 mod 2 O_K
    {
        const qpoly& ad1 = p[static_cast<size_t>(d - 1)];
        qpoly cK;
        cK.c.resize(static_cast<size_t>(ad1.deg()) + 1);
        bool any = false;
        for (int j = 0; j <= ad1.deg(); j++) {
            zint bit = zmod(ad1.coeff(j).get_num(), 2);
            cK.c[static_cast<size_t>(j)] = qrat(bit);
            if (bit != 0) any = true;
        }
        cK.trim();
        if (any) {
            kpoly acc;
            kpoly lin(2);
            lin[0] = cK;
            lin[1] = to_qpoly(zpoly({zint(1)}));
            for (size_t i = p.size(); i-- > 0;) {
                acc = kp_mul(*K, acc, lin);
                if (acc.empty()) acc.resize(1);
                acc[0] = nf_reduce(*K, acc[0] + p[i]);
                ktrim(acc);
            }
            p = acc;
        }
        C.translation = cK;
    }
    C.pk = p;

    // factor over K; absolute fields via generator x + s*theta
    C.factors_k = factor_over_K(*K, p);
    for (const auto& fk : C.factors_k) {
        // absolute defining polynomial: charpoly of x + s*theta on the relative algebra
        std::shared_ptr<const number_field> Labs;
        long shift_used = -1;
        // build the relative order algebra Z[theta][x]/(fk) -- needs integral coeffs;
        // fk is monic over K but its coefficients may be non-integral on the power
        // basis only through the index denominator; clear via O-coords check
        int dk = kdeg(fk);
        std::vector<std::vector<zint>> coeffs;
        for (int i = 0; i <= dk; i++) {
            const qpoly& cf = fk[static_cast<size_t>(i)];
            std::vector<zint> v(static_cast<size_t>(K->degree()), zint(0));
            for (int j = 0; j <= cf.deg(); j++) {
                if (cf.coeff(j).get_den() != 1)
                    throw invalid_input_error("curve: relative factor has non power-basis-integral coefficients");
                v[static_cast<size_t>(j)] = cf.coeff(j).get_num();
            }
            coeffs.push_back(std::move(v));
        }
        auto Bfac = nf::algebra_relative(nf::algebra_from_poly(K->poly), coeffs);
        for (long s = 0; s < 64 && !Labs; s++) {
            // mult matrix of x + s*theta; for a linear factor the algebra is
            // the base itself and x is the (constant) root
            int n = Bfac.n;
            zmat M(n, n);
            std::vector<zint> gen(static_cast<size_t>(n), zint(0));
            if (dk >= 2) {
                gen[static_cast<size_t>(K->degree())] = 1;  // x
            } else {
                for (int k = 0; k < K->degree(); k++) gen[static_cast<size_t>(k)] = -coeffs[0][static_cast<size_t>(k)];
            }
            gen[1] += s;  // + s*theta (base degree >= 2)
            for (int i = 0; i < n; i++) {
                std::vector<zint> ei(static_cast<size_t>(n), zint(0));
                ei[static_cast<size_t>(i)] = 1;
                auto pr = Bfac.mul(gen, ei);
                for (int j = 0; j < n; j++) M.at(i, j) = pr[static_cast<size_t>(j)];
            }
            auto cp = arith::charpoly(M);
            zpoly cpz(std::move(cp));
            if (!is_squarefree(cpz)) continue;
            if (!is_irreducible_over_Q(cpz)) continue;
            Labs = make_number_field(cpz);
            shift_used = s;
        }
        if (!Labs) throw internal_inconsistency_error("curve: no absolute generator found for a factor");
        C.factor_fields.push_back(Labs);
        C.abs_shift.push_back(shift_used);
    }

    // absolute algebra of the full p
    {
        std::vector<std::vector<zint>> coeffs;
        for (int i = 0; i <= d; i++) {
            const qpoly& cf = p[static_cast<size_t>(i)];
            std::vector<zint> v(static_cast<size_t>(K->degree()), zint(0));
            for (int j = 0; j <= cf.deg(); j++) {
                if (cf.coeff(j).get_den() != 1)
                    throw invalid_input_error("curve: coefficient not integral on the power basis");
                v[static_cast<size_t>(j)] = cf.coeff(j).get_num();
            }
            coeffs.push_back(std::move(v));
        }
        C.Babs = nf::algebra_relative(nf::algebra_from_poly(K->poly), coeffs);
        C.Babs_disc = nf::algebra_disc(C.Babs);
        zint prod = 1;
        for (const auto& L : C.factor_fields) prod *= L->field_disc;
        C.abs_disc_quotient = zdivexact(C.Babs_disc, prod);
    }

    // archimedean profiles per real embedding of K
    for (size_t emb = 0; emb < K->real_roots.size(); emb++) {
        real_place_profile prof;
        prof.base_embedding = emb;
        prof.roots = isolate_real_roots_at_embedding(*K, p, emb);
        if (prof.roots.size() % 2 == 0)
            throw internal_inconsistency_error("curve: even real root count at a real place");
        std::vector<std::vector<root_interval>> froots;
        for (const auto& fk : C.factors_k) froots.push_back(isolate_real_roots_at_embedding(*K, fk, emb));
        auto refine = [&](int fi, int j, root_interval& iv) {
            (void)j;
            if (iv.exact()) return;
            const kpoly& f = fi < 0 ? p : C.factors_k[static_cast<size_t>(fi)];
            // one bisection step with a root-free split point
            int dd = kdeg(f);
            for (int t = 1; t <= dd + 2; t++) {
                qrat step(t, dd + 3);
                step.canonicalize();
                qrat m = iv.lo + (iv.hi - iv.lo) * step;
                qpoly vm = kp_eval(*K, f, m);
                if (vm.is_zero()) continue;
                qpoly vl = kp_eval(*K, f, iv.lo);
                int sm = nf::sign_at_real_embedding(*K, vm, emb);
                int sl = vl.is_zero() ? 0 : nf::sign_at_real_embedding(*K, vl, emb);
                if (sl != 0 && sl != sm) iv.hi = m;
                else iv.lo = m;
                return;
            }
        };
        match_roots(prof.roots, froots, refine, prof.factor_of_root, prof.embedding_in_factor);
        C.real_places.push_back(std::move(prof));
    }
    return C;
}

curve twist_curve(const curve& C, const zint& a) {
    if (a == 0) throw invalid_input_error("twist_curve: a must be nonzero");
    if (!C.base_is_q()) throw invalid_input_error("twist_curve: base Q only");
    // the twist depends on a modulo squares; model by the squarefree kernel,
    // so C(a b^2) and C(a) produce the identical integral model
    zint kernel = a < 0 ? zint(-1) : zint(1);
    for (const auto& [p, e] : factorize(abs(a)))
        if (e % 2 == 1) kernel *= p;
    // y^2 = a^d p(x/a) with coefficients a_i -> a^(d-i) a_i
    std::vector<zint> c(static_cast<size_t>(C.d) + 1);
    for (int i = 0; i <= C.d; i++)
        c[static_cast<size_t>(i)] = C.pz.coeff(i) * zpow(kernel, static_cast<unsigned long>(C.d - i));
    return make_curve_q(C.label + "(twist " + kernel.get_str() + ")", zpoly(std::move(c)));
}

std::vector<qrat> rational_weierstrass_roots(const curve& C) {
    if (!C.base_is_q()) {
        std::vector<qrat> out;
        for (const auto& fk : C.factors_k)
            if (kdeg(fk) == 1) {
                // root = -c0; rational iff the representative is constant
                const qpoly& c0 = fk[0];
                if (c0.deg() <= 0) out.push_back(c0.is_zero() ? qrat(0) : -c0.coeff(0));
            }
        std::sort(out.begin(), out.end());
        return out;
    }
    return arith::rational_roots(C.pz);
}

}  // namespace selbound
