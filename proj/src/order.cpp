#include "selbound/order.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace selbound::numberfields {

using namespace selbound::arith;

std::vector<zint> algebra::mul(const std::vector<zint>& a, const std::vector<zint>& b) const {
    std::vector<zint> out(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < n; j++) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            zint c = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
            for (int k = 0; k < n; k++) {
                const zint& s = lmul[static_cast<size_t>(i)].at(j, k);
                if (s != 0) out[static_cast<size_t>(k)] += c * s;
            }
        }
    }
    return out;
}

std::vector<qrat> algebra::mul_q(const std::vector<qrat>& a, const std::vector<qrat>& b) const {
    std::vector<qrat> out(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) {
        if (a[static_cast<size_t>(i)] == 0) continue;
        for (int j = 0; j < n; j++) {
            if (b[static_cast<size_t>(j)] == 0) continue;
            qrat c = a[static_cast<size_t>(i)] * b[static_cast<size_t>(j)];
            for (int k = 0; k < n; k++) {
                const zint& s = lmul[static_cast<size_t>(i)].at(j, k);
                if (s != 0) out[static_cast<size_t>(k)] += c * qrat(s);
            }
        }
    }
    return out;
}

std::vector<zint> algebra::mul_mod(const std::vector<zint>& a, const std::vector<zint>& b, const zint& m) const {
    auto out = mul(a, b);
    for (auto& x : out) x = zmod(x, m);
    return out;
}

std::vector<zint> algebra::pow_mod(const std::vector<zint>& a, const zint& e, const zint& m) const {
    std::vector<zint> r = one, base = a;
    for (auto& x : r) x = zmod(x, m);
    for (auto& x : base) x = zmod(x, m);
    zint k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = mul_mod(r, base, m);
        base = mul_mod(base, base, m);
        k >>= 1;
    }
    return r;
}

zint algebra::trace_basis(int i) const {
    zint t = 0;
    for (int j = 0; j < n; j++) t += lmul[static_cast<size_t>(i)].at(j, j);
    return t;
}

algebra algebra_from_poly(const zpoly& f) {
    if (!f.is_monic() || f.deg() < 1) throw invalid_input_error("algebra_from_poly: need monic, degree >= 1");
    int n = f.deg();
    algebra A;
    A.n = n;
    A.one.assign(static_cast<size_t>(n), 0);
    A.one[0] = 1;
    // powers of x up to 2n-2 reduced mod f
    std::vector<std::vector<zint>> pw(static_cast<size_t>(2 * n - 1), std::vector<zint>(static_cast<size_t>(n), zint(0)));
    for (int i = 0; i < n; i++) pw[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (int i = n; i <= 2 * n - 2; i++) {
        // x^i = x * x^(i-1) reduced
        std::vector<zint> prev = pw[static_cast<size_t>(i - 1)];
        std::vector<zint> cur(static_cast<size_t>(n), zint(0));
        // multiply by x: shift, then reduce top coefficient via f
        zint top = prev[static_cast<size_t>(n - 1)];
        for (int k = n - 1; k >= 1; k--) cur[static_cast<size_t>(k)] = prev[static_cast<size_t>(k - 1)];
        cur[0] = 0;
        if (top != 0)
            for (int k = 0; k < n; k++) cur[static_cast<size_t>(k)] -= top * f.coeff(k);
        pw[static_cast<size_t>(i)] = cur;
    }
    A.lmul.assign(static_cast<size_t>(n), zmat(n, n));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++)
            for (int k = 0; k < n; k++) A.lmul[static_cast<size_t>(i)].at(j, k) = pw[static_cast<size_t>(i + j)][static_cast<size_t>(k)];
    return A;
}

algebra algebra_relative(const algebra& base, const std::vector<std::vector<zint>>& poly_coeffs) {
    // x monic of degree d over the base order; basis u_a x^b, index a + nb*b
    int nb = base.n;
    int d = static_cast<int>(poly_coeffs.size()) - 1;
    if (d < 1) throw invalid_input_error("algebra_relative: degree >= 1 required");
    for (const auto& c : poly_coeffs)
        if (static_cast<int>(c.size()) != nb) throw invalid_input_error("algebra_relative: bad coefficient length");
    // require monic: leading coeff must equal 1 in base coords
    {
        std::vector<zint> lead = poly_coeffs.back();
        if (lead != base.one) throw invalid_input_error("algebra_relative: polynomial not monic over base");
    }
    int n = nb * d;
    // elements: vector of d base-coordinate blocks
    using relvec = std::vector<std::vector<zint>>;
    auto mul_rel = [&](const relvec& a, const relvec& b) {
        // polynomial multiplication with base coefficients, then reduce by x^d = -sum poly_coeffs[b] x^b
        std::vector<std::vector<zint>> prod(static_cast<size_t>(2 * d - 1), std::vector<zint>(static_cast<size_t>(nb), zint(0)));
        for (int i = 0; i < d; i++)
            for (int j = 0; j < d; j++) {
                auto t = base.mul(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)]);
                for (int k = 0; k < nb; k++) prod[static_cast<size_t>(i + j)][static_cast<size_t>(k)] += t[static_cast<size_t>(k)];
            }
        for (int i = 2 * d - 2; i >= d; i--) {
            auto top = prod[static_cast<size_t>(i)];
            bool zero = true;
            for (const auto& x : top) if (x != 0) zero = false;
            if (zero) continue;
            for (auto& x : prod[static_cast<size_t>(i)]) x = 0;
            for (int b2 = 0; b2 < d; b2++) {
                auto t = base.mul(top, poly_coeffs[static_cast<size_t>(b2)]);
                for (int k = 0; k < nb; k++) prod[static_cast<size_t>(i - d + b2)][static_cast<size_t>(k)] -= t[static_cast<size_t>(k)];
            }
        }
        relvec out(static_cast<size_t>(d));
        for (int i = 0; i < d; i++) out[static_cast<size_t>(i)] = prod[static_cast<size_t>(i)];
        return out;
    };
    algebra A;
    A.n = n;
    A.one.assign(static_cast<size_t>(n), 0);
    for (int k = 0; k < nb; k++) A.one[static_cast<size_t>(k)] = base.one[static_cast<size_t>(k)];
    A.lmul.assign(static_cast<size_t>(n), zmat(n, n));
    auto unit = [&](int idx) {
        relvec v(static_cast<size_t>(d), std::vector<zint>(static_cast<size_t>(nb), zint(0)));
        v[static_cast<size_t>(idx / nb)][static_cast<size_t>(idx % nb)] = 1;
        return v;
    };
    for (int i = 0; i < n; i++) {
        relvec wi = unit(i);
        for (int j = 0; j < n; j++) {
            relvec wj = unit(j);
            relvec pr = mul_rel(wi, wj);
            for (int b2 = 0; b2 < d; b2++)
                for (int k = 0; k < nb; k++)
                    A.lmul[static_cast<size_t>(i)].at(j, b2 * nb + k) = pr[static_cast<size_t>(b2)][static_cast<size_t>(k)];
        }
    }
    return A;
}

// trace-form discriminant of the distinguished order
zint algebra_disc(const algebra& A) {
    int n = A.n;
    std::vector<zint> tb(static_cast<size_t>(n));
    for (int i = 0; i < n; i++) tb[static_cast<size_t>(i)] = A.trace_basis(i);
    zmat G(n, n);
    for (int i = 0; i < n; i++) {
        std::vector<zint> ei(static_cast<size_t>(n), zint(0));
        ei[static_cast<size_t>(i)] = 1;
        for (int j = 0; j < n; j++) {
            std::vector<zint> ej(static_cast<size_t>(n), zint(0));
            ej[static_cast<size_t>(j)] = 1;
            auto prod = A.mul(ei, ej);
            zint t = 0;
            for (int k = 0; k < n; k++) t += prod[static_cast<size_t>(k)] * tb[static_cast<size_t>(k)];
            G.at(i, j) = t;
        }
    }
    return det_bareiss(G);
}

namespace {

// Solve c * T = v where the rows of T are upper triangular (T[i][j] = 0 for
// j < i) with nonzero diagonal: column j only involves c_i for i <= j.
std::vector<qrat> solve_upper_left(const zmat& T, const std::vector<qrat>& v) {
    int n = T.rows;
    std::vector<qrat> c(static_cast<size_t>(n));
    for (int j = 0; j < n; j++) {
        qrat acc = v[static_cast<size_t>(j)];
        for (int i = 0; i < j; i++) acc -= c[static_cast<size_t>(i)] * qrat(T.at(i, j));
        c[static_cast<size_t>(j)] = acc / qrat(T.at(j, j));
    }
    return c;
}

}  // namespace

pmax_order p_maximal_order(const algebra& amb, const zint& p) {
    pmax_order O;
    O.A = amb;
    O.num = zmat::identity(amb.n);
    O.s = 0;
    O.index_vp = 0;
    int n = amb.n;
    zint disc = algebra_disc(amb);
    if (disc == 0) throw invalid_input_error("p_maximal_order: singular (non-etale) algebra");
    if (zvaluation(disc, p) <= 1) return O;  // already p-maximal

    int t_exp = 0;
    {
        zint q = 1;
        while (q < n) {
            q *= p;
            t_exp++;
        }
        if (t_exp == 0) t_exp = 1;
    }
    zint pt = zpow(p, static_cast<unsigned long>(t_exp));

    while (true) {
        const algebra& A = O.A;
        // radical of O/pO
        zmat Frob(n, n);
        for (int i = 0; i < n; i++) {
            std::vector<zint> ei(static_cast<size_t>(n), zint(0));
            ei[static_cast<size_t>(i)] = 1;
            auto im = A.pow_mod(ei, pt, p);
            for (int j = 0; j < n; j++) Frob.at(i, j) = im[static_cast<size_t>(j)];
        }
        zmat rad = kernel_mod_p(Frob, p);
        // J = pO + rad lifts
        zmat stack(n + rad.rows, n);
        for (int i = 0; i < n; i++) stack.at(i, i) = p;
        for (int i = 0; i < rad.rows; i++)
            for (int j = 0; j < n; j++) stack.at(n + i, j) = rad.at(i, j);
        zmat T = hnf(stack);
        if (T.rows != n) throw internal_inconsistency_error("round2: J not full rank");

        // multiplier condition: z*J subset of p*J
        zmat M(n, n * n);
        for (int i = 0; i < n; i++) {
            std::vector<zint> ei(static_cast<size_t>(n), zint(0));
            ei[static_cast<size_t>(i)] = 1;
            for (int k = 0; k < n; k++) {
                std::vector<zint> jk(static_cast<size_t>(n));
                for (int j = 0; j < n; j++) jk[static_cast<size_t>(j)] = T.at(k, j);
                auto prod = A.mul(ei, jk);
                std::vector<qrat> pv(static_cast<size_t>(n));
                for (int j = 0; j < n; j++) pv[static_cast<size_t>(j)] = qrat(prod[static_cast<size_t>(j)]);
                auto coords = solve_upper_left(T, pv);
                for (int j = 0; j < n; j++) {
                    const qrat& c = coords[static_cast<size_t>(j)];
                    if (c.get_den() != 1) throw internal_inconsistency_error("round2: z*j not in J");
                    M.at(i, k * n + j) = zmod(c.get_num(), p);
                }
            }
        }
        zmat U = kernel_mod_p(M, p);
        if (U.rows == 0) break;
        // new order basis rows: (p*I and U), divided by p
        zmat stack2(n + U.rows, n);
        for (int i = 0; i < n; i++) stack2.at(i, i) = p;
        for (int i = 0; i < U.rows; i++)
            for (int j = 0; j < n; j++) stack2.at(n + i, j) = U.at(i, j);
        zmat L = hnf(stack2);
        // growth?
        bool grew = false;
        for (int i = 0; i < n && !grew; i++)
            for (int j = 0; j < n && !grew; j++)
                if (L.at(i, j) != (i == j ? p : zint(0))) grew = true;
        if (!grew) break;

        // rebuild order: basis' = (1/p) L * basis
        zmat newnum = mul(L, O.num);
        long news = O.s + 1;
        // normalize common p power
        while (news > 0) {
            bool all = true;
            for (const auto& x : newnum.a)
                if (zmod(x, p) != 0) {
                    all = false;
                    break;
                }
            if (!all) break;
            for (auto& x : newnum.a) x = zdivexact(x, p);
            news--;
        }
        // new multiplication table via the current order's table
        algebra NA;
        NA.n = n;
        NA.lmul.assign(static_cast<size_t>(n), zmat(n, n));
        std::vector<std::vector<zint>> Lrows(static_cast<size_t>(n), std::vector<zint>(static_cast<size_t>(n)));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) Lrows[static_cast<size_t>(i)][static_cast<size_t>(j)] = L.at(i, j);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                auto prod = O.A.mul(Lrows[static_cast<size_t>(i)], Lrows[static_cast<size_t>(j)]);  // p^2 * (b'_i b'_j) in old coords
                std::vector<qrat> pv(static_cast<size_t>(n));
                for (int k = 0; k < n; k++) {
                    pv[static_cast<size_t>(k)] = qrat(prod[static_cast<size_t>(k)], p);
                    pv[static_cast<size_t>(k)].canonicalize();
                }
                auto coords = solve_upper_left(L, pv);  // c with c*L = prod/p
                for (int k = 0; k < n; k++) {
                    if (coords[static_cast<size_t>(k)].get_den() != 1)
                        throw internal_inconsistency_error("round2: products not integral in new order");
                    NA.lmul[static_cast<size_t>(i)].at(j, k) = coords[static_cast<size_t>(k)].get_num();
                }
            }
        // identity coords
        {
            std::vector<qrat> pv(static_cast<size_t>(n));
            for (int k = 0; k < n; k++) pv[static_cast<size_t>(k)] = qrat(O.A.one[static_cast<size_t>(k)] * p, 1);
            auto coords = solve_upper_left(L, pv);
            NA.one.assign(static_cast<size_t>(n), 0);
            for (int k = 0; k < n; k++) {
                if (coords[static_cast<size_t>(k)].get_den() != 1)
                    throw internal_inconsistency_error("round2: identity not integral");
                NA.one[static_cast<size_t>(k)] = coords[static_cast<size_t>(k)].get_num();
            }
        }
        O.A = NA;
        O.num = newnum;
        O.s = news;
    }
    // index valuation: [O : ambient] = p^(n*s) / det(num)
    zint dn = det_bareiss(O.num);
    O.index_vp = static_cast<long>(O.s) * n - zvaluation(dn, p);
    return O;
}

namespace {

struct etale_ctx {
    const algebra* B;  // order algebra (mod-p arithmetic through it)
    zint p;
    zmat rad_rref;             // reduced radical rows
    std::vector<int> rad_piv;  // pivot col per radical row
    std::vector<int> free_cols;

    int m() const { return static_cast<int>(free_cols.size()); }

    // project a B-vector to E-coords (reduce by radical, take free cols)
    std::vector<zint> project(std::vector<zint> v) const {
        for (auto& x : v) x = zmod(x, p);
        for (int r = 0; r < rad_rref.rows; r++) {
            int pc = rad_piv[static_cast<size_t>(r)];
            zint f = v[static_cast<size_t>(pc)];
            if (f == 0) continue;
            for (int j = 0; j < rad_rref.cols; j++)
                v[static_cast<size_t>(j)] = zmod(v[static_cast<size_t>(j)] - f * rad_rref.at(r, j), p);
        }
        std::vector<zint> e(free_cols.size());
        for (size_t i = 0; i < free_cols.size(); i++) e[i] = v[static_cast<size_t>(free_cols[i])];
        return e;
    }
    std::vector<zint> lift(const std::vector<zint>& e) const {
        std::vector<zint> v(static_cast<size_t>(rad_rref.cols), zint(0));
        for (size_t i = 0; i < free_cols.size(); i++) v[static_cast<size_t>(free_cols[i])] = e[i];
        return v;
    }
    std::vector<zint> mulE(const std::vector<zint>& a, const std::vector<zint>& b) const {
        return project(B->mul(lift(a), lift(b)));
    }
    std::vector<zint> oneE() const {
        std::vector<zint> one = B->one;
        return project(one);
    }
};

struct live_comp {
    zmat basis;              // rows: E-coords
    std::vector<zint> id;    // E-coords
    std::vector<zint> gen;   // set when certified field
    zpoly minpoly;           // of gen, irreducible, degree == basis.rows
};

// minimal polynomial of z within the span of comp.basis (unital algebra with comp.id)
zpoly minpoly_in_comp(const etale_ctx& E, const live_comp& C, const std::vector<zint>& z) {
    int dim = C.basis.rows, m = E.m();
    // power vectors: id, z, z^2, ... find first dependence
    std::vector<std::vector<zint>> pows;
    pows.push_back(C.id);
    std::vector<zint> cur = C.id;
    for (int k = 1; k <= dim; k++) {
        cur = E.mulE(cur, z);
        pows.push_back(cur);
    }
    for (int k = 1; k <= dim; k++) {
        // solve c_0..c_{k-1}: sum c_i pow_i = pow_k
        zmat A(k, m);
        for (int i = 0; i < k; i++)
            for (int j = 0; j < m; j++) A.at(i, j) = pows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        std::vector<zint> b(pows[static_cast<size_t>(k)]);
        std::vector<zint> x;
        if (solve_left_mod_p(A, b, E.p, x)) {
            std::vector<zint> mc(static_cast<size_t>(k) + 1);
            for (int i = 0; i < k; i++) mc[static_cast<size_t>(i)] = zmod(-x[static_cast<size_t>(i)], E.p);
            mc[static_cast<size_t>(k)] = 1;
            return zpoly(std::move(mc));
        }
    }
    throw internal_inconsistency_error("minpoly_in_comp: no dependence found");
}

// row space basis mod p
zmat rowspace_mod_p(const zmat& A, const zint& p) {
    zmat R = A;
    for (auto& x : R.a) x = zmod(x, p);
    int r = 0;
    for (int col = 0; col < R.cols && r < R.rows; col++) {
        int piv = -1;
        for (int i = r; i < R.rows; i++)
            if (R.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < R.cols; j++) std::swap(R.at(piv, j), R.at(r, j));
        zint inv = zinvmod(R.at(r, col), p);
        for (int j = 0; j < R.cols; j++) R.at(r, j) = zmod(R.at(r, j) * inv, p);
        for (int i = 0; i < R.rows; i++) {
            if (i == r || R.at(i, col) == 0) continue;
            zint f = R.at(i, col);
            for (int j = 0; j < R.cols; j++) R.at(i, j) = zmod(R.at(i, j) - f * R.at(r, j), p);
        }
        r++;
    }
    zmat out(r, R.cols);
    for (int i = 0; i < r; i++)
        for (int j = 0; j < R.cols; j++) out.at(i, j) = R.at(i, j);
    return out;
}

// evaluate integer polynomial at algebra element (inside component: unit = id)
std::vector<zint> poly_at(const etale_ctx& E, const live_comp& C, const zpoly& g, const std::vector<zint>& z) {
    std::vector<zint> acc(static_cast<size_t>(E.m()), zint(0));
    for (int i = g.deg(); i >= 0; i--) {
        acc = E.mulE(acc, z);
        zint c = zmod(g.coeff(i), E.p);
        if (c != 0)
            for (int j = 0; j < E.m(); j++)
                acc[static_cast<size_t>(j)] = zmod(acc[static_cast<size_t>(j)] + c * C.id[static_cast<size_t>(j)], E.p);
    }
    return acc;
}

}  // namespace

split_result split_at_p(const algebra& amb, const zint& p, long N) {
    split_result S;
    S.p = p;
    S.N = N;
    S.pN = zpow(p, static_cast<unsigned long>(N));
    S.amb = amb;
    S.O = p_maximal_order(amb, p);
    const algebra& A = S.O.A;
    int n = A.n;

    // radical of O/pO
    int t_exp = 0;
    {
        zint q = 1;
        while (q < n) {
            q *= p;
            t_exp++;
        }
        if (t_exp == 0) t_exp = 1;
    }
    zint pt = zpow(p, static_cast<unsigned long>(t_exp));
    zmat Frob(n, n);
    for (int i = 0; i < n; i++) {
        std::vector<zint> ei(static_cast<size_t>(n), zint(0));
        ei[static_cast<size_t>(i)] = 1;
        auto im = A.pow_mod(ei, pt, p);
        for (int j = 0; j < n; j++) Frob.at(i, j) = im[static_cast<size_t>(j)];
    }
    zmat rad = rowspace_mod_p(kernel_mod_p(Frob, p), p);

    etale_ctx E;
    E.B = &A;
    E.p = p;
    E.rad_rref = rad;
    E.rad_piv.clear();
    {
        std::vector<bool> is_piv(static_cast<size_t>(n), false);
        for (int r = 0; r < rad.rows; r++) {
            int pc = -1;
            for (int j = 0; j < n; j++)
                if (rad.at(r, j) != 0) {
                    pc = j;
                    break;
                }
            E.rad_piv.push_back(pc);
            is_piv[static_cast<size_t>(pc)] = true;
        }
        for (int j = 0; j < n; j++)
            if (!is_piv[static_cast<size_t>(j)]) E.free_cols.push_back(j);
    }
    int m = E.m();

    // split E = B/rad into fields
    std::vector<live_comp> done;
    std::vector<live_comp> work;
    {
        live_comp all;
        zmat I(m, m);
        for (int i = 0; i < m; i++) I.at(i, i) = 1;
        all.basis = I;
        all.id = E.oneE();
        work.push_back(all);
    }
    while (!work.empty()) {
        live_comp C = work.back();
        work.pop_back();
        int dim = C.basis.rows;
        // candidate generators
        bool resolved = false;
        std::uint64_t seed = 0x51ed270b1f0c9d2bull ^ (static_cast<std::uint64_t>(dim) << 32) ^ hash_zint(p);
        detrng rng(seed);
        for (int trial = 0; trial < 2000 && !resolved; trial++) {
            std::vector<zint> z(static_cast<size_t>(m), zint(0));
            if (trial < dim) {
                for (int j = 0; j < m; j++) z[static_cast<size_t>(j)] = C.basis.at(trial, j);
            } else if (trial < dim * dim + dim) {
                int a = (trial - dim) / dim, b = (trial - dim) % dim;
                for (int j = 0; j < m; j++)
                    z[static_cast<size_t>(j)] = zmod(C.basis.at(a, j) + C.basis.at(b, j), p);
            } else {
                for (int i = 0; i < dim; i++) {
                    zint c = rng.zbelow(p);
                    for (int j = 0; j < m; j++)
                        z[static_cast<size_t>(j)] = zmod(z[static_cast<size_t>(j)] + c * C.basis.at(i, j), p);
                }
            }
            zpoly mz = minpoly_in_comp(E, C, z);
            if (mz.deg() == 0) continue;
            fq_ctx Fp = make_fq(p, 1);
            auto facs = fqp_factor(Fp, fqp_from_zpoly(Fp, mz));
            for (const auto& fc : facs)
                if (fc.mult > 1) throw internal_inconsistency_error("etale split: minpoly not squarefree");
            if (facs.size() == 1) {
                if (mz.deg() == dim) {
                    C.gen = z;
                    C.minpoly = mz;
                    done.push_back(C);
                    resolved = true;
                }
                continue;  // generates a proper subfield; try another candidate
            }
            // CRT idempotents split the component
            for (const auto& fc : facs) {
                zpoly mj = fqp_to_zpoly(Fp, fc.poly);
                // h = mz / mj, u = h^{-1} mod mj, idem = (u*h)(z)
                fqpoly h, r0;
                fqp_divrem(Fp, fqp_from_zpoly(Fp, mz), fqp_from_zpoly(Fp, mj), h, r0);
                if (!r0.is_zero()) throw internal_inconsistency_error("etale split: factor does not divide");
                // invert h mod mj
                fqpoly s, t;
                {
                    // extended euclid
                    fqpoly a0 = fqp_from_zpoly(Fp, mj), b0 = h;
                    fqpoly r_0 = a0, r_1 = b0;
                    fqpoly s0 = fqp_one(Fp), s1{};
                    fqpoly t0{}, t1 = fqp_one(Fp);
                    while (!r_1.is_zero()) {
                        fqpoly qq, rr;
                        fqp_divrem(Fp, r_0, r_1, qq, rr);
                        fqpoly s2 = fqp_sub(Fp, s0, fqp_mul(Fp, qq, s1));
                        fqpoly t2 = fqp_sub(Fp, t0, fqp_mul(Fp, qq, t1));
                        r_0 = r_1;
                        r_1 = rr;
                        s0 = s1;
                        s1 = s2;
                        t0 = t1;
                        t1 = t2;
                    }
                    if (r_0.deg() != 0) throw internal_inconsistency_error("etale split: factors not coprime");
                    t = fqp_mul_scalar(Fp, fq_inv(Fp, r_0.lc()), t0);  // t*h == 1 mod mj
                }
                fqpoly uh = fqp_mul(Fp, t, h);
                // reduce uh mod mz and evaluate at z
                fqpoly qq, uhred;
                fqp_divrem(Fp, uh, fqp_from_zpoly(Fp, mz), qq, uhred);
                std::vector<zint> idem = poly_at(E, C, fqp_to_zpoly(Fp, uhred), z);
                // new component: basis = rowspace(idem * C.basis rows), id = idem
                zmat nb(dim, m);
                for (int i = 0; i < dim; i++) {
                    std::vector<zint> row(static_cast<size_t>(m));
                    for (int j = 0; j < m; j++) row[static_cast<size_t>(j)] = C.basis.at(i, j);
                    auto pr = E.mulE(idem, row);
                    for (int j = 0; j < m; j++) nb.at(i, j) = pr[static_cast<size_t>(j)];
                }
                live_comp NC;
                NC.basis = rowspace_mod_p(nb, p);
                NC.id = idem;
                work.push_back(NC);
            }
            resolved = true;
        }
        if (!resolved) throw internal_inconsistency_error("etale split: no separating element found");
    }

    // deterministic component order: (fdeg, generator minpoly, idempotent coords)
    std::sort(done.begin(), done.end(), [](const live_comp& a, const live_comp& b) {
        if (a.basis.rows != b.basis.rows) return a.basis.rows < b.basis.rows;
        for (int i = std::max(a.minpoly.deg(), b.minpoly.deg()); i >= 0; i--) {
            zint ca = a.minpoly.coeff(i), cb = b.minpoly.coeff(i);
            if (ca != cb) return ca < cb;
        }
        return a.id < b.id;
    });

    // build residue components with p^N idempotents
    for (const auto& C : done) {
        residue_component rc;
        rc.fdeg = C.basis.rows;
        // the residue field is modeled on the component's own generator:
        // modulus = minpoly(gen); coordinates w.r.t. powers of gen are then
        // exactly the field coordinates (no table lookup, no root search)
        if (rc.fdeg == 1) {
            rc.k = make_fq(p, 1);
        } else {
            rc.k.p = p;
            rc.k.k = rc.fdeg;
            rc.k.modulus = C.minpoly;
        }
        int fd = rc.fdeg;
        zmat powmat(fd, m);
        {
            std::vector<zint> cur = C.id;
            for (int k2 = 0; k2 < fd; k2++) {
                for (int j = 0; j < m; j++) powmat.at(k2, j) = cur[static_cast<size_t>(j)];
                cur = E.mulE(cur, C.gen);
            }
        }
        rc.res_map = zmat(n, fd);
        for (int l = 0; l < n; l++) {
            std::vector<zint> wl(static_cast<size_t>(n), zint(0));
            wl[static_cast<size_t>(l)] = 1;
            auto el = E.project(wl);
            auto proj = E.mulE(C.id, el);
            std::vector<zint> coords;
            zmat Pm = powmat;
            if (!solve_left_mod_p(Pm, proj, p, coords))
                throw internal_inconsistency_error("residue map: projection outside component");
            for (int k2 = 0; k2 < fd; k2++) rc.res_map.at(l, k2) = coords[static_cast<size_t>(k2)];
        }

        // idempotent lift: E-coords -> B-coords -> mod p^N
        std::vector<zint> e = E.lift(C.id);
        auto idem_iterate = [&](const zint& modulus) {
            for (int it = 0; it < 200; it++) {
                auto e2 = A.mul_mod(e, e, modulus);
                bool ok = true;
                for (int j = 0; j < n; j++)
                    if (zmod(e2[static_cast<size_t>(j)] - e[static_cast<size_t>(j)], modulus) != 0) ok = false;
                if (ok) return;
                // e <- 3e^2 - 2e^3
                auto e3 = A.mul_mod(e2, e, modulus);
                for (int j = 0; j < n; j++)
                    e[static_cast<size_t>(j)] = zmod(3 * e2[static_cast<size_t>(j)] - 2 * e3[static_cast<size_t>(j)], modulus);
            }
            throw internal_inconsistency_error("idempotent lift did not converge");
        };
        idem_iterate(S.pN);
        rc.idem = e;

        rc.dim = rc.fdeg;  // provisional; the basis extraction below fixes it
        // component basis mod p^N with unit pivots
        zmat gens(n, n);
        for (int j = 0; j < n; j++) {
            std::vector<zint> wj(static_cast<size_t>(n), zint(0));
            wj[static_cast<size_t>(j)] = 1;
            auto pr = A.mul_mod(e, wj, S.pN);
            for (int k2 = 0; k2 < n; k2++) gens.at(j, k2) = pr[static_cast<size_t>(k2)];
        }
        // unit-pivot elimination
        std::vector<int> pivots;
        int r = 0;
        for (int col = 0; col < n && r < n; col++) {
            int piv = -1;
            for (int i = r; i < n; i++)
                if (zmod(gens.at(i, col), p) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            if (piv != r)
                for (int j = 0; j < n; j++) std::swap(gens.at(piv, j), gens.at(r, j));
            zint inv = zinvmod(gens.at(r, col), S.pN);
            for (int j = 0; j < n; j++) gens.at(r, j) = zmod(gens.at(r, j) * inv, S.pN);
            for (int i = 0; i < n; i++) {
                if (i == r) continue;
                zint f = gens.at(i, col);
                if (f == 0) continue;
                for (int j = 0; j < n; j++) gens.at(i, j) = zmod(gens.at(i, j) - f * gens.at(r, j), S.pN);
            }
            pivots.push_back(col);
            r++;
        }
        // remaining rows must vanish mod p^N
        for (int i = r; i < n; i++)
            for (int j = 0; j < n; j++)
                if (gens.at(i, j) != 0) throw internal_inconsistency_error("component basis: non-free module");
        rc.dim = r;
        rc.e = r / rc.fdeg;
        if (rc.e * rc.fdeg != r) throw internal_inconsistency_error("component: fdeg does not divide dim");
        rc.comp_basis = zmat(r, n);
        for (int i = 0; i < r; i++)
            for (int j = 0; j < n; j++) rc.comp_basis.at(i, j) = gens.at(i, j);
        rc.pivots = pivots;
        S.comps.push_back(std::move(rc));
    }

    // sanity: dims add up
    int total = 0;
    for (const auto& c : S.comps) total += c.dim;
    if (total != n) throw internal_inconsistency_error("split: component dimensions do not sum to n");
    // deterministic order for reports: by (dim, fdeg, idempotent coords)
    std::sort(S.comps.begin(), S.comps.end(), [](const residue_component& a, const residue_component& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        if (a.fdeg != b.fdeg) return a.fdeg < b.fdeg;
        return a.idem < b.idem;
    });
    return S;
}

std::vector<zint> split_result::to_order_coords_mod(const std::vector<qrat>& amb_el) const {
    int n = amb.n;
    // solve x * (num / p^s) = amb_el  =>  x * num = p^s * amb_el
    std::vector<qrat> rhs(static_cast<size_t>(n));
    zint ps = zpow(p, static_cast<unsigned long>(O.s));
    for (int j = 0; j < n; j++) rhs[static_cast<size_t>(j)] = amb_el[static_cast<size_t>(j)] * qrat(ps);
    auto x = solve_q(transpose(O.num), rhs);
    std::vector<zint> out(static_cast<size_t>(n));
    for (int j = 0; j < n; j++) {
        const qrat& c = x[static_cast<size_t>(j)];
        zint den = c.get_den();
        if (zmod(den, p) == 0) throw invalid_input_error("element not p-integral in maximal order");
        out[static_cast<size_t>(j)] = zmod(c.get_num() * zinvmod(den, pN), pN);
    }
    return out;
}

fqelem split_result::residue(int ci, const std::vector<zint>& o_coords) const {
    const auto& rc = comps[static_cast<size_t>(ci)];
    std::vector<zint> acc(static_cast<size_t>(rc.k.k), zint(0));
    for (int l = 0; l < amb.n; l++) {
        zint c = zmod(o_coords[static_cast<size_t>(l)], p);
        if (c == 0) continue;
        for (int j = 0; j < rc.k.k; j++)
            acc[static_cast<size_t>(j)] = zmod(acc[static_cast<size_t>(j)] + c * rc.res_map.at(l, j), p);
    }
    zpoly rep(std::move(acc));
    return arith::fq_make(rc.k, rep);
}

namespace {

zmat mult_matrix_on_component(const split_result& S, int ci, const std::vector<zint>& el) {
    const auto& rc = S.comps[static_cast<size_t>(ci)];
    int dim = rc.dim, n = S.amb.n;
    zmat M(dim, dim);
    for (int i = 0; i < dim; i++) {
        std::vector<zint> row(static_cast<size_t>(n));
        for (int j = 0; j < n; j++) row[static_cast<size_t>(j)] = rc.comp_basis.at(i, j);
        auto pr = S.O.A.mul_mod(el, row, S.pN);
        // coordinates w.r.t. comp_basis via unit pivots
        for (int k = 0; k < dim; k++) {
            zint c = pr[static_cast<size_t>(rc.pivots[static_cast<size_t>(k)])];
            M.at(i, k) = c;
            if (c != 0)
                for (int j = 0; j < n; j++)
                    pr[static_cast<size_t>(j)] = zmod(pr[static_cast<size_t>(j)] - c * rc.comp_basis.at(k, j), S.pN);
        }
        for (int j = 0; j < n; j++)
            if (pr[static_cast<size_t>(j)] != 0)
                throw internal_inconsistency_error("component coords: residual after pivot solve");
    }
    return M;
}

}  // namespace

zpoly component_charpoly(const split_result& S, int ci, const std::vector<zint>& el) {
    zmat M = mult_matrix_on_component(S, ci, el);
    for (auto& x : M.a) x = zmods(x, S.pN);
    auto cp = charpoly(M);
    std::vector<zint> c(cp.size());
    for (size_t i = 0; i < cp.size(); i++) c[i] = zmods(cp[i], S.pN);
    c.back() = 1;
    return zpoly(std::move(c));
}

long component_valuation(const split_result& S, int ci, const std::vector<zint>& el) {
    zmat M = mult_matrix_on_component(S, ci, el);
    for (auto& x : M.a) x = zmods(x, S.pN);
    zint d = det_bareiss(M);
    d = zmods(d, S.pN);
    if (d == 0) {
        // zero divisor to working precision
        bool allzero = true;
        const auto& rc = S.comps[static_cast<size_t>(ci)];
        auto pr = S.O.A.mul_mod(el, rc.idem, S.pN);
        for (const auto& x : pr)
            if (x != 0) allzero = false;
        return allzero ? std::numeric_limits<long>::max() : -1;
    }
    long v = zvaluation(d, S.p);
    if (v >= S.N) return -1;
    const auto& rc = S.comps[static_cast<size_t>(ci)];
    if (v % rc.fdeg != 0) throw internal_inconsistency_error("component valuation: not divisible by f");
    return v / rc.fdeg;
}

long precision_cap() {
    static long cap = [] {
        const char* v = std::getenv("SELBOUND_PRECISION_CAP");
        long c = v ? std::atol(v) : 0;
        return c > 0 ? c : (1L << 14);
    }();
    return cap;
}

long default_precision(long disc_vp) {
    long N = 2 * disc_vp + 20;
    if (N > precision_cap()) N = precision_cap();
    return N;
}

}  // namespace selbound::numberfields
