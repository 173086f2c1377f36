#include "selbound/localfield.hpp"

#include <limits>

namespace selbound::localfields {

using namespace selbound::arith;
using numberfields::algebra;
using numberfields::algebra_from_poly;
using numberfields::algebra_relative;
using numberfields::component_charpoly;
using numberfields::component_valuation;
using numberfields::split_at_p;

namespace {

zpoly reduce_tpoly(const zpoly& rep, const zpoly& u) {
    if (rep.deg() < u.deg()) return rep;
    zpoly q, r;
    zdivrem_monic(rep, u, q, r);
    return r;
}

void realize(local_field& F) {
    if (F.e0 == 1 && F.f0 == 1) {
        F.amb = algebra_from_poly(zpoly({zint(0), zint(1)}));  // Q[t]/(t)
    } else if (F.e0 == 1) {
        F.amb = algebra_from_poly(F.unram_modulus);
    } else {
        algebra base = F.f0 == 1 ? algebra_from_poly(zpoly({zint(0), zint(1)})) : algebra_from_poly(F.unram_modulus);
        std::vector<std::vector<zint>> coeffs;
        for (const auto& c : F.eis) {
            zpoly r = reduce_tpoly(c, F.f0 == 1 ? zpoly({zint(0), zint(1)}) : F.unram_modulus);
            std::vector<zint> v(static_cast<size_t>(base.n), zint(0));
            for (int i = 0; i <= r.deg(); i++) v[static_cast<size_t>(i)] = r.coeff(i);
            coeffs.push_back(std::move(v));
        }
        F.amb = algebra_relative(base, coeffs);
    }
    long useN = std::max<long>(F.N, 4);
    F.S = split_at_p(F.amb, F.p, useN);
    if (F.S.comps.size() != 1) throw invalid_input_error("local_field: presentation does not define a single completion");
    const auto& c = F.S.comps[0];
    if (c.fdeg != F.f0 || c.e != F.e0)
        throw invalid_input_error("local_field: (e,f) of the presentation do not match the tower shape");
    F.k = c.k;
}

}  // namespace

local_field make_qp(const zint& p, long N) {
    local_field F;
    F.p = p;
    F.f0 = 1;
    F.e0 = 1;
    F.N = N;
    F.unram_modulus = zpoly({zint(0), zint(1)});
    realize(F);
    return F;
}

local_field make_unramified(const zint& p, int f0, long N) {
    local_field F;
    F.p = p;
    F.f0 = f0;
    F.e0 = 1;
    F.N = N;
    fq_ctx k = make_fq(p, f0);
    F.unram_modulus = k.modulus;  // integer lift with coefficients in [0,p)
    if (f0 == 1) F.unram_modulus = zpoly({zint(0), zint(1)});
    realize(F);
    return F;
}

local_field make_eisenstein(const zint& p, int f0, const std::vector<zpoly>& eis_coeffs, long N) {
    local_field F;
    F.p = p;
    F.f0 = f0;
    F.e0 = static_cast<int>(eis_coeffs.size()) - 1;
    F.N = N;
    fq_ctx k = make_fq(p, f0);
    F.unram_modulus = f0 == 1 ? zpoly({zint(0), zint(1)}) : k.modulus;
    F.eis = eis_coeffs;
    if (F.e0 < 2) throw invalid_input_error("make_eisenstein: degree >= 2 required");
    realize(F);
    // Eisenstein validation: v(c_0) = e0 exactly and v(c_i) >= e0 for 0 < i < e0
    // (valuations measured in the ramified field, v(p) = e0)
    for (int i = 0; i < F.e0; i++) {
        local_elem ci = elem_from_tpoly(F, eis_coeffs[static_cast<size_t>(i)]);
        long v = elem_valuation(F, ci);
        if (i == 0 && v != F.e0) throw invalid_input_error("make_eisenstein: constant term not of valuation 1 in p");
        if (v < F.e0) throw invalid_input_error("make_eisenstein: coefficient not divisible by p");
    }
    return F;
}

local_elem elem_from_int(const local_field& F, const zint& a) {
    std::vector<qrat> amb(static_cast<size_t>(F.amb.n), qrat(0));
    for (int i = 0; i < F.amb.n; i++) amb[static_cast<size_t>(i)] = qrat(a * F.amb.one[static_cast<size_t>(i)]);
    return {F.S.to_order_coords_mod(amb)};
}

local_elem elem_from_tpoly(const local_field& F, const zpoly& rep) {
    zpoly u = F.f0 == 1 ? zpoly({zint(0), zint(1)}) : F.unram_modulus;
    zpoly r = reduce_tpoly(rep, u);
    std::vector<qrat> amb(static_cast<size_t>(F.amb.n), qrat(0));
    // basis index of t^i is i (the unramified block sits first)
    if (F.f0 == 1) {
        // t == 0 in this presentation; only the constant term survives
        if (r.deg() >= 1) throw invalid_input_error("elem_from_tpoly: field has trivial unramified part");
        amb[0] = qrat(r.coeff(0));
    } else {
        for (int i = 0; i <= r.deg(); i++) amb[static_cast<size_t>(i)] = qrat(r.coeff(i));
    }
    return {F.S.to_order_coords_mod(amb)};
}

local_elem elem_gen_t(const local_field& F) {
    return elem_from_tpoly(F, zpoly({zint(0), zint(1)}));
}

local_elem elem_gen_pi(const local_field& F) {
    if (F.e0 == 1) return elem_from_int(F, F.p);
    std::vector<qrat> amb(static_cast<size_t>(F.amb.n), qrat(0));
    amb[static_cast<size_t>(F.f0)] = 1;  // index of pi = (a=0, b=1)
    return {F.S.to_order_coords_mod(amb)};
}

local_elem elem_add(const local_field& F, const local_elem& a, const local_elem& b) {
    std::vector<zint> c(a.coords.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = zmod(a.coords[i] + b.coords[i], F.S.pN);
    return {std::move(c)};
}

local_elem elem_sub(const local_field& F, const local_elem& a, const local_elem& b) {
    std::vector<zint> c(a.coords.size());
    for (size_t i = 0; i < c.size(); i++) c[i] = zmod(a.coords[i] - b.coords[i], F.S.pN);
    return {std::move(c)};
}

local_elem elem_mul(const local_field& F, const local_elem& a, const local_elem& b) {
    return {F.S.O.A.mul_mod(a.coords, b.coords, F.S.pN)};
}

long elem_valuation(const local_field& F, const local_elem& a) {
    long v = component_valuation(F.S, 0, a.coords);
    if (v == -1) throw precision_error("elem_valuation: not certifiable at current precision");
    return v;
}

fqelem elem_residue(const local_field& F, const local_elem& a) { return F.S.residue(0, a.coords); }

local_elem elem_lift_residue(const local_field& F, const fqelem& r) {
    const auto& rc = F.S.comps[0];
    std::vector<zint> rhs(static_cast<size_t>(rc.k.k), zint(0));
    for (size_t i = 0; i < r.c.size(); i++) rhs[i] = r.c[i];
    std::vector<zint> x;
    if (!solve_left_mod_p(rc.res_map, rhs, F.p, x))
        throw internal_inconsistency_error("elem_lift_residue: residue map not surjective");
    return {x};
}

namespace {

// ---- generic division-free resultant over Z[t]/(u) ----

struct tring {
    zpoly u;  // monic modulus; deg 1 means plain integers
    using el = zpoly;
    el reduce(const zpoly& a) const { return reduce_tpoly(a, u); }
    el mul(const el& a, const el& b) const { return reduce(a * b); }
    el add(const el& a, const el& b) const { return a + b; }
    el sub(const el& a, const el& b) const { return a - b; }
};

// Berkowitz determinant over the commutative ring R (division-free).
tring::el det_berkowitz(const tring& R, std::vector<std::vector<tring::el>>& A) {
    int n = static_cast<int>(A.size());
    if (n == 0) return zpoly({zint(1)});
    std::vector<tring::el> pvec{zpoly({zint(1)})};
    for (int kk = 1; kk <= n; kk++) {
        std::vector<tring::el> q(static_cast<size_t>(kk) + 1, zpoly{});
        q[0] = zpoly({zint(1)});
        q[1] = zpoly{} - A[static_cast<size_t>(kk - 1)][static_cast<size_t>(kk - 1)];
        if (kk >= 2) {
            int m = kk - 1;
            std::vector<tring::el> v(static_cast<size_t>(m));
            for (int i = 0; i < m; i++) v[static_cast<size_t>(i)] = A[static_cast<size_t>(i)][static_cast<size_t>(kk - 1)];
            for (int j = 2; j <= kk; j++) {
                tring::el dot{};
                for (int i = 0; i < m; i++)
                    dot = R.add(dot, R.mul(A[static_cast<size_t>(kk - 1)][static_cast<size_t>(i)], v[static_cast<size_t>(i)]));
                q[static_cast<size_t>(j)] = zpoly{} - dot;
                if (j < kk) {
                    std::vector<tring::el> nv(static_cast<size_t>(m));
                    for (int i = 0; i < m; i++) {
                        tring::el s{};
                        for (int l = 0; l < m; l++)
                            s = R.add(s, R.mul(A[static_cast<size_t>(i)][static_cast<size_t>(l)], v[static_cast<size_t>(l)]));
                        nv[static_cast<size_t>(i)] = s;
                    }
                    v = std::move(nv);
                }
            }
        }
        std::vector<tring::el> np(static_cast<size_t>(kk) + 1, zpoly{});
        for (size_t i = 0; i < np.size(); i++) {
            tring::el s{};
            for (size_t j = 0; j <= i && j < q.size(); j++)
                if (i - j < pvec.size()) s = R.add(s, R.mul(q[j], pvec[i - j]));
            np[i] = s;
        }
        pvec = std::move(np);
    }
    // det = (-1)^n * charpoly(0) = (-1)^n * p[n]
    tring::el c = pvec.back();
    if (n % 2 == 1) c = zpoly{} - c;
    return c;
}

tring::el tring_resultant(const tring& R, const std::vector<zpoly>& f, const std::vector<zpoly>& g) {
    int df = static_cast<int>(f.size()) - 1, dg = static_cast<int>(g.size()) - 1;
    int n = df + dg;
    std::vector<std::vector<tring::el>> M(static_cast<size_t>(n), std::vector<tring::el>(static_cast<size_t>(n), zpoly{}));
    for (int i = 0; i < dg; i++)
        for (int j = 0; j <= df; j++) M[static_cast<size_t>(i)][static_cast<size_t>(i + j)] = f[static_cast<size_t>(df - j)];
    for (int i = 0; i < df; i++)
        for (int j = 0; j <= dg; j++)
            M[static_cast<size_t>(dg + i)][static_cast<size_t>(i + j)] = g[static_cast<size_t>(dg - j)];
    return det_berkowitz(R, M);
}

std::vector<zpoly> tpoly_derivative(const std::vector<zpoly>& coeffs) {
    std::vector<zpoly> d;
    for (size_t i = 1; i < coeffs.size(); i++) d.push_back(zint(static_cast<long>(i)) * coeffs[i]);
    return d;
}

}  // namespace

long disc_valuation(const std::vector<zpoly>& coeffs, const local_field& F) {
    tring R;
    R.u = F.f0 == 1 ? zpoly({zint(0), zint(1)}) : F.unram_modulus;
    std::vector<zpoly> red;
    for (const auto& c : coeffs) red.push_back(R.reduce(c));
    zpoly disc_t = tring_resultant(R, red, tpoly_derivative(red));
    if (disc_t.is_zero()) throw invalid_input_error("disc_valuation: polynomial not squarefree over the completion");
    long v;
    if (F.f0 == 1) {
        v = zvaluation(disc_t.coeff(0), F.p);
    } else {
        // v_p of an element of the inert completion: v_p(Norm)/f0
        zint nrm = resultant(R.u, disc_t);
        v = zvaluation(nrm, F.p) ;
        if (v % F.f0 != 0) throw internal_inconsistency_error("disc_valuation: norm valuation not divisible by f0");
        v /= F.f0;
    }
    return v * F.e0;  // normalize to v(pi) = 1
}

namespace {

// coefficients as reduced t-polys -> coordinate vectors over the base order
std::vector<std::vector<zint>> coeffs_to_base_coords(const std::vector<zpoly>& coeffs, const zpoly& u, int nb) {
    std::vector<std::vector<zint>> out;
    for (const auto& c : coeffs) {
        zpoly r = reduce_tpoly(c, u);
        std::vector<zint> v(static_cast<size_t>(nb), zint(0));
        for (int i = 0; i <= r.deg(); i++) v[static_cast<size_t>(i)] = r.coeff(i);
        out.push_back(std::move(v));
    }
    return out;
}

// residue of an integer t-polynomial in F.k
fqelem tpoly_residue(const local_field& F, const zpoly& c) {
    return elem_residue(F, elem_from_tpoly(F, c));
}

// Multifactor linear Hensel lift over an unramified base (pi = p):
// seeds are the distinct irreducible residue factors; all multiplicity 1.
std::vector<std::vector<local_elem>> hensel_lift_unramified(const local_field& F, const std::vector<zpoly>& coeffs,
                                                            const std::vector<fqpoly>& seeds) {
    const fq_ctx& k = F.k;
    long N = F.S.N;
    zint pN = F.S.pN;
    int r = static_cast<int>(seeds.size());
    int d = static_cast<int>(coeffs.size()) - 1;

    // Bezout data: b_i * prod_{l != i} seeds_l == 1 mod seeds_i
    std::vector<fqpoly> bez(static_cast<size_t>(r));
    for (int i = 0; i < r; i++) {
        fqpoly prod = fqp_one(k);
        for (int l = 0; l < r; l++)
            if (l != i) prod = fqp_mul(k, prod, seeds[static_cast<size_t>(l)]);
        // invert prod mod seeds_i by extended euclid
        fqpoly r0 = seeds[static_cast<size_t>(i)], r1;
        {
            fqpoly q, rm;
            fqp_divrem(k, prod, seeds[static_cast<size_t>(i)], q, rm);
            r1 = rm;
        }
        fqpoly s0{}, s1 = fqp_one(k);
        while (!r1.is_zero()) {
            fqpoly q, rm;
            fqp_divrem(k, r0, r1, q, rm);
            fqpoly s2 = fqp_sub(k, s0, fqp_mul(k, q, s1));
            r0 = r1;
            r1 = rm;
            s0 = s1;
            s1 = s2;
        }
        if (r0.deg() != 0) throw internal_inconsistency_error("hensel: residue factors not coprime");
        fqpoly inv = fqp_mul_scalar(k, fq_inv(k, r0.lc()), s0);
        fqpoly q, rm;
        fqp_divrem(k, inv, seeds[static_cast<size_t>(i)], q, rm);
        bez[static_cast<size_t>(i)] = rm;
    }

    // working factors: vectors of local_elem, monic
    std::vector<std::vector<local_elem>> g(static_cast<size_t>(r));
    for (int i = 0; i < r; i++) {
        const fqpoly& s = seeds[static_cast<size_t>(i)];
        for (int j = 0; j <= s.deg(); j++)
            g[static_cast<size_t>(i)].push_back(
                elem_lift_residue(F, j < static_cast<int>(s.c.size()) ? s.c[static_cast<size_t>(j)] : arith::fq_zero()));
    }
    std::vector<local_elem> target;
    for (const auto& c : coeffs) target.push_back(elem_from_tpoly(F, c));

    auto poly_mul_elems = [&](const std::vector<local_elem>& a, const std::vector<local_elem>& b) {
        std::vector<local_elem> out(a.size() + b.size() - 1, local_elem{std::vector<zint>(static_cast<size_t>(F.amb.n), zint(0))});
        for (size_t i = 0; i < a.size(); i++)
            for (size_t j = 0; j < b.size(); j++) out[i + j] = elem_add(F, out[i + j], elem_mul(F, a[i], b[j]));
        return out;
    };

    zint pj = F.p;
    for (long step = 1; step < N; step++, pj *= F.p) {
        // error = target - prod(g), coefficients divisible by p^step
        std::vector<local_elem> prod = g[0];
        for (int i = 1; i < r; i++) prod = poly_mul_elems(prod, g[static_cast<size_t>(i)]);
        fqpoly ebar;
        ebar.c.assign(static_cast<size_t>(d) + 1, arith::fq_zero());
        bool any = false;
        for (int c = 0; c <= d; c++) {
            local_elem diff = elem_sub(F, target[static_cast<size_t>(c)], prod[static_cast<size_t>(c)]);
            // divide by p^step coordinate-wise
            std::vector<zint> dc(diff.coords.size());
            for (size_t l = 0; l < dc.size(); l++) {
                if (zmod(diff.coords[l], pj) != 0)
                    throw internal_inconsistency_error("hensel: error term not divisible by p^step");
                dc[l] = zdivexact(diff.coords[l], pj);
            }
            fqelem res = elem_residue(F, local_elem{dc});
            if (!res.is_zero()) any = true;
            ebar.c[static_cast<size_t>(c)] = res;
        }
        ebar.trim();
        if (!any) continue;
        for (int i = 0; i < r; i++) {
            fqpoly di = fqp_mul(k, ebar, bez[static_cast<size_t>(i)]);
            fqpoly q, rm;
            fqp_divrem(k, di, seeds[static_cast<size_t>(i)], q, rm);
            // g_i += p^step * lift(rm)
            for (int j = 0; j <= rm.deg(); j++) {
                local_elem lift = elem_lift_residue(F, rm.c[static_cast<size_t>(j)]);
                for (auto& x : lift.coords) x = zmod(x * pj, F.S.pN);
                g[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    elem_add(F, g[static_cast<size_t>(i)][static_cast<size_t>(j)], lift);
            }
        }
    }
    // final verification
    std::vector<local_elem> prod = g[0];
    for (int i = 1; i < r; i++) prod = poly_mul_elems(prod, g[static_cast<size_t>(i)]);
    for (int c = 0; c <= d; c++)
        if (!(prod[static_cast<size_t>(c)] == target[static_cast<size_t>(c)]))
            throw internal_inconsistency_error("hensel: product check failed");
    return g;
}

}  // namespace

local_factorization local_factor(const std::vector<zpoly>& coeffs, const local_field& F) {
    if (coeffs.empty() || coeffs.back() != zpoly({zint(1)}))
        throw invalid_input_error("local_factor: polynomial must be monic");
    if (F.e0 != 1)
        throw provider_unavailable_error("local_factor over ramified base steps is not provided; analyze through the global engine");
    local_factorization out;
    out.F = F;
    out.input_coeffs = coeffs;
    out.N = F.S.N;
    out.pN = F.S.pN;
    int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 1) throw invalid_input_error("local_factor: degree >= 1 required");

    if (F.f0 == 1) {
        // base Q_p: the component split of Q[x]/(p) carries everything
        zpoly f;
        {
            std::vector<zint> c;
            for (const auto& cp : coeffs) {
                if (cp.deg() > 0) throw invalid_input_error("local_factor: nonconstant coefficient over Q_p");
                c.push_back(cp.coeff(0));
            }
            f = zpoly(std::move(c));
        }
        if (d == 1) {
            local_factor_data fd;
            fd.e = 1;
            fd.f = 1;
            fd.ki = F.k;
            fd.Tbar = arith::fq_from_int(F.k, -f.coeff(0));
            fd.residue_charpoly.c = {arith::fq_neg(F.k, fd.Tbar), arith::fq_one(F.k)};
            fd.trace = fd.Tbar;
            fd.factor = {elem_from_int(F, f.coeff(0)), elem_from_int(F, 1)};
            out.factors.push_back(fd);
            out.certified = true;
            out.lifted = true;
            return out;
        }
        auto A = algebra_from_poly(f);
        auto S = split_at_p(A, F.p, F.N);
        std::vector<qrat> xamb(static_cast<size_t>(d), qrat(0));
        xamb[1] = 1;
        auto xel = S.to_order_coords_mod(xamb);
        for (size_t ci = 0; ci < S.comps.size(); ci++) {
            const auto& comp = S.comps[ci];
            local_factor_data fd;
            fd.e = comp.e;
            fd.f = comp.fdeg;
            fd.ki = comp.k;
            fd.Tbar = S.residue(static_cast<int>(ci), xel);
            // charpoly of Tbar over F_p = minpoly^(f/deg)
            zpoly mp = arith::fq_minpoly(comp.k, fd.Tbar);
            fqpoly cp = fqp_from_zpoly(F.k, mp);
            int reps = comp.fdeg / mp.deg();
            fqpoly full = cp;
            for (int j = 1; j < reps; j++) full = fqp_mul(F.k, full, cp);
            fd.residue_charpoly = full;
            fd.trace = arith::fq_neg(F.k, full.c[static_cast<size_t>(comp.fdeg - 1)]);
            zpoly fac = component_charpoly(S, static_cast<int>(ci), xel);
            for (int j = 0; j <= fac.deg(); j++) fd.factor.push_back(elem_from_int(F, fac.coeff(j)));
            out.factors.push_back(std::move(fd));
        }
        out.engine = std::move(S);
        out.certified = true;
        out.lifted = true;
        // product check
        {
            zpoly prod({zint(1)});
            for (const auto& fd : out.factors) {
                std::vector<zint> c;
                for (const auto& e : fd.factor) c.push_back(e.coords[0]);
                prod = prod * zpoly(std::move(c));
            }
            for (int i = 0; i <= d; i++)
                if (zmod(prod.coeff(i) - f.coeff(i), out.pN) != 0)
                    throw internal_inconsistency_error("local_factor: factor product mismatch");
        }
        return out;
    }

    // unramified base of degree f0 > 1
    fqpoly fbar;
    fbar.c.resize(static_cast<size_t>(d) + 1);
    for (int i = 0; i <= d; i++) fbar.c[static_cast<size_t>(i)] = tpoly_residue(F, coeffs[static_cast<size_t>(i)]);
    fbar.trim();
    auto rfs = fqp_factor(F.k, fbar);
    bool all_simple = true;
    for (const auto& rf : rfs)
        if (rf.mult > 1) all_simple = false;

    if (all_simple) {
        // unramified etale case: Hensel certified, e_i = 1
        std::vector<fqpoly> seeds;
        for (const auto& rf : rfs) seeds.push_back(rf.poly);
        auto gs = hensel_lift_unramified(F, coeffs, seeds);
        for (size_t i = 0; i < seeds.size(); i++) {
            const fqpoly& q = seeds[i];
            local_factor_data fd;
            fd.e = 1;
            fd.f = q.deg();
            fd.ki = make_fq(F.p, F.f0 * q.deg());
            // Tbar = root of q in ki: embed k into ki, take the smallest root of q
            fqelem zeta = arith::fq_subfield_gen(fd.ki, F.k);
            // map q's coefficients into ki via zeta
            fqpoly qk;
            qk.c.resize(q.c.size());
            for (size_t j = 0; j < q.c.size(); j++) {
                // evaluate coefficient (element of k, poly in k.gen) at zeta
                fqelem acc = arith::fq_zero();
                const auto& cc = q.c[j].c;
                for (size_t l = cc.size(); l-- > 0;) {
                    acc = arith::fq_mul(fd.ki, acc, zeta);
                    acc = arith::fq_add(fd.ki, acc, arith::fq_from_int(fd.ki, cc[l]));
                }
                qk.c[j] = acc;
            }
            qk.trim();
            auto roots = fqp_roots(fd.ki, qk);
            if (roots.empty()) throw internal_inconsistency_error("local_factor: residue factor has no root in k_i");
            fd.Tbar = roots.front();
            fd.residue_charpoly = q;  // irreducible here, degree f
            fd.trace = q.deg() >= 1 ? arith::fq_neg(F.k, q.c[static_cast<size_t>(q.deg() - 1)]) : arith::fq_zero();
            fd.factor = gs[i];
            out.factors.push_back(std::move(fd));
        }
        out.certified = true;
        out.lifted = true;
        return out;
    }

    // repeated residue factors over an extension base: exact shape data via the
    // global engine; factor lifts are not computed on this path.
    auto base_alg = algebra_from_poly(F.unram_modulus);
    auto coords = coeffs_to_base_coords(coeffs, F.unram_modulus, base_alg.n);
    auto B = algebra_relative(base_alg, coords);
    auto S = split_at_p(B, F.p, F.N);
    std::vector<qrat> xamb(static_cast<size_t>(B.n), qrat(0));
    xamb[static_cast<size_t>(base_alg.n)] = 1;  // x = (a=0, b=1)
    auto xel = S.to_order_coords_mod(xamb);
    std::vector<qrat> tamb(static_cast<size_t>(B.n), qrat(0));
    tamb[1] = 1;  // t
    auto tel = S.to_order_coords_mod(tamb);
    for (size_t ci = 0; ci < S.comps.size(); ci++) {
        const auto& comp = S.comps[ci];
        if (comp.fdeg % F.f0 != 0)
            throw internal_inconsistency_error("local_factor: base residue degree does not divide component degree");
        local_factor_data fd;
        fd.f = comp.fdeg / F.f0;
        fd.e = comp.e;
        fd.ki = comp.k;
        fd.Tbar = S.residue(static_cast<int>(ci), xel);
        // relative charpoly of Tbar over k via the embedding sending k's
        // generator to the residue of t
        fqelem zeta = S.residue(static_cast<int>(ci), tel);
        fqelem cur = fd.Tbar;
        std::vector<fqelem> conj;
        for (int j = 0; j < fd.f; j++) {
            conj.push_back(cur);
            cur = arith::fq_frob(comp.k, cur, F.f0);
        }
        // charpoly = prod (X - conj_j), coefficients expressed in k
        std::vector<fqelem> poly{arith::fq_one(comp.k)};
        for (const auto& rt : conj) {
            std::vector<fqelem> next(poly.size() + 1, arith::fq_zero());
            for (size_t l = 0; l < poly.size(); l++) {
                next[l + 1] = arith::fq_add(comp.k, next[l + 1], poly[l]);
                next[l] = arith::fq_sub(comp.k, next[l], arith::fq_mul(comp.k, rt, poly[l]));
            }
            poly = std::move(next);
        }
        fqpoly cp;
        cp.c.resize(poly.size());
        for (size_t l = 0; l < poly.size(); l++)
            cp.c[l] = arith::fq_express_in_subfield(comp.k, F.k, zeta, poly[l]);
        cp.trim();
        fd.residue_charpoly = cp;
        fd.trace = fd.f >= 1 ? arith::fq_neg(F.k, cp.c[static_cast<size_t>(fd.f - 1)]) : arith::fq_zero();
        out.factors.push_back(std::move(fd));
    }
    out.certified = true;
    out.lifted = false;
    return out;
}

local_factorization local_factor(const zpoly& f, const local_field& F) {
    std::vector<zpoly> coeffs;
    for (int i = 0; i <= f.deg(); i++) coeffs.push_back(zpoly({f.coeff(i)}));
    return local_factor(coeffs, F);
}

std::vector<fqelem> residue_trace_vector(const local_factorization& fac) {
    if (!fac.certified) throw invalid_input_error("residue_trace_vector: uncertified factorization refused");
    std::vector<fqelem> out;
    for (const auto& f : fac.factors) out.push_back(f.trace);
    return out;
}

std::vector<std::vector<long>> cross_resultant_valuations(const local_factorization& fac) {
    int r = fac.r();
    std::vector<std::vector<long>> M(static_cast<size_t>(r), std::vector<long>(static_cast<size_t>(r), -1));
    if (!fac.certified) throw invalid_input_error("cross_resultant_valuations: uncertified factorization");
    if (fac.F.f0 == 1) {
        // exact resultants of symmetric lifts; valid mod p^N
        std::vector<zpoly> lifts;
        for (const auto& f : fac.factors) {
            std::vector<zint> c;
            for (const auto& e : f.factor) c.push_back(zmods(e.coords[0], fac.pN));
            lifts.push_back(zpoly(std::move(c)));
        }
        for (int i = 0; i < r; i++)
            for (int j = i + 1; j < r; j++) {
                zint res = zmods(resultant(lifts[static_cast<size_t>(i)], lifts[static_cast<size_t>(j)]), fac.pN);
                if (res == 0) throw precision_error("cross resultant vanishes to working precision");
                long v = zvaluation(res, fac.F.p);
                if (v >= fac.N) throw precision_error("cross resultant valuation not certified");
                M[static_cast<size_t>(i)][static_cast<size_t>(j)] = M[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
            }
        return M;
    }
    if (fac.lifted) {
        // distinct residue factors: pairwise coprime mod pi, so all
        // cross-resultants are units
        for (int i = 0; i < r; i++)
            for (int j = 0; j < r; j++)
                if (i != j) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
        return M;
    }
    throw precision_error("cross_resultant_valuations: not available for unlifted extension-base factorizations");
}

}  // namespace selbound::localfields
