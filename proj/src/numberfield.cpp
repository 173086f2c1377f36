#include "selbound/numberfield.hpp"

#include <algorithm>

#include "selbound/primes.hpp"

namespace selbound::numberfields {

using namespace selbound::arith;

namespace {

// join of full-rank lattices given as (num, den) rows over a common ambient basis
void lattice_join(zmat& num, zint& den, const zmat& num2, const zint& den2) {
    int n = num.cols;
    zint l = zlcm(den, den2);
    zmat stack(2 * n, n);
    zint s1 = zdivexact(l, den), s2 = zdivexact(l, den2);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            stack.at(i, j) = num.at(i, j) * s1;
            stack.at(n + i, j) = num2.at(i, j) * s2;
        }
    zmat H = hnf(stack);
    if (H.rows != n) throw internal_inconsistency_error("lattice_join: rank drop");
    // normalize common content with the denominator
    zint g = l;
    for (const auto& x : H.a) g = zgcd(g, x);
    num = H;
    if (g > 1) {
        for (auto& x : num.a) x = zdivexact(x, g);
        l = zdivexact(l, g);
    }
    den = l;
}

}  // namespace

std::shared_ptr<const number_field> make_number_field(const zpoly& f) {
    if (!f.is_monic() || f.deg() < 1) throw invalid_input_error("number_field: monic integral polynomial required");
    auto L = std::make_shared<number_field>();
    L->poly = f;
    L->poly_disc = discriminant_z(f);
    if (L->poly_disc == 0) throw invalid_input_error("number_field: polynomial not squarefree");
    if (!is_irreducible_over_Q(f)) throw invalid_input_error("number_field: polynomial reducible over Q");
    int n = f.deg();

    algebra amb = algebra_from_poly(f);
    L->basis_num = zmat::identity(n);
    L->basis_den = 1;
    for (const auto& [p, e] : factorize(L->poly_disc)) {
        if (e < 2) continue;
        auto Op = p_maximal_order(amb, p);
        if (Op.index_vp == 0) continue;
        zmat pm = Op.num;
        zint pden = zpow(p, static_cast<unsigned long>(Op.s));
        lattice_join(L->basis_num, L->basis_den, pm, pden);
    }
    // index and field disc
    zint dn = det_bareiss(L->basis_num);
    zint den_pow = zpow(L->basis_den, static_cast<unsigned long>(n));
    L->index = zdivexact(den_pow, abs(dn));
    L->field_disc = zdivexact(L->poly_disc, L->index * L->index);

    // multiplication table of the maximal order
    {
        algebra O;
        O.n = n;
        O.lmul.assign(static_cast<size_t>(n), zmat(n, n));
        std::vector<std::vector<qrat>> rows(static_cast<size_t>(n), std::vector<qrat>(static_cast<size_t>(n)));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                rows[static_cast<size_t>(i)][static_cast<size_t>(j)] = qrat(L->basis_num.at(i, j)) / qrat(L->basis_den);
            }
        zmat numT = transpose(L->basis_num);
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++) {
                auto prod = amb.mul_q(rows[static_cast<size_t>(i)], rows[static_cast<size_t>(j)]);
                // coords w.r.t. basis rows: solve x * (num/den) = prod
                std::vector<qrat> rhs(static_cast<size_t>(n));
                for (int k = 0; k < n; k++) rhs[static_cast<size_t>(k)] = prod[static_cast<size_t>(k)] * qrat(L->basis_den);
                auto x = solve_q(numT, rhs);
                for (int k = 0; k < n; k++) {
                    if (x[static_cast<size_t>(k)].get_den() != 1)
                        throw internal_inconsistency_error("number_field: basis products not integral");
                    O.lmul[static_cast<size_t>(i)].at(j, k) = x[static_cast<size_t>(k)].get_num();
                }
            }
        // identity coords
        std::vector<qrat> one_amb(static_cast<size_t>(n), qrat(0));
        one_amb[0] = 1;
        std::vector<qrat> rhs(static_cast<size_t>(n));
        for (int k = 0; k < n; k++) rhs[static_cast<size_t>(k)] = one_amb[static_cast<size_t>(k)] * qrat(L->basis_den);
        auto x = solve_q(numT, rhs);
        O.one.assign(static_cast<size_t>(n), 0);
        for (int k = 0; k < n; k++) {
            if (x[static_cast<size_t>(k)].get_den() != 1)
                throw internal_inconsistency_error("number_field: identity not integral");
            O.one[static_cast<size_t>(k)] = x[static_cast<size_t>(k)].get_num();
        }
        L->O = O;
    }

    L->real_roots = isolate_real_roots(f);
    L->r1 = static_cast<int>(L->real_roots.size());
    L->r2 = (n - L->r1) / 2;
    return L;
}

std::shared_ptr<const split_result> number_field::split(const zint& p, long N) const {
    if (N <= 0) {
        long vd = field_disc == 0 ? 0 : (zmod(field_disc, p) == 0 ? zvaluation(field_disc, p) : 0);
        N = default_precision(vd);
    }
    auto key = std::make_pair(p.get_str(), N);
    std::lock_guard<std::mutex> lk(cache_mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    auto S = std::make_shared<split_result>(split_at_p(O, p, N));
    cache_[key] = S;
    return S;
}

std::vector<qrat> number_field::to_O_coords(const qpoly& el) const {
    int n = degree();
    std::vector<qrat> amb(static_cast<size_t>(n), qrat(0));
    for (int i = 0; i <= el.deg() && i < n; i++) amb[static_cast<size_t>(i)] = el.coeff(i);
    std::vector<qrat> rhs(static_cast<size_t>(n));
    for (int k = 0; k < n; k++) rhs[static_cast<size_t>(k)] = amb[static_cast<size_t>(k)] * qrat(basis_den);
    return solve_q(transpose(basis_num), rhs);
}

long number_field::valuation(const qpoly& el, const zint& p, int comp_index) const {
    if (el.is_zero()) throw invalid_input_error("valuation of zero");
    // clear p from the denominator first: el = p^(-k) * el0 with el0 p-integral
    zint den = 1;
    for (const auto& c : el.c) den = zlcm(den, c.get_den());
    long k = den == 1 ? 0 : (zmod(den, p) == 0 ? zvaluation(den, p) : 0);
    qpoly el0 = qrat(zpow(p, static_cast<unsigned long>(k))) * el;
    long N = 0;
    for (int attempt = 0; attempt < 12; attempt++) {
        auto S = split(p, N);
        std::vector<zint> oc;
        try {
            oc = S->to_order_coords_mod(to_O_coords(el0));
        } catch (const invalid_input_error&) {
            throw internal_inconsistency_error("valuation: element not integral after p-clearing");
        }
        long v = component_valuation(*S, comp_index, oc);
        if (v == std::numeric_limits<long>::max()) {
            N = S->N * 2;
            if (N > precision_cap()) throw precision_error("valuation: precision cap exceeded");
            continue;
        }
        if (v >= 0) {
            const auto& comp = S->comps[static_cast<size_t>(comp_index)];
            return v - static_cast<long>(k) * comp.e;
        }
        N = S->N * 2;
        if (N > precision_cap()) throw precision_error("valuation: precision cap exceeded");
    }
    throw precision_error("valuation: retries exhausted");
}

std::vector<prime_ideal> factor_prime(const number_field& L, const zint& p) {
    // output order matches the component order of L.split(p), so callers can
    // use the indices for valuations
    int n = L.degree();
    auto S = L.split(p);
    qpoly theta;
    theta.c = {qrat(0), qrat(1)};
    if (L.degree() == 1) theta.c = {-L.poly.coeff(0) * qrat(1)};
    auto thetaO = S->to_order_coords_mod(L.to_O_coords(theta));

    bool dedekind = zmod(L.index, p) != 0;
    std::vector<zpoly> dede_factors;
    std::vector<int> dede_mult;
    if (dedekind) {
        fq_ctx Fp = make_fq(p, 1);
        for (const auto& fc : fqp_factor(Fp, fqp_from_zpoly(Fp, L.poly))) {
            dede_factors.push_back(fqp_to_zpoly(Fp, fc.poly));
            dede_mult.push_back(fc.mult);
        }
        if (dede_factors.size() != S->comps.size())
            throw internal_inconsistency_error("factor_prime: Dedekind/engine component count mismatch");
    }

    std::vector<prime_ideal> result;
    for (size_t ci = 0; ci < S->comps.size(); ci++) {
        const auto& comp = S->comps[ci];
        prime_ideal P;
        P.p = p;
        P.e = comp.e;
        P.f = comp.fdeg;
        if (dedekind) {
            // the factor vanishing at Tbar of this component (unique: the
            // residue factors are distinct irreducibles when p does not
            // divide the index)
            auto Tbar = S->residue(static_cast<int>(ci), thetaO);
            int pick = -1;
            for (size_t j = 0; j < dede_factors.size(); j++) {
                auto val = fqp_eval(comp.k, fqp_from_zpoly(comp.k, dede_factors[j]), Tbar);
                if (val.is_zero()) {
                    pick = static_cast<int>(j);
                    break;
                }
            }
            if (pick < 0 || dede_mult[static_cast<size_t>(pick)] != comp.e ||
                dede_factors[static_cast<size_t>(pick)].deg() != comp.fdeg)
                throw internal_inconsistency_error("factor_prime: Dedekind data does not match component");
            P.second_gen = to_qpoly(dede_factors[static_cast<size_t>(pick)]);
        } else {
            P.second_gen = to_qpoly(component_charpoly(*S, static_cast<int>(ci), thetaO));
        }
        // ideal basis: p*O + kernel of the residue map of this component
        zmat ker = kernel_mod_p(comp.res_map, p);
        zmat stack(n + ker.rows, n);
        for (int i = 0; i < n; i++) stack.at(i, i) = p;
        for (int i = 0; i < ker.rows; i++)
            for (int j = 0; j < n; j++) stack.at(n + i, j) = ker.at(i, j);
        P.hnf_basis = hnf(stack);
        result.push_back(std::move(P));
    }
    return result;
}

int sign_at_real_embedding(const number_field& L, const qpoly& el, size_t j) {
    if (el.is_zero()) throw invalid_input_error("sign of zero element");
    root_interval iv = L.real_roots[j];
    zint num, den;
    zpoly g = to_zpoly_primitive(el, num, den);
    int gsign = sgn(num) * sgn(den);
    if (g.deg() == 0) return gsign * sgn(g.coeff(0));
    zpoly gsf = squarefree_part(g);
    auto chain = sturm_chain(gsf);
    for (int round = 0; round < 4096; round++) {
        if (iv.exact()) {
            qrat v = eval(g, iv.lo);
            if (v == 0) throw internal_inconsistency_error("sign_at_real_embedding: embedding is a root of g");
            return gsign * sgn(v);
        }
        int slo = sign_at(g, iv.lo), shi = sign_at(g, iv.hi);
        if (slo != 0 && slo == shi && sturm_count(chain, iv.lo, iv.hi) == 0) return gsign * slo;
        refine_root(L.poly, iv, iv.width() / 4);
    }
    throw internal_inconsistency_error("sign_at_real_embedding: did not stabilize");
}

qrat field_norm(const number_field& L, const qpoly& el) {
    if (el.is_zero()) return 0;
    return resultant(to_qpoly(L.poly), el);
}

etale_algebra make_etale(const qpoly& p) {
    etale_algebra A;
    A.p = p;
    auto fac = factor_over_Q(p);
    for (const auto& [g, m] : fac.factors) {
        if (m > 1) throw invalid_input_error("make_etale: polynomial not squarefree");
        A.factors.push_back(make_number_field(g));
    }
    return A;
}

splitting_report splitting_type(const etale_algebra& A, const zint& q) {
    splitting_report rep;
    rep.eligible = true;
    for (const auto& L : A.factors) {
        auto primes = factor_prime(*L, q);
        split_kind kind = split_kind::other;
        if (primes.size() == 1) {
            if (primes[0].e == 1 && primes[0].f == L->degree()) kind = split_kind::inert;
            else if (primes[0].e == L->degree() && primes[0].f == 1) kind = split_kind::totally_ramified;
        }
        if (kind == split_kind::other) rep.eligible = false;
        rep.per_factor.push_back(kind);
    }
    return rep;
}

std::map<zint, long> disc_quotient(const etale_algebra& A) {
    zint nm, dn;
    zpoly P = to_zpoly_primitive(A.p, nm, dn);
    zint dp = discriminant_z(P);
    zint prod = 1;
    for (const auto& L : A.factors) prod *= L->field_disc;
    zint q = zdivexact(dp, prod);
    if (q < 0) throw internal_inconsistency_error("disc_quotient: negative quotient");
    std::map<zint, long> out;
    if (q != 1) out = factorize(q);
    return out;
}

}  // namespace selbound::numberfields
