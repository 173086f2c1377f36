#include "selbound/hypotheses.hpp"

#include <algorithm>

#include "selbound/primes.hpp"

namespace selbound::hypotheses {

using namespace selbound::arith;
using namespace selbound::localfields;
namespace nf = selbound::numberfields;

const char* to_string(tristate t) {
    switch (t) {
        case tristate::holds: return "holds";
        case tristate::fails: return "fails";
        default: return "undecided";
    }
}

int trace_space_dim(const fq_ctx& k, const std::vector<fqelem>& traces, const std::vector<long>& e) {
    // trace relation: sum e_i t_i = 0 (only parities of e matter in char 2)
    fqelem rel = fq_zero();
    for (size_t i = 0; i < traces.size(); i++)
        if (e[i] % 2 != 0) rel = fq_add(k, rel, traces[i]);
    if (!rel.is_zero())
        throw internal_inconsistency_error("trace space: sum e_i Tr(T_i) != 0 (factorization or precision bug)");
    // F_2 span of the traces inside k
    std::vector<std::vector<zint>> rows;
    for (const auto& t : traces) {
        std::vector<zint> r(static_cast<size_t>(k.k), zint(0));
        for (size_t j = 0; j < t.c.size(); j++) r[j] = t.c[j];
        rows.push_back(std::move(r));
    }
    int dim = 0;
    std::vector<int> pivots;
    for (auto row : rows) {
        for (size_t pi = 0; pi < pivots.size(); pi++) {
            int pc = pivots[pi];
            if (row[static_cast<size_t>(pc)] != 0)
                for (int j = 0; j < k.k; j++)
                    row[static_cast<size_t>(j)] = zmod(row[static_cast<size_t>(j)] + rows[pi][static_cast<size_t>(j)], 2);
        }
        int pc = -1;
        for (int j = 0; j < k.k; j++)
            if (row[static_cast<size_t>(j)] != 0) {
                pc = j;
                break;
            }
        if (pc >= 0) {
            rows[static_cast<size_t>(dim)] = row;
            pivots.push_back(pc);
            dim++;
        }
    }
    rows.resize(static_cast<size_t>(dim));
    return dim;
}

long u4_image_log_index(const fq_ctx& k, const std::vector<fqelem>& traces, int dim_trace_space) {
    int r = static_cast<int>(traces.size());
    zint size = k.q();
    if (size > (zint(1) << 16)) throw invalid_input_error("u4_image_log_index: residue field too large to enumerate");
    long card = size.get_si();
    // enumerate v in k by coordinate vectors
    std::vector<std::vector<int>> image_rows;
    for (long code = 0; code < card; code++) {
        zpoly rep;
        long t = code;
        std::vector<zint> cc;
        while (t > 0) {
            cc.push_back(t % 2);
            t /= 2;
        }
        rep = zpoly(std::move(cc));
        fqelem v = fq_make(k, rep);
        std::vector<int> row(static_cast<size_t>(r));
        for (int i = 0; i < r; i++) {
            fqelem prod = fq_mul(k, traces[static_cast<size_t>(i)], v);
            row[static_cast<size_t>(i)] = fq_trace_abs(k, prod) == 1 ? 1 : 0;
        }
        image_rows.push_back(std::move(row));
    }
    // F_2 rank of the image
    int dim = 0;
    std::vector<std::vector<int>> basis;
    for (auto row : image_rows) {
        for (const auto& b : basis) {
            int pc = -1;
            for (int j = 0; j < r; j++)
                if (b[static_cast<size_t>(j)] != 0) {
                    pc = j;
                    break;
                }
            if (pc >= 0 && row[static_cast<size_t>(pc)] != 0)
                for (int j = 0; j < r; j++) row[static_cast<size_t>(j)] ^= b[static_cast<size_t>(j)];
        }
        bool nz = false;
        for (int j = 0; j < r; j++)
            if (row[static_cast<size_t>(j)] != 0) nz = true;
        if (nz) {
            basis.push_back(row);
            dim++;
        }
    }
    if (dim != dim_trace_space)
        throw internal_inconsistency_error("u4_image_log_index: trace-pairing image dimension differs from dim V");
    return static_cast<long>(r - 1 - dim_trace_space);
}

int trace_space_dim(const local_factorization& fac) {
    if (!fac.certified) throw invalid_input_error("trace space: uncertified factorization refused");
    auto traces = residue_trace_vector(fac);
    std::vector<long> e;
    for (const auto& f : fac.factors) e.push_back(f.e);
    return trace_space_dim(fac.F.k, traces, e);
}

long u4_image_log_index(const local_factorization& fac) {
    int dv = trace_space_dim(fac);
    auto traces = residue_trace_vector(fac);
    return u4_image_log_index(fac.F.k, traces, dv);
}

void fill_local_dims(place_report& rep, int genus) {
    long d2 = rep.q == 2 ? rep.e_v * rep.f_v : 0;
    long base = rep.r_v - 1 + d2 * genus;
    rep.dim_J2 = base;
    rep.dim_square_classes = 2 * base;
    rep.dim_integral_square_classes = rep.r_v - 1 + 2 * d2 * genus;
}

namespace {

// residue factorization degrees of p over the residue field of a good place
void good_place_shape(const curve& C, const zint& q, int place_index, place_report& rep) {
    if (C.base_is_q()) {
        fq_ctx Fq = make_fq(q, 1);
        auto facs = fqp_factor(Fq, fqp_from_zpoly(Fq, C.pz));
        for (const auto& fc : facs) {
            rep.e_i.push_back(fc.mult);  // = 1 at good places
            rep.f_i.push_back(fc.poly.deg());
        }
        rep.r_v = static_cast<int>(facs.size());
        return;
    }
    // base K: reduce the coefficients into the residue field of v
    auto SK = C.K->split(q);
    const auto& comp = SK->comps[static_cast<size_t>(place_index)];
    fqpoly pbar;
    pbar.c.resize(C.pk.size());
    for (size_t i = 0; i < C.pk.size(); i++) {
        auto oc = SK->to_order_coords_mod(C.K->to_O_coords(C.pk[i]));
        pbar.c[i] = SK->residue(static_cast<int>(place_index), oc);
    }
    pbar.trim();
    auto facs = fqp_factor(comp.k, pbar);
    for (const auto& fc : facs) {
        rep.e_i.push_back(fc.mult);
        rep.f_i.push_back(fc.poly.deg());
    }
    rep.r_v = static_cast<int>(facs.size());
}

long disc_valuation_at(const curve& C, const zint& q, int place_index) {
    if (C.base_is_q()) {
        zint disc = discriminant_z(C.pz);
        return zmod(disc, q) == 0 ? zvaluation(disc, q) : 0;
    }
    qpoly disc = kp_disc(*C.K, C.pk);
    return C.K->valuation(disc, q, place_index);
}

// place analysis for base Q at a bad or even prime, driven through the
// localfields engine with precision escalation
void analyze_q_base(const curve& C, const zint& q, place_report& rep, int genus, long precision0) {
    long vd = rep.disc_valuation;
    long N = precision0 > 0 ? precision0 : nf::default_precision(vd);
    bool need_cross = true;
    while (true) {
        auto F = make_qp(q, N);
        auto fac = local_factor(C.pz, F);
        rep.r_v = fac.r();
        rep.e_i.clear();
        rep.f_i.clear();
        for (const auto& fd : fac.factors) {
            rep.e_i.push_back(fd.e);
            rep.f_i.push_back(fd.f);
        }
        rep.certified = fac.certified;
        if (q == 2) {
            auto traces = residue_trace_vector(fac);
            std::vector<long> e;
            for (const auto& fd : fac.factors) e.push_back(fd.e);
            rep.dim_trace_space = trace_space_dim(fac.F.k, traces, e);
            rep.trace_condition_defined = true;
            rep.trace_condition = (rep.dim_trace_space == rep.r_v - 1);
            rep.u4_index_log = u4_image_log_index(fac.F.k, traces, rep.dim_trace_space);
            rep.correction = rep.u4_index_log;
            rep.trace_codes.clear();
            for (const auto& t : traces) rep.trace_codes.push_back(fq_code(fac.F.k, t));
        }
        // order identity
        if (rep.r_v == 1) {
            rep.order_identity = tristate::holds;
            need_cross = false;
        }
        if (need_cross) {
            try {
                auto M = cross_resultant_valuations(fac);
                bool all_zero = true;
                for (int i = 0; i < fac.r(); i++)
                    for (int j = i + 1; j < fac.r(); j++)
                        if (M[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0) all_zero = false;
                rep.order_identity = all_zero ? tristate::holds : tristate::fails;
            } catch (const precision_error&) {
                if (2 * N <= nf::precision_cap()) {
                    N *= 2;
                    continue;
                }
                rep.order_identity = tristate::undecided;
                rep.certified = false;
                rep.note = "cross-resultant valuation not certified at the precision cap";
            }
        }
        break;
    }
    fill_local_dims(rep, genus);
}

// base K != Q: shape and traces via the absolute engine plus the base engine
void analyze_k_base(const curve& C, const zint& q, int place_index, place_report& rep, int genus, long precision0) {
    auto SK = C.K->split(q);
    const auto& vcomp = SK->comps[static_cast<size_t>(place_index)];
    rep.e_v = vcomp.e;
    rep.f_v = vcomp.fdeg;

    long vd = rep.disc_valuation;
    long N = precision0 > 0 ? precision0 : nf::default_precision(vd * 2 + 8);
    auto SB = std::make_shared<nf::split_result>(nf::split_at_p(C.Babs, q, N));

    // embed K into B: theta |-> basis index 1 of the base block
    int nk = C.K->degree(), nb = C.Babs.n;
    auto embed_K = [&](const std::vector<qrat>& kamb) {
        std::vector<qrat> out(static_cast<size_t>(nb), qrat(0));
        for (int i = 0; i < nk; i++) out[static_cast<size_t>(i)] = kamb[static_cast<size_t>(i)];
        return out;
    };
    // idempotent of v, as an element of B
    std::vector<qrat> idem_v_amb(static_cast<size_t>(nk));
    {
        // v's idempotent lives in O_K-coords; convert to K power-basis ambient
        for (int j = 0; j < nk; j++) {
            qrat acc = 0;
            for (int i = 0; i < nk; i++)
                acc += qrat(vcomp.idem[static_cast<size_t>(i)] * C.K->basis_num.at(i, j)) / qrat(C.K->basis_den);
            idem_v_amb[static_cast<size_t>(j)] = acc;
        }
    }
    auto idem_v_B = SB->to_order_coords_mod(embed_K(idem_v_amb));

    // which components of B lie over v: idem_v * eps_w != 0 mod q
    std::vector<int> over_v;
    for (size_t w = 0; w < SB->comps.size(); w++) {
        auto prod = SB->O.A.mul_mod(idem_v_B, SB->comps[w].idem, SB->pN);
        bool nz = false;
        for (const auto& x : prod)
            if (zmod(x, q) != 0) nz = true;
        if (nz) over_v.push_back(static_cast<int>(w));
    }
    rep.r_v = static_cast<int>(over_v.size());
    rep.e_i.clear();
    rep.f_i.clear();
    for (int w : over_v) {
        const auto& c = SB->comps[static_cast<size_t>(w)];
        if (c.fdeg % rep.f_v != 0 || c.e % rep.e_v != 0)
            throw internal_inconsistency_error("analyze_place: absolute (e,f) not divisible by the base place data");
        rep.e_i.push_back(c.e / rep.e_v);
        rep.f_i.push_back(c.fdeg / rep.f_v);
    }

    // x and a residue generator z0 of k_v
    std::vector<qrat> xamb(static_cast<size_t>(nb), qrat(0));
    xamb[static_cast<size_t>(nk)] = 1;
    auto xB = SB->to_order_coords_mod(xamb);

    if (q == 2) {
        // find z0 in O_K whose residue generates k_v (enumerate over the
        // integral basis: power-basis combinations can miss generators)
        std::vector<qrat> z0_amb;
        {
            detrng rng(0xbead5eed);
            for (int trial = 0; trial < 400 && z0_amb.empty(); trial++) {
                std::vector<zint> c(static_cast<size_t>(nk), zint(0));
                if (trial < nk) c[static_cast<size_t>(trial)] = 1;
                else
                    for (int i = 0; i < nk; i++) c[static_cast<size_t>(i)] = zint(static_cast<long>(rng.below(4)));
                // the K engine works in integral-basis coordinates
                std::vector<qrat> oc_in(static_cast<size_t>(nk));
                for (int i = 0; i < nk; i++) oc_in[static_cast<size_t>(i)] = qrat(c[static_cast<size_t>(i)]);
                auto oc = SK->to_order_coords_mod(oc_in);
                auto res = SK->residue(place_index, oc);
                if (fq_minpoly(vcomp.k, res).deg() != rep.f_v) continue;
                // power-basis representative, used to embed z0 into B
                std::vector<qrat> cand(static_cast<size_t>(nk), qrat(0));
                for (int i = 0; i < nk; i++) {
                    if (c[static_cast<size_t>(i)] == 0) continue;
                    for (int j = 0; j < nk; j++)
                        cand[static_cast<size_t>(j)] +=
                            qrat(c[static_cast<size_t>(i)] * C.K->basis_num.at(i, j)) / qrat(C.K->basis_den);
                }
                z0_amb = cand;
            }
            if (z0_amb.empty()) throw internal_inconsistency_error("analyze_place: no residue generator found");
        }
        auto z0B = SB->to_order_coords_mod(embed_K(z0_amb));
        // model of k_v: minpoly of z0's residue (computed inside any k_w)
        fq_ctx kv_model;
        std::vector<fqelem> traces;
        {
            bool model_set = false;
            for (int w : over_v) {
                const auto& comp = SB->comps[static_cast<size_t>(w)];
                fqelem zeta = SB->residue(w, z0B);
                if (!model_set) {
                    zpoly mp = fq_minpoly(comp.k, zeta);
                    if (mp.deg() != rep.f_v)
                        throw internal_inconsistency_error("analyze_place: residue generator degenerates in k_w");
                    kv_model.p = 2;
                    kv_model.k = rep.f_v;
                    kv_model.modulus = mp;
                    model_set = true;
                }
                fqelem Tbar = SB->residue(w, xB);
                // relative trace Tr_{k_w/k_v}
                int steps = comp.fdeg / rep.f_v;
                fqelem s = fq_zero(), cur = Tbar;
                for (int j = 0; j < steps; j++) {
                    s = fq_add(comp.k, s, cur);
                    cur = fq_frob(comp.k, cur, rep.f_v);
                }
                fqelem coords = fq_express_in_subfield(comp.k, kv_model, zeta, s);
                traces.push_back(coords);
            }
        }
        std::vector<long> erel;
        for (size_t i = 0; i < over_v.size(); i++) erel.push_back(rep.e_i[i]);
        rep.dim_trace_space = trace_space_dim(kv_model, traces, erel);
        rep.trace_condition_defined = true;
        rep.trace_condition = (rep.dim_trace_space == rep.r_v - 1);
        rep.u4_index_log = u4_image_log_index(kv_model, traces, rep.dim_trace_space);
        rep.correction = rep.u4_index_log;
        for (const auto& t : traces) rep.trace_codes.push_back(fq_code(kv_model, t));
    }

    // order-identity decision
    if (rep.r_v == 1 || rep.disc_valuation == 0) {
        rep.order_identity = tristate::holds;
    } else if (zmod(C.abs_disc_quotient, q) != 0) {
        // the order Z[theta][x]/(p) is q-maximal, hence O_v[x]/(p) is the
        // full product of the local rings
        rep.order_identity = tristate::holds;
    } else {
        rep.order_identity = tristate::undecided;
        rep.note = "cross-resultants over an extension base are not computed; index test inconclusive";
    }
    fill_local_dims(rep, genus);
}

}  // namespace

place_report analyze_place(const curve& C, const zint& q, int place_index, long precision0) {
    place_report rep;
    rep.q = q;
    rep.place_index = place_index;
    rep.place_id = q.get_str();
    if (!C.base_is_q()) {
        auto SK = C.K->split(q);
        if (place_index < 0 || place_index >= static_cast<int>(SK->comps.size()))
            throw invalid_input_error("analyze_place: place index out of range");
        if (SK->comps.size() > 1) rep.place_id += "#" + std::to_string(place_index);
        const auto& comp = SK->comps[static_cast<size_t>(place_index)];
        rep.e_v = comp.e;
        rep.f_v = comp.fdeg;
    } else if (place_index != 0) {
        throw invalid_input_error("analyze_place: base Q has a single place over q");
    }
    rep.disc_valuation = disc_valuation_at(C, q, place_index);

    if (q != 2 && rep.disc_valuation == 0) {
        good_place_shape(C, q, place_index, rep);
        rep.order_identity = tristate::holds;
        fill_local_dims(rep, C.g);
        return rep;
    }
    if (C.base_is_q()) analyze_q_base(C, q, rep, C.g, precision0);
    else analyze_k_base(C, q, place_index, rep, C.g, precision0);
    return rep;
}

std::vector<place_report> analyze_finite_places(const curve& C, long precision0) {
    // support: 2 and the odd primes dividing the norm of disc(p)
    std::vector<zint> qs{2};
    zint nrm;
    if (C.base_is_q()) {
        nrm = discriminant_z(C.pz);
    } else {
        qpoly disc = kp_disc(*C.K, C.pk);
        qrat n = nf::field_norm(*C.K, disc);
        if (n.get_den() != 1) throw internal_inconsistency_error("disc norm not integral");
        nrm = n.get_num();
    }
    for (const auto& [p, e] : factorize(abs(nrm)))
        if (p != 2) qs.push_back(p);
    std::sort(qs.begin(), qs.end());
    std::vector<place_report> out;
    for (const auto& q : qs) {
        int nplaces = 1;
        if (!C.base_is_q()) nplaces = static_cast<int>(C.K->split(q)->comps.size());
        for (int pi = 0; pi < nplaces; pi++) out.push_back(analyze_place(C, q, pi, precision0));
    }
    return out;
}

tristate check_order_identity(const curve& C, const zint& q, int place_index) {
    // fast path without any factorization
    if (disc_valuation_at(C, q, place_index) == 0) return tristate::holds;
    return analyze_place(C, q, place_index).order_identity;
}

arch_profile archimedean_profile(const curve& C) {
    arch_profile prof;
    prof.factor_offset.resize(C.factor_fields.size());
    int off = 0;
    for (size_t i = 0; i < C.factor_fields.size(); i++) {
        prof.factor_offset[i] = off;
        off += C.factor_fields[i]->r1;
    }
    prof.total_real_embeddings = off;
    prof.complex_places = C.base_is_q() ? 0 : C.K->r2;
    for (const auto& rp : C.real_places) {
        arch_place ap;
        ap.base_embedding = rp.base_embedding;
        int nroots = static_cast<int>(rp.roots.size());
        ap.s = (nroots - 1) / 2;
        ap.dim_im_delta = ap.s;
        auto global = [&](int ri) {
            return prof.factor_offset[static_cast<size_t>(rp.factor_of_root[static_cast<size_t>(ri)])] +
                   rp.embedding_in_factor[static_cast<size_t>(ri)];
        };
        ap.marked_global = global(0);
        for (int i = 0; i < ap.s; i++) ap.pairs.emplace_back(global(2 * i + 1), global(2 * i + 2));
        prof.a_counts[nroots]++;
        prof.sum_s += ap.s;
        prof.places.push_back(std::move(ap));
    }
    // bookkeeping identities: [K:Q] = sum a_i + 2c,
    // #S_infty = sum i*a_i, and sum s_v = sum ((i-1)/2) a_i
    int deg = C.base_degree();
    int acc = 0, s_inf = 0, s_sum = 0;
    for (const auto& [i, c] : prof.a_counts) {
        acc += c;
        s_inf += i * c;
        s_sum += ((i - 1) / 2) * c;
    }
    if (acc + 2 * prof.complex_places != deg)
        throw internal_inconsistency_error("archimedean_profile: place count mismatch");
    if (s_inf != prof.total_real_embeddings)
        throw internal_inconsistency_error("archimedean_profile: embedding count mismatch");
    if (s_sum != prof.sum_s)
        throw internal_inconsistency_error("archimedean_profile: pairing count mismatch");
    return prof;
}

}  // namespace selbound::hypotheses
