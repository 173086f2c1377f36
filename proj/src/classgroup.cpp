#include "selbound/classgroup.hpp"

#include <fstream>
#include <json.hpp>
#include <set>

#include "selbound/primes.hpp"
#include "selbound/sha256.hpp"

namespace selbound::classgroups {

using namespace selbound::arith;
using json = nlohmann::ordered_json;

namespace {

zint json_zint(const json& x) {
    if (x.is_string()) return zint(x.get<std::string>().c_str());
    return zint(x.get<long>());
}

std::vector<zint> presentation_invariants(int ngens, const std::vector<std::vector<long>>& rows) {
    if (ngens == 0) return {};
    zmat M(static_cast<int>(rows.size()), ngens);
    for (size_t i = 0; i < rows.size(); i++)
        for (int j = 0; j < ngens; j++) M.at(static_cast<int>(i), j) = rows[i][static_cast<size_t>(j)];
    // cokernel invariants: SNF of the relation matrix; pad free generators with 0
    auto d = snf(M);
    std::vector<zint> inv;
    int rank_cols = std::min<int>(static_cast<int>(rows.size()), ngens);
    for (int j = 0; j < ngens; j++) {
        zint dj = j < rank_cols ? d[static_cast<size_t>(j)] : zint(0);
        if (dj == 1) continue;
        inv.push_back(dj);
    }
    return inv;
}

zint minkowski_bound(const nf::number_field& L) {
    int n = L.degree();
    zint fact = 1;
    for (int i = 2; i <= n; i++) fact *= i;
    zint nn = zpow(zint(n), static_cast<unsigned long>(n));
    zint ad = abs(L.field_disc);
    zint s;
    mpz_sqrt(s.get_mpz_t(), ad.get_mpz_t());
    s += 1;
    // (4/pi)^(r2) < (4/3)^(r2): integer upper bound
    zint num = fact * zpow(4, static_cast<unsigned long>(L.r2)) * s;
    zint den = nn * zpow(3, static_cast<unsigned long>(L.r2));
    return num / den + 1;
}

struct fb_entry {
    zint p;
    int comp_index;  // component index in L.split(p) = position in factor_prime output
    nf::prime_ideal ideal;
};

}  // namespace

class_group_data class_group_builtin(const nf::number_field& L, const builtin_effort& effort) {
    if (L.degree() > effort.max_degree || abs(L.field_disc) > effort.max_disc)
        throw provider_unavailable_error(
            "builtin class group provider limited to degree <= " + std::to_string(effort.max_degree) +
            " and |disc| <= " + effort.max_disc.get_str() + "; import class data instead");
    class_group_data out;
    out.field_poly = L.poly;
    out.r1 = L.r1;
    out.source = class_group_data::source_t::builtin;

    // factor base: prime ideals of norm below the Minkowski bound
    zint M = minkowski_bound(L);
    std::vector<fb_entry> fb;
    std::vector<zint> fb_primes;
    for (zint p = 2; p <= M; p = next_prime(p)) {
        auto ps = factor_prime(L, p);
        bool any = false;
        for (size_t ci = 0; ci < ps.size(); ci++) {
            if (ps[ci].norm() <= M) {
                fb.push_back({p, static_cast<int>(ci), ps[ci]});
                any = true;
            }
        }
        if (any) fb_primes.push_back(p);
    }
    int nfb = static_cast<int>(fb.size());
    for (const auto& e : fb) out.generators.push_back(e.ideal);

    int n = L.degree();
    auto norm_of_coords = [&](const std::vector<zint>& c) {
        zmat Mm(n, n);
        for (int i = 0; i < n; i++) {
            if (c[static_cast<size_t>(i)] == 0) continue;
            for (int r = 0; r < n; r++)
                for (int k = 0; k < n; k++) Mm.at(r, k) += c[static_cast<size_t>(i)] * L.O.lmul[static_cast<size_t>(i)].at(r, k);
        }
        return det_bareiss(Mm);
    };
    auto coords_to_qpoly = [&](const std::vector<zint>& c) {
        qpoly rep;
        rep.c.assign(static_cast<size_t>(n), qrat(0));
        for (int i = 0; i < n; i++)
            for (int j = 0; j < n; j++)
                rep.c[static_cast<size_t>(j)] += qrat(c[static_cast<size_t>(i)] * L.basis_num.at(i, j)) / qrat(L.basis_den);
        rep.trim();
        return rep;
    };

    std::set<std::string> seen;
    std::vector<class_relation> rels;
    std::vector<std::vector<std::uint8_t>> unit_rows;
    unit_rows.push_back(std::vector<std::uint8_t>(static_cast<size_t>(L.r1), 1));  // -1

    // relations from the rational primes themselves, when all primes above
    // p lie in the factor base
    for (const auto& p : fb_primes) {
        auto ps = factor_prime(L, p);
        bool all_in = true;
        std::vector<long> exps(static_cast<size_t>(nfb), 0);
        for (size_t ci = 0; ci < ps.size(); ci++) {
            int idx = -1;
            for (int j = 0; j < nfb; j++)
                if (fb[static_cast<size_t>(j)].p == p && fb[static_cast<size_t>(j)].comp_index == static_cast<int>(ci)) idx = j;
            if (idx < 0) {
                all_in = false;
                break;
            }
            exps[static_cast<size_t>(idx)] = ps[ci].e;
        }
        if (all_in) rels.push_back({exps, std::vector<std::uint8_t>(static_cast<size_t>(L.r1), 0)});
    }

    std::vector<zint> prev_inv;
    bool stable = false;
    long box = effort.coord_bound;
    for (int pass = 0; pass < effort.passes + 2; pass++) {
        // enumerate primitive coordinate vectors in the box, first nonzero > 0
        std::vector<zint> c(static_cast<size_t>(n), zint(-box));
        while (true) {
            // skip zero and non-canonical/non-primitive vectors
            bool nonzero = false;
            for (const auto& x : c)
                if (x != 0) nonzero = true;
            if (nonzero) {
                int first = -1;
                for (int i = 0; i < n; i++)
                    if (c[static_cast<size_t>(i)] != 0) {
                        first = i;
                        break;
                    }
                bool canonical = c[static_cast<size_t>(first)] > 0;
                if (canonical) {
                    zint g = 0;
                    for (const auto& x : c) g = zgcd(g, x);
                    if (g == 1) {
                        std::string key;
                        for (const auto& x : c) key += x.get_str() + ",";
                        if (!seen.count(key)) {
                            seen.insert(key);
                            zint N = norm_of_coords(c);
                            if (N != 0) {
                                // support within the factor base?
                                zint rest = abs(N);
                                for (const auto& p : fb_primes)
                                    while (zmod(rest, p) == 0) rest /= p;
                                if (rest == 1) {
                                    qpoly rep = coords_to_qpoly(c);
                                    std::vector<long> exps(static_cast<size_t>(nfb), 0);
                                    zint check = 1;
                                    for (int j = 0; j < nfb; j++) {
                                        if (zmod(abs(N), fb[static_cast<size_t>(j)].p) != 0) continue;
                                        long v = L.valuation(rep, fb[static_cast<size_t>(j)].p,
                                                             fb[static_cast<size_t>(j)].comp_index);
                                        exps[static_cast<size_t>(j)] = v;
                                        check *= zpow(fb[static_cast<size_t>(j)].ideal.norm(),
                                                      static_cast<unsigned long>(v));
                                    }
                                    // elements whose ideal support leaves the
                                    // factor base (a prime above p with norm
                                    // beyond the bound) yield no usable relation
                                    if (check != abs(N)) goto next_vector;
                                    std::vector<std::uint8_t> signs(static_cast<size_t>(L.r1), 0);
                                    for (int j = 0; j < L.r1; j++)
                                        signs[static_cast<size_t>(j)] =
                                            nf::sign_at_real_embedding(L, rep, static_cast<size_t>(j)) < 0 ? 1 : 0;
                                    bool triv = true;
                                    for (long e2 : exps)
                                        if (e2 != 0) triv = false;
                                    if (triv) {
                                        bool allpos = true;
                                        for (auto b : signs)
                                            if (b) allpos = false;
                                        if (!allpos) unit_rows.push_back(signs);
                                        // units with all-positive signs carry no
                                        // information for the sign lattice
                                    } else {
                                        rels.push_back({exps, signs});
                                    }
                                }
                            }
                        }
                    }
                }
            }
        next_vector:
            // next vector
            int i = 0;
            while (i < n) {
                c[static_cast<size_t>(i)] += 1;
                if (c[static_cast<size_t>(i)] <= box) break;
                c[static_cast<size_t>(i)] = -box;
                i++;
            }
            if (i == n) break;
        }
        // invariants from the current relation set
        std::vector<std::vector<long>> rows;
        for (const auto& r : rels) rows.push_back(r.exps);
        auto inv = presentation_invariants(nfb, rows);
        bool free_part = false;
        for (const auto& d : inv)
            if (d == 0) free_part = true;
        if (!free_part && pass >= 1 && inv == prev_inv && (nfb == 0 || !rels.empty())) {
            out.invariants = inv;
            stable = true;
            break;
        }
        prev_inv = inv;
        out.invariants = inv;
        box *= 2;
    }
    // unit sign rows from the kernel of the exponent lattice
    {
        zmat E(static_cast<int>(rels.size()), std::max(nfb, 1));
        for (size_t i = 0; i < rels.size(); i++)
            for (int j = 0; j < nfb; j++) E.at(static_cast<int>(i), j) = rels[i].exps[static_cast<size_t>(j)];
        zmat K = zkernel(E);
        for (int i = 0; i < K.rows; i++) {
            std::vector<std::uint8_t> s(static_cast<size_t>(L.r1), 0);
            for (int r = 0; r < static_cast<int>(rels.size()); r++) {
                if (zmod(K.at(i, r), 2) == 0) continue;
                for (int j = 0; j < L.r1; j++) s[static_cast<size_t>(j)] ^= rels[static_cast<size_t>(r)].signs[static_cast<size_t>(j)];
            }
            bool nz = false;
            for (auto b : s)
                if (b) nz = true;
            if (nz) unit_rows.push_back(s);
        }
    }
    out.relations = rels;
    out.unit_signs = unit_rows;
    bool free_part = false;
    for (const auto& d : out.invariants)
        if (d == 0) free_part = true;
    if (free_part)
        throw provider_unavailable_error("builtin class group: relation search did not reach full rank; raise effort or import");
    // trivial-bound certificate: trivial group proven by exhibited relations
    out.heuristic = !(out.invariants.empty());
    out.provenance = "builtin(box=" + std::to_string(box) + ",stable=" + (stable ? "yes" : "no") + ")";
    return out;
}

class_group_data import_class_data(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input_error("import_class_data: cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    json j;
    try {
        j = json::parse(bytes);
    } catch (const std::exception& e) {
        throw invalid_input_error(std::string("import_class_data: JSON parse error: ") + e.what());
    }
    class_group_data out;
    out.source = class_group_data::source_t::imported;
    out.provenance = path;
    out.digest = sha256_hex(bytes);
    if (!j.contains("field") || !j["field"].contains("poly"))
        throw invalid_input_error("import_class_data: missing field.poly");
    {
        std::vector<zint> c;
        for (const auto& x : j["field"]["poly"]) c.push_back(json_zint(x));
        out.field_poly = zpoly(std::move(c));
    }
    out.r1 = static_cast<int>(isolate_real_roots(out.field_poly).size());
    if (j.contains("invariants")) {
        zint prev = 0;
        for (const auto& x : j["invariants"]) {
            zint d = json_zint(x);
            if (d < 2) throw invalid_input_error("import_class_data: invariant factor < 2");
            if (prev != 0 && zmod(d, prev) != 0)
                throw invalid_input_error("import_class_data: invariant factors violate the divisibility chain");
            out.invariants.push_back(d);
            prev = d;
        }
    }
    if (j.contains("generators")) {
        for (const auto& g : j["generators"]) {
            nf::prime_ideal P;
            P.p = json_zint(g.at(0));
            P.e = g.at(1).get<long>();
            P.f = static_cast<int>(g.at(2).get<long>());
            out.generators.push_back(std::move(P));
        }
    }
    if (j.contains("relations")) {
        for (const auto& r : j["relations"]) {
            class_relation rel;
            for (const auto& x : r.at("exponents")) rel.exps.push_back(x.get<long>());
            if (rel.exps.size() != out.generators.size())
                throw invalid_input_error("import_class_data: relation length mismatch");
            for (const auto& x : r.at("sign_vector")) rel.signs.push_back(static_cast<std::uint8_t>(x.get<int>() & 1));
            if (static_cast<int>(rel.signs.size()) != out.r1)
                throw invalid_input_error("import_class_data: sign vector length mismatch");
            out.relations.push_back(std::move(rel));
        }
    }
    if (j.contains("units") && j["units"].contains("sign_matrix")) {
        for (const auto& row : j["units"]["sign_matrix"]) {
            std::vector<std::uint8_t> s;
            for (const auto& x : row) s.push_back(static_cast<std::uint8_t>(x.get<int>() & 1));
            if (static_cast<int>(s.size()) != out.r1)
                throw invalid_input_error("import_class_data: unit sign row length mismatch");
            out.unit_signs.push_back(std::move(s));
        }
    }
    out.heuristic = false;  // imported data is taken verbatim
    return out;
}

narrow_result narrow_class_info(const class_group_data& data) {
    int ng = static_cast<int>(data.generators.size());
    int r1 = data.r1;
    int total = ng + r1;
    std::vector<std::vector<long>> rows;
    // imported data may present the group by invariants without relations:
    // add diagonal rows for the invariant factors acting on pseudo-generators
    if (data.relations.empty() && !data.invariants.empty()) {
        // generators unknown: treat invariants as an already-reduced group; the
        // narrow group then needs the sign data only for the unit quotient
        total = static_cast<int>(data.invariants.size()) + r1;
        for (size_t i = 0; i < data.invariants.size(); i++) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            row[i] = static_cast<long>(data.invariants[i].get_si());
            rows.push_back(std::move(row));
        }
        for (int j = 0; j < r1; j++) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            row[data.invariants.size() + static_cast<size_t>(j)] = 2;
            rows.push_back(std::move(row));
        }
        for (const auto& u : data.unit_signs) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            for (int j = 0; j < r1; j++) row[data.invariants.size() + static_cast<size_t>(j)] = u[static_cast<size_t>(j)];
            rows.push_back(std::move(row));
        }
    } else {
        for (const auto& r : data.relations) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            for (int j = 0; j < ng; j++) row[static_cast<size_t>(j)] = r.exps[static_cast<size_t>(j)];
            for (int j = 0; j < r1; j++) row[static_cast<size_t>(ng + j)] = r.signs[static_cast<size_t>(j)];
            rows.push_back(std::move(row));
        }
        for (int j = 0; j < r1; j++) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            row[static_cast<size_t>(ng + j)] = 2;
            rows.push_back(std::move(row));
        }
        for (const auto& u : data.unit_signs) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            for (int j = 0; j < r1; j++) row[static_cast<size_t>(ng + j)] = u[static_cast<size_t>(j)];
            rows.push_back(std::move(row));
        }
    }
    auto inv = presentation_invariants(total, rows);
    narrow_result res;
    res.h_plus = 1;
    for (const auto& d : inv) {
        if (d == 0) throw internal_inconsistency_error("narrow_class_info: free part in presentation");
        res.h_plus *= d;
    }
    res.odd = zmod(res.h_plus, 2) != 0;
    res.heuristic = data.heuristic;
    return res;
}

cl_star_result cl_star_two_rank(const curve& C, const hypotheses::arch_profile& prof,
                                const std::vector<class_group_data>& data) {
    if (data.size() != C.factor_fields.size())
        throw provider_unavailable_error("cl_star: class data missing for some factor fields");
    int nf_count = static_cast<int>(data.size());
    // validate sign lengths and field identity
    for (int i = 0; i < nf_count; i++) {
        if (data[static_cast<size_t>(i)].r1 != C.factor_fields[static_cast<size_t>(i)]->r1)
            throw invalid_input_error("cl_star: class data real-embedding count mismatch");
    }
    int ns = prof.total_real_embeddings;
    // generator layout: per-field class generators (or invariant pseudo-gens), then sign bits
    std::vector<int> gen_offset(static_cast<size_t>(nf_count));
    int ng = 0;
    std::vector<bool> pseudo(static_cast<size_t>(nf_count), false);
    for (int i = 0; i < nf_count; i++) {
        gen_offset[static_cast<size_t>(i)] = ng;
        const auto& d = data[static_cast<size_t>(i)];
        if (d.relations.empty() && !d.invariants.empty()) {
            pseudo[static_cast<size_t>(i)] = true;
            ng += static_cast<int>(d.invariants.size());
        } else {
            ng += static_cast<int>(d.generators.size());
        }
    }
    int total = ng + ns;
    std::vector<std::vector<long>> rows;
    for (int i = 0; i < nf_count; i++) {
        const auto& d = data[static_cast<size_t>(i)];
        int off = gen_offset[static_cast<size_t>(i)];
        int soff = prof.factor_offset[static_cast<size_t>(i)];
        if (pseudo[static_cast<size_t>(i)]) {
            for (size_t k = 0; k < d.invariants.size(); k++) {
                std::vector<long> row(static_cast<size_t>(total), 0);
                row[static_cast<size_t>(off) + k] = static_cast<long>(d.invariants[k].get_si());
                rows.push_back(std::move(row));
            }
        } else {
            for (const auto& r : d.relations) {
                std::vector<long> row(static_cast<size_t>(total), 0);
                for (size_t j = 0; j < r.exps.size(); j++) row[static_cast<size_t>(off) + j] = r.exps[j];
                for (int j = 0; j < d.r1; j++) row[static_cast<size_t>(ng + soff + j)] = r.signs[static_cast<size_t>(j)];
                rows.push_back(std::move(row));
            }
        }
        for (const auto& u : d.unit_signs) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            for (int j = 0; j < d.r1; j++) row[static_cast<size_t>(ng + soff + j)] = u[static_cast<size_t>(j)];
            rows.push_back(std::move(row));
        }
    }
    // sign bits have order 2
    for (int j = 0; j < ns; j++) {
        std::vector<long> row(static_cast<size_t>(total), 0);
        row[static_cast<size_t>(ng + j)] = 2;
        rows.push_back(std::move(row));
    }
    // quotient by H: marked embeddings free, paired embeddings identified
    for (const auto& pl : prof.places) {
        {
            std::vector<long> row(static_cast<size_t>(total), 0);
            row[static_cast<size_t>(ng + pl.marked_global)] = 1;
            rows.push_back(std::move(row));
        }
        for (const auto& [a, b] : pl.pairs) {
            std::vector<long> row(static_cast<size_t>(total), 0);
            row[static_cast<size_t>(ng + a)] = 1;
            row[static_cast<size_t>(ng + b)] = 1;
            rows.push_back(std::move(row));
        }
    }
    cl_star_result res;
    res.invariants = presentation_invariants(total, rows);
    for (const auto& d : res.invariants) {
        if (d == 0) throw internal_inconsistency_error("cl_star: free part in presentation");
        if (zmod(d, 2) == 0) res.two_rank++;
    }
    res.dim_Q = prof.sum_s;
    res.heuristic = false;
    for (const auto& d : data) res.heuristic = res.heuristic || d.heuristic;
    return res;
}

zint square_class_unit_count(const curve& C, const hypotheses::arch_profile& prof) {
    // closed form: 2^(g [K:Q]) * 2^(sum (i-1)/2 * a_i)
    long e1 = static_cast<long>(C.g) * C.base_degree();
    long pairing_sum = 0;
    for (const auto& [i, cnt] : prof.a_counts) pairing_sum += ((i - 1) / 2) * cnt;
    zint closed = zpow(2, static_cast<unsigned long>(e1 + pairing_sum));
    // direct Dirichlet count: gamma + beta - alpha
    int creal = 0;
    for (const auto& [i, cnt] : prof.a_counts) creal += cnt;
    long c = prof.complex_places;
    long alpha = creal + c;
    long beta = c * C.d;
    long gamma = 0;
    for (const auto& [i, cnt] : prof.a_counts) gamma += cnt * ((C.d + i) / 2);
    zint direct = zpow(2, static_cast<unsigned long>(gamma + beta - alpha));
    if (closed != direct)
        throw internal_inconsistency_error("square_class_unit_count: closed form differs from the direct count");
    return closed;
}

}  // namespace selbound::classgroups
