#include "selbound/twists.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <thread>

#include "selbound/primes.hpp"

namespace selbound::twists {

using json = nlohmann::ordered_json;
using namespace selbound::bounds;

eligibility_report eligible(const curve& C, const zint& q) {
    if (C.r() != 1)
        throw invalid_input_error(
            "eligible: the twisting criterion requires p(x) irreducible over the base field "
            "(the irreducibility hypothesis cannot be removed)");
    eligibility_report rep;
    if (C.base_is_q()) {
        nf::etale_algebra A;
        A.p = arith::to_qpoly(C.pz);
        A.factors = {C.factor_fields[0]};
        rep.splitting = nf::splitting_type(A, q);
        rep.eligible = rep.splitting.eligible;
        return rep;
    }
    // base K: every prime of K above q must be inert or totally ramified in
    // the factor field; inspect the absolute splitting over each place of K
    auto SK = C.K->split(q);
    auto SB = std::make_shared<nf::split_result>(nf::split_at_p(C.Babs, q, 24));
    int nk = C.K->degree(), nb = C.Babs.n;
    rep.eligible = true;
    for (size_t vi = 0; vi < SK->comps.size(); vi++) {
        const auto& vcomp = SK->comps[vi];
        std::vector<qrat> idem_amb(static_cast<size_t>(nb), qrat(0));
        for (int j = 0; j < nk; j++) {
            qrat acc = 0;
            for (int i = 0; i < nk; i++)
                acc += qrat(vcomp.idem[static_cast<size_t>(i)] * C.K->basis_num.at(i, j)) / qrat(C.K->basis_den);
            idem_amb[static_cast<size_t>(j)] = acc;
        }
        auto idemB = SB->to_order_coords_mod(idem_amb);
        int over = 0;
        long e_rel = 0, f_rel = 0;
        for (size_t w = 0; w < SB->comps.size(); w++) {
            auto prod = SB->O.A.mul_mod(idemB, SB->comps[w].idem, SB->pN);
            bool nz = false;
            for (const auto& x : prod)
                if (zmod(x, q) != 0) nz = true;
            if (nz) {
                over++;
                e_rel = SB->comps[w].e / vcomp.e;
                f_rel = SB->comps[w].fdeg / vcomp.fdeg;
            }
        }
        bool ok = over == 1 && ((e_rel == 1 && f_rel == C.d) || (e_rel == C.d && f_rel == 1));
        nf::split_kind kind = nf::split_kind::other;
        if (over == 1 && e_rel == 1 && f_rel == C.d) kind = nf::split_kind::inert;
        if (over == 1 && e_rel == C.d && f_rel == 1) kind = nf::split_kind::totally_ramified;
        rep.splitting.per_factor.push_back(kind);
        if (!ok) rep.eligible = false;
    }
    rep.splitting.eligible = rep.eligible;
    return rep;
}

namespace {

json record_to_json(const twist_record& r) {
    json j;
    j["schema_version"] = r.schema_version;
    j["q"] = r.q.get_str();
    j["pattern"] = r.pattern;
    j["lower"] = r.lower;
    j["upper"] = r.upper;
    j["cl_star_two_rank"] = r.cl_star_two_rank;
    j["mode"] = r.mode;
    j["duration_ms"] = r.duration_ms;
    return j;
}

}  // namespace

density_report scan(const curve& C, const scan_options& opt) {
    if (!C.base_is_q())
        throw provider_unavailable_error("twist scanning is provided for base Q curves");
    if (C.r() != 1) throw invalid_input_error("scan: p(x) must be irreducible (twisting hypothesis)");

    // base analysis once; its class data transfers to every twist: the twisted
    // algebra is the same field (x -> x/q is an isomorphism preserving the
    // real-embedding order since q > 0)
    auto base_analysis = bounds::analyze(C, opt.analysis);
    if (base_analysis.bounds.mode != bound_mode::unconditional && !opt.conditional_ok)
        throw invalid_input_error("scan: base curve analysis is conditional; pass --conditional-ok to proceed");

    // resume point
    zint last_done = 0;
    {
        std::ifstream in(opt.out_path);
        std::string line, lastline;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '}') lastline = line;
        }
        if (!lastline.empty()) {
            auto j = json::parse(lastline, nullptr, false);
            if (!j.is_discarded() && j.contains("q")) last_done = zint(j["q"].get<std::string>().c_str());
        }
    }

    // eligibility sweep over all primes up to the bound (cheap, also feeds the
    // density statistics after a resume)
    density_report dr;
    dr.max_prime = opt.max_prime;
    dr.declared_expectation = opt.declared_inert_density;
    std::vector<std::pair<zint, std::string>> todo;  // eligible primes beyond the resume point
    for (zint p = 2; p <= opt.max_prime; p = next_prime(p)) {
        dr.primes_scanned++;
        auto er = eligible(C, p);
        if (!er.eligible) continue;
        std::string pattern = er.splitting.per_factor[0] == nf::split_kind::inert ? "inert" : "totally_ramified";
        if (pattern == "inert") dr.inert++;
        else dr.totally_ramified++;
        dr.eligible_count++;
        if (p > last_done) todo.emplace_back(p, pattern);
    }
    dr.observed_inert_frequency =
        dr.primes_scanned ? static_cast<double>(dr.inert) / static_cast<double>(dr.primes_scanned) : 0.0;
    if (dr.declared_expectation) {
        double n = static_cast<double>(dr.primes_scanned), e = *dr.declared_expectation;
        dr.sigma = std::sqrt(n * e * (1 - e));
        dr.within_3_sigma = std::abs(static_cast<double>(dr.inert) - n * e) <= 3 * dr.sigma;
    }

    // analyze eligible twists with a small worker pool; the committer writes
    // records in ascending order
    bounds::analysis_options twist_opt = opt.analysis;
    twist_opt.class_data_imports.clear();
    {
        auto shared = base_analysis.class_data;
        twist_opt.provided_class_data = std::move(shared);
    }
    std::vector<twist_record> results(todo.size());
    std::vector<char> done(todo.size(), 0);
    std::atomic<size_t> next{0};
    std::mutex done_mu;
    auto worker = [&]() {
        while (true) {
            size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            auto t0 = std::chrono::steady_clock::now();
            curve Ct = twist_curve(C, todo[i].first);
            bounds::analysis_options o = twist_opt;
            // remap the shared class data onto the twisted factor polynomial
            (*o.provided_class_data)[0].field_poly = Ct.factors_z[0];
            auto A = bounds::analyze(Ct, o);
            twist_record r;
            r.q = todo[i].first;
            r.pattern = todo[i].second;
            r.lower = A.bounds.lower;
            r.upper = A.bounds.upper;
            r.cl_star_two_rank = A.bounds.cl_star_two_rank;
            r.mode = bounds::to_string(A.bounds.mode);
            r.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0)
                                .count();
            std::lock_guard<std::mutex> lk(done_mu);
            results[i] = std::move(r);
            done[i] = 1;
        }
    };
    int jobs = std::max(1, opt.jobs);
    std::vector<std::thread> pool;
    for (int j = 1; j < jobs; j++) pool.emplace_back(worker);
    // the calling thread both works and commits
    std::ofstream out(opt.out_path, std::ios::app);
    size_t committed = 0;
    auto flush_ready = [&]() {
        while (committed < todo.size()) {
            {
                std::lock_guard<std::mutex> lk(done_mu);
                if (!done[committed]) break;
            }
            out << record_to_json(results[committed]).dump() << "\n";
            out.flush();
            committed++;
        }
    };
    worker();
    for (auto& th : pool) th.join();
    flush_ready();
    if (committed != todo.size()) throw internal_inconsistency_error("scan: committer did not drain");

    // uniform-window check across this run's records
    for (size_t i = 1; i < results.size(); i++) {
        if (results[i].upper - results[i].lower != results[0].upper - results[0].lower) dr.uniform_window = false;
    }
    return dr;
}

}  // namespace selbound::twists
