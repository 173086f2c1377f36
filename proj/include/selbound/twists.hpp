#pragma once

#include <optional>

#include "selbound/bounds.hpp"

namespace selbound::twists {

struct eligibility_report {
    bool eligible = false;
    nf::splitting_report splitting;
};

// Twist eligibility: every prime of K above q inert or totally ramified in
// A_K/K. Requires p irreducible over the base; refuses otherwise.
eligibility_report eligible(const curve& C, const zint& q);

struct twist_record {
    int schema_version = 1;
    zint q;
    std::string pattern;  // "inert" or "totally_ramified"
    long lower = 0, upper = 0;
    int cl_star_two_rank = 0;
    std::string mode;
    long duration_ms = 0;
};

struct density_report {
    int schema_version = 1;
    zint max_prime;
    long primes_scanned = 0;
    long inert = 0;
    long totally_ramified = 0;
    long eligible_count = 0;
    double observed_inert_frequency = 0.0;
    std::optional<double> declared_expectation;
    double sigma = 0.0;      // binomial model when an expectation is declared
    bool within_3_sigma = true;
    std::string note =
        "bounds windows only; exact 2-Selmer ranks of the twists are an external claim not reproduced here";
    // window-equality check across eligible twists
    bool uniform_window = true;
};

struct scan_options {
    zint max_prime = 100;
    std::string out_path;
    int jobs = 1;
    std::optional<double> declared_inert_density;
    bounds::analysis_options analysis;
    bool conditional_ok = false;
};

// Append-only newline-delimited JSON records (one per eligible prime,
// ascending); resumes after the last complete record in out_path.
density_report scan(const curve& C, const scan_options& opt);

}  // namespace selbound::twists
