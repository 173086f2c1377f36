#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace selbound {

// Exact arbitrary-precision integers and rationals. mpq_class keeps
// denominators positive and fractions in lowest terms, which is exactly
// the invariant we need; everything downstream assumes it.
using zint = mpz_class;
using qrat = mpq_class;

struct invalid_input_error : std::runtime_error {
    explicit invalid_input_error(const std::string& m) : std::runtime_error(m) {}
};
struct internal_inconsistency_error : std::runtime_error {
    explicit internal_inconsistency_error(const std::string& m) : std::runtime_error(m) {}
};
struct provider_unavailable_error : std::runtime_error {
    explicit provider_unavailable_error(const std::string& m) : std::runtime_error(m) {}
};
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& m) : std::runtime_error(m) {}
};

inline zint zgcd(const zint& a, const zint& b) {
    zint r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline zint zlcm(const zint& a, const zint& b) {
    zint r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline zint zpow(const zint& a, unsigned long e) {
    zint r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

inline zint zpowmod(const zint& a, const zint& e, const zint& m) {
    zint r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Exact division; throws if b does not divide a.
inline zint zdivexact(const zint& a, const zint& b) {
    if (b == 0) throw invalid_input_error("division by zero");
    zint q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw internal_inconsistency_error("zdivexact: not divisible");
    return q;
}

// Floor-mod into [0, m).
inline zint zmod(const zint& a, const zint& m) {
    zint r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Symmetric lift into (-m/2, m/2].
inline zint zmods(const zint& a, const zint& m) {
    zint r = zmod(a, m);
    if (2 * r > m) r -= m;
    return r;
}

inline zint zinvmod(const zint& a, const zint& m) {
    zint r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw internal_inconsistency_error("zinvmod: not invertible");
    return r;
}

// v_p(a) for a != 0.
inline long zvaluation(const zint& a, const zint& p) {
    if (a == 0) throw invalid_input_error("valuation of zero");
    zint r;
    return static_cast<long>(mpz_remove(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()));
}

inline bool zis_square(const zint& a, zint* root = nullptr) {
    if (a < 0) return false;
    zint s, r;
    mpz_sqrtrem(s.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t());
    if (r != 0) return false;
    if (root) *root = s;
    return true;
}

inline bool qis_square(const qrat& a, qrat* root = nullptr) {
    zint n, d;
    if (!zis_square(a.get_num(), &n)) return false;
    if (!zis_square(a.get_den(), &d)) return false;
    if (root) { *root = qrat(n, d); root->canonicalize(); }
    return true;
}

// Deterministic PRNG (splitmix64). Randomized subroutines seed it from their
// input so reports stay byte-reproducible across runs and machines.
struct detrng {
    std::uint64_t s;
    explicit detrng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = s;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    zint zbelow(const zint& n) {
        if (n <= 0) return 0;
        size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
        while (true) {
            zint r = 0;
            for (size_t i = 0; i < bits; i += 32) {
                r <<= 32;
                r += static_cast<unsigned long>(next() & 0xffffffffull);
            }
            r = zmod(r, zint(1) << bits);
            if (r < n) return r;
        }
    }
};

inline std::uint64_t fnv1a(const void* data, size_t len, std::uint64_t seed = 0xcbf29ce484222325ull) {
    const unsigned char* b = static_cast<const unsigned char*>(data);
    std::uint64_t h = seed;
    for (size_t i = 0; i < len; i++) {
        h ^= b[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t hash_zint(const zint& a, std::uint64_t seed = 0xcbf29ce484222325ull) {
    std::string s = a.get_str(16);
    return fnv1a(s.data(), s.size(), seed);
}

}  // namespace selbound
