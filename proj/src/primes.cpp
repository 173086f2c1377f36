#include "selbound/primes.hpp"

#include <algorithm>

namespace selbound {

bool is_prime(const zint& n) {
    if (n < 2) return false;
    // 50 Miller-Rabin rounds on top of GMP's base tests.
    return mpz_probab_prime_p(n.get_mpz_t(), 50) != 0;
}

zint next_prime(const zint& n) {
    zint r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

namespace {

zint pollard_brent(const zint& n, detrng& rng) {
    if (n % 2 == 0) return 2;
    while (true) {
        zint y = rng.zbelow(n - 1) + 1;
        zint c = rng.zbelow(n - 1) + 1;
        zint m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (zint i = 0; i < r; i++) y = zmod(y * y + c, n);
            zint k = 0;
            while (k < r && g == 1) {
                ys = y;
                zint rk = r - k;
                const zint& lim = rk < m ? rk : m;
                for (zint i = 0; i < lim; i++) {
                    y = zmod(y * y + c, n);
                    q = zmod(q * (x - y), n);
                }
                g = zgcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = zmod(ys * ys + c, n);
                g = zgcd(x - ys, n);
            }
        }
        if (g != n) return g;
    }
}

void factor_rec(const zint& n, std::map<zint, long>& out, detrng& rng) {
    if (n == 1) return;
    if (is_prime(n)) {
        out[n]++;
        return;
    }
    zint d = pollard_brent(n, rng);
    factor_rec(d, out, rng);
    factor_rec(n / d, out, rng);
}

}  // namespace

std::map<zint, long> factorize(const zint& n) {
    if (n == 0) throw invalid_input_error("factorize(0)");
    std::map<zint, long> out;
    zint m = abs(n);
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L, 41L, 43L, 47L}) {
        while (m % p == 0) {
            out[zint(p)]++;
            m /= p;
        }
    }
    // deterministic seed from the remaining cofactor
    detrng rng(hash_zint(m, 0x5e1b0c2d9f8a7e63ull));
    factor_rec(m, out, rng);
    return out;
}

std::vector<long> primes_up_to(long bound) {
    std::vector<long> out;
    if (bound < 2) return out;
    std::vector<bool> sieve(static_cast<size_t>(bound) + 1, true);
    for (long i = 2; i <= bound; i++) {
        if (sieve[static_cast<size_t>(i)]) {
            out.push_back(i);
            for (long j = 2 * i; j <= bound; j += i) sieve[static_cast<size_t>(j)] = false;
        }
    }
    return out;
}

}  // namespace selbound
