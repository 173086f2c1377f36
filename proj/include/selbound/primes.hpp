#pragma once

#include <map>
#include <vector>

#include "selbound/ints.hpp"

namespace selbound {

bool is_prime(const zint& n);
zint next_prime(const zint& n);

// Full factorization: map prime -> exponent. Trial division plus
// Pollard-Brent rho; adequate for the discriminant sizes we meet.
std::map<zint, long> factorize(const zint& n);

// Primes in [2, bound], ascending.
std::vector<long> primes_up_to(long bound);

}  // namespace selbound
