#pragma once

#include <cstdint>
#include <vector>

#include "support/bigint.hpp"

namespace csep {

uint64_t next_prime_u64(uint64_t n);
bool is_prime_u64(uint64_t n);

// Prime factorization of n >= 1, pairs (prime, exponent) sorted ascending.
// Trial division below 10^6, then deterministic Brent-Pollard rho.
std::vector<std::pair<Int, int>> factorize(Int n);

}  // namespace csep
