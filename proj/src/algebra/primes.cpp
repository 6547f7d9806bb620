#include "algebra/primes.hpp"

#include <algorithm>
#include <map>

namespace csep {

bool is_prime_u64(uint64_t n) {
  Int m(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(m.get_mpz_t(), 40) != 0;
}

uint64_t next_prime_u64(uint64_t n) {
  Int m(static_cast<unsigned long>(n));
  Int r;
  mpz_nextprime(r.get_mpz_t(), m.get_mpz_t());
  return to_u64(r);
}

namespace {

Int rho_brent(const Int& n) {
  // Deterministic restarts: the additive constant walks 1, 2, 3, ...
  for (unsigned long c = 1;; ++c) {
    Int x(2), y(2), d(1);
    Int saved_x = x;
    unsigned long power = 1, lam = 0;
    while (d == 1) {
      if (lam == power) {
        saved_x = y;
        power *= 2;
        lam = 0;
      }
      y = (y * y + c) % n;
      ++lam;
      Int diff = saved_x > y ? saved_x - y : y - saved_x;
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_rec(const Int& n, std::map<Int, int>& acc) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 40)) {
    acc[n] += 1;
    return;
  }
  Int d = rho_brent(n);
  factor_rec(d, acc);
  factor_rec(n / d, acc);
}

}  // namespace

std::vector<std::pair<Int, int>> factorize(Int n) {
  if (n < 1) throw Error(Errc::invalid_input, "factorize expects n >= 1");
  std::map<Int, int> acc;
  for (uint64_t p = 2; p < 1000000 && Int(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) <= n;
       p = next_prime_u64(p)) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      acc[Int(static_cast<unsigned long>(p))] += 1;
      n /= static_cast<unsigned long>(p);
    }
  }
  factor_rec(n, acc);
  return {acc.begin(), acc.end()};
}

}  // namespace csep
