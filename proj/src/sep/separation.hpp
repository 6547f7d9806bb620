#pragma once

#include <string>
#include <variant>

#include "nf/embedding.hpp"
#include "residue/residue.hpp"

namespace csep {

struct SearchBudget {
  uint64_t max_prime = 100000;
  int max_exponent = 64;
  int max_prime_pairs = 200;
  long precision_bits = 4096;
  uint64_t enum_cap = 1000000;
};

enum class OrderMode { exact, divisible_by };

struct OrderPrimeResult {
  ResidueMapPtr map;
  Int achieved_order;
  OrderMode mode;
};

struct RootOfUnity {
  Int order;
};

struct BudgetExhausted {
  std::string detail;
};

using OrderPrimeOutcome = std::variant<OrderPrimeResult, RootOfUnity, BudgetExhausted>;

// Smallest good prime (then first factor) where the image of delta has
// multiplicative order equal to m (exact) or divisible by m.  Every
// must_be_unit element of the ring stays a unit at the chosen prime.
OrderPrimeOutcome find_order_prime(const NFElement& delta, const Int& m, const TrackedRing& ring,
                                   OrderMode mode, const SearchBudget& budget, TraceFn trace = {});

// Per-prime predicate used by find_order_prime, exposed for searches that
// interleave extra conditions: first factor at p matching the order
// constraint, if any.
std::optional<OrderPrimeResult> order_prime_at(const NFElement& delta, const Int& m, uint64_t p,
                                               OrderMode mode);

struct PowerSeparation {
  std::vector<ResidueMapPtr> maps;  // one map, or a pair with a joint claim
};

struct NotSeparable {
  Int exponent;
};

using PowerOutcome = std::variant<PowerSeparation, NotSeparable, BudgetExhausted>;

// Witness that lam is not a power of omega: a single residue map with
// image(lam) outside <image(omega)> when one exists below the budget, else
// the first pair of maps whose discrete logarithms are incompatible.
PowerOutcome separate_power(const NFElement& lam, const NFElement& omega, const TrackedRing& ring,
                            const SearchBudget& budget, TraceFn trace = {});

struct AdditiveSeparation {
  uint64_t p = 0;
  std::vector<ResidueMapPtr> maps;  // single factor, or every factor at p jointly
};

struct AdditiveMembership {
  Int m, n;  // b = m + n*beta
};

struct AdditiveNotApplicable {};  // b lies in Q + Q*beta (not in the lattice question's scope)

using AdditiveOutcome =
    std::variant<AdditiveSeparation, AdditiveMembership, AdditiveNotApplicable, BudgetExhausted>;

// Witness that the image of b avoids the image of {m + n*beta | m, n in Z}.
// When b lies in Q(beta) the joint all-factor system is scanned; otherwise
// single factors are scanned.
AdditiveOutcome separate_additive(const NFElement& b, const NFElement& beta,
                                  const TrackedRing& ring, const SearchBudget& budget,
                                  TraceFn trace = {});

// Exact root-of-unity test: the order when x^j = 1 for some j <= 2*deg^2.
std::optional<Int> root_of_unity_order(const NFElement& x);

// First embedding handle whose modulus of x separates from 1, scanning root
// indices in order.
std::optional<EmbeddingHandle> embedding_with_nonunit_modulus(const NFElement& x,
                                                              const SearchBudget& budget);

}  // namespace csep
