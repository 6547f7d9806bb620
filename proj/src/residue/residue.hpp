#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "algebra/poly_fp.hpp"
#include "nf/number_field.hpp"

namespace csep {

// Finitely generated ring inside a number field: generators pin down
// p-integrality, must_be_unit elements additionally have to reduce to units
// under every factor at a good prime.
struct TrackedRing {
  FieldPtr K;
  std::vector<NFElement> generators;
  std::vector<NFElement> must_be_unit;

  void add_generator(const NFElement& x) { generators.push_back(x); }
  void add_unit(const NFElement& x) {
    generators.push_back(x);
    must_be_unit.push_back(x);
  }
};

// p together with one monic irreducible factor of the minimal polynomial
// mod p; realizes the residue class field map onto F_{p^d}.
struct ResidueMap {
  FieldPtr K;
  uint64_t p = 0;
  PolyFp factor;

  int dim() const { return factor.degree(); }
  Int card() const;  // p^d
  bool same_target(const ResidueMap& o) const {
    return p == o.p && factor == o.factor;
  }
};

class FFElem {
 public:
  FFElem() = default;
  FFElem(std::shared_ptr<const ResidueMap> map, std::vector<uint64_t> coeffs);

  static FFElem zero(const std::shared_ptr<const ResidueMap>& m);
  static FFElem one(const std::shared_ptr<const ResidueMap>& m);
  static FFElem from_int(const std::shared_ptr<const ResidueMap>& m, uint64_t v);

  const std::shared_ptr<const ResidueMap>& map() const { return map_; }
  const std::vector<uint64_t>& coeffs() const { return c_; }
  bool is_zero() const;
  bool in_prime_field() const;  // lies in F_p

  FFElem operator+(const FFElem& o) const;
  FFElem operator-(const FFElem& o) const;
  FFElem operator*(const FFElem& o) const;
  FFElem inverse() const;
  FFElem pow(const Int& e) const;
  bool operator==(const FFElem& o) const;
  bool operator!=(const FFElem& o) const { return !(*this == o); }

 private:
  PolyFp as_poly() const;
  std::shared_ptr<const ResidueMap> map_;
  std::vector<uint64_t> c_;
};

using ResidueMapPtr = std::shared_ptr<const ResidueMap>;

// One map per irreducible factor of min_poly mod p, sorted by
// (degree, coefficients).  Rejects ramified primes and primes dividing
// coefficient denominators of the minimal polynomial.
std::vector<ResidueMapPtr> residue_split(const FieldPtr& K, uint64_t p);

bool is_unramified(const FieldPtr& K, uint64_t p);

// Homomorphic reduction; throws not_p_integral when p divides a coefficient
// denominator.
FFElem reduce(const ResidueMapPtr& m, const NFElement& x);

// Exact multiplicative order via the factorization of p^d - 1.
Int mult_order(const FFElem& x);

// x in <y>, decided by divisibility of orders in the cyclic group F*.
bool in_cyclic(const FFElem& x, const FFElem& y);

// Discrete log of x in <base>; nullopt when absent.  Baby-step giant-step.
std::optional<Int> discrete_log(const FFElem& x, const FFElem& base);

// Joint F_p-span test: coefficients c_i in F_p with
// sum c_i * reduce(m, basis_i) = reduce(m, x) under every supplied map
// simultaneously.  All maps must share p.
std::optional<std::vector<uint64_t>> span_member(const NFElement& x,
                                                 const std::vector<NFElement>& basis,
                                                 const std::vector<ResidueMapPtr>& maps);

using TraceFn = std::function<void(const std::string&)>;

// Ascending stream of primes at which every tracked ring is defined: p avoids
// the discriminant and all generator denominators, and must_be_unit elements
// reduce to units under every factor.
class GoodPrimeStream {
 public:
  GoodPrimeStream(std::vector<TrackedRing> rings, uint64_t max_prime, TraceFn trace = {});
  std::optional<uint64_t> next();

 private:
  bool good(uint64_t p) const;
  std::vector<TrackedRing> rings_;
  uint64_t max_prime_;
  uint64_t current_ = 1;
  TraceFn trace_;
};

bool is_good_prime(const std::vector<TrackedRing>& rings, uint64_t p);

// The residue map of the subfield K under a map of an extension of K:
// the factor of K's minimal polynomial below m_ext.  lift sends K's generator
// into the extension.
ResidueMapPtr restrict_map(const ResidueMapPtr& m_ext, const FieldHom& lift);

}  // namespace csep
