#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algebra/poly_q.hpp"
#include "support/bigint.hpp"

namespace csep {

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p);
uint64_t inv_mod(uint64_t a, uint64_t p);
uint64_t pow_mod(uint64_t a, const Int& e, uint64_t p);

// Dense univariate polynomial over F_p, constant term first, coefficients
// reduced to [0, p).  Zero polynomial is the empty list.
class PolyFp {
 public:
  PolyFp() : p_(0) {}
  PolyFp(uint64_t p, std::vector<uint64_t> coeffs);

  static PolyFp zero(uint64_t p) { return PolyFp(p, {}); }
  static PolyFp one(uint64_t p) { return PolyFp(p, {1}); }
  static PolyFp constant(uint64_t p, uint64_t a) { return PolyFp(p, {a}); }
  static PolyFp variable(uint64_t p) { return PolyFp(p, {0, 1}); }

  uint64_t p() const { return p_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<uint64_t>& coeffs() const { return c_; }
  uint64_t coeff(size_t i) const { return i < c_.size() ? c_[i] : 0; }
  uint64_t lc() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  PolyFp operator+(const PolyFp& o) const;
  PolyFp operator-(const PolyFp& o) const;
  PolyFp operator*(const PolyFp& o) const;
  bool operator==(const PolyFp& o) const { return p_ == o.p_ && c_ == o.c_; }
  bool operator!=(const PolyFp& o) const { return !(*this == o); }

  PolyFp monic() const;
  PolyFp derivative() const;
  uint64_t eval(uint64_t x) const;

  static void divrem(const PolyFp& a, const PolyFp& b, PolyFp& q, PolyFp& r);
  static PolyFp rem(const PolyFp& a, const PolyFp& b);
  static PolyFp gcd(PolyFp a, PolyFp b);  // monic
  static PolyFp pow_mod(const PolyFp& base, const Int& e, const PolyFp& mod);

  // (degree, coefficients constant-first) ordering used everywhere factors
  // are listed.
  static bool order_less(const PolyFp& a, const PolyFp& b);

 private:
  void trim();
  void check_same(const PolyFp& o) const;
  uint64_t p_;
  std::vector<uint64_t> c_;
};

// Monic irreducible factors with multiplicities, sorted by
// (degree, lexicographic coefficients).  Input must be nonzero and monic.
std::vector<std::pair<PolyFp, int>> factor_mod_p(const PolyFp& f);

bool is_irreducible_mod_p(const PolyFp& f);

// Coefficient-wise reduction; nullopt when p divides a denominator.
std::optional<PolyFp> poly_q_mod_p(const PolyQ& f, uint64_t p);

}  // namespace csep
