#pragma once

#include <cstddef>
#include <vector>

#include "support/bigint.hpp"

namespace csep {

// Dense univariate polynomial over Q, constant term first.  The zero
// polynomial is the empty coefficient list.
class PolyQ {
 public:
  PolyQ() = default;
  explicit PolyQ(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static PolyQ zero() { return PolyQ(); }
  static PolyQ one() { return constant(Rat(1)); }
  static PolyQ constant(const Rat& a);
  static PolyQ variable();  // X
  static PolyQ from_strings(const std::vector<std::string>& ss);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(size_t i) const { return i < c_.size() ? c_[i] : Rat(0); }
  const Rat& lc() const;
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  PolyQ operator-() const;
  PolyQ operator+(const PolyQ& o) const;
  PolyQ operator-(const PolyQ& o) const;
  PolyQ operator*(const PolyQ& o) const;
  PolyQ scaled(const Rat& a) const;
  bool operator==(const PolyQ& o) const { return c_ == o.c_; }
  bool operator!=(const PolyQ& o) const { return c_ != o.c_; }

  PolyQ monic() const;
  PolyQ derivative() const;
  Rat eval(const Rat& x) const;
  PolyQ shifted(size_t k) const;  // multiply by X^k

  // Euclidean division: a = q*b + r with deg r < deg b.  b must be nonzero.
  static void divrem(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r);
  static PolyQ rem(const PolyQ& a, const PolyQ& b);

  // Monic gcd.
  static PolyQ gcd(PolyQ a, PolyQ b);

  std::vector<std::string> to_strings() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

// Resultant of nonzero f, g via the subresultant pseudo-remainder sequence
// on primitive integer parts, with rational content tracked separately.
Rat resultant(const PolyQ& f, const PolyQ& g);

bool is_squarefree(const PolyQ& f);

// (-1)^{n(n-1)/2} res(f, f') / lc(f) for nonconstant f; 1 for linear f.
Rat discriminant(const PolyQ& f);

// Unique interpolating polynomial of degree < points.size().
PolyQ interpolate(const std::vector<std::pair<Rat, Rat>>& points);

}  // namespace csep
