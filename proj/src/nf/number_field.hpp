#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "algebra/poly_q.hpp"

namespace csep {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// k = Q[T]/(f) with f monic.  Irreducibility of user-supplied polynomials is
// asserted, not proven; see spot_check_irreducible.
class NumberField : public std::enable_shared_from_this<NumberField> {
 public:
  static FieldPtr create(std::string variable, PolyQ min_poly, bool asserted_irreducible = true);
  static FieldPtr rationals();  // Q presented as Q[T]/(T)

  const std::string& variable() const { return var_; }
  const PolyQ& min_poly() const { return f_; }
  int degree() const { return f_.degree(); }
  bool asserted_irreducible() const { return asserted_irreducible_; }

  const Rat& disc() const;  // discriminant of min_poly, cached

  // Confirms irreducibility when some good prime keeps f irreducible mod p.
  // Returns false when the check is inconclusive (not a refutation).
  bool spot_check_irreducible() const;

  bool same_presentation(const NumberField& o) const {
    return var_ == o.var_ && f_ == o.f_;
  }

 private:
  NumberField(std::string v, PolyQ f, bool ai)
      : var_(std::move(v)), f_(std::move(f)), asserted_irreducible_(ai) {}
  std::string var_;
  PolyQ f_;
  bool asserted_irreducible_;
  mutable std::mutex mu_;
  mutable std::optional<Rat> disc_;
  mutable std::optional<bool> spot_checked_;
};

class NFElement {
 public:
  NFElement() = default;
  NFElement(FieldPtr field, std::vector<Rat> coeffs);

  static NFElement zero(const FieldPtr& K);
  static NFElement one(const FieldPtr& K);
  static NFElement from_rational(const FieldPtr& K, const Rat& r);
  static NFElement generator(const FieldPtr& K);
  static NFElement from_poly(const FieldPtr& K, const PolyQ& rep);  // reduced mod f

  const FieldPtr& field() const { return K_; }
  const std::vector<Rat>& coeffs() const { return c_; }
  PolyQ rep() const { return PolyQ(c_); }

  bool is_zero() const;
  bool is_rational() const;
  Rat to_rational() const;  // requires is_rational

  NFElement operator-() const;
  NFElement operator+(const NFElement& o) const;
  NFElement operator-(const NFElement& o) const;
  NFElement operator*(const NFElement& o) const;
  NFElement operator/(const NFElement& o) const;
  NFElement inverse() const;
  NFElement pow(const Int& e) const;
  bool operator==(const NFElement& o) const;
  bool operator!=(const NFElement& o) const { return !(*this == o); }

  NFElement operator*(const Rat& r) const;
  NFElement operator+(const Rat& r) const;
  NFElement operator-(const Rat& r) const;

  // True when every coefficient denominator is coprime to p.
  bool is_p_integral(uint64_t p) const;

 private:
  void check_same(const NFElement& o) const;
  FieldPtr K_;
  std::vector<Rat> c_;
};

// Monic minimal polynomial of x over Q; degree divides the field degree.
PolyQ min_poly_of(const NFElement& x);

// Evaluation of a rational polynomial at a field element.
NFElement eval_poly(const PolyQ& f, const NFElement& x);

// Ring homomorphism between field presentations determined by the image of
// the source generator.  Identity maps are allowed (from == to).
struct FieldHom {
  FieldPtr from;
  FieldPtr to;
  NFElement gen_image;

  static FieldHom identity(const FieldPtr& K);
  NFElement apply(const NFElement& x) const;
  FieldHom then(const FieldHom& next) const;  // this followed by next
  bool is_identity() const { return from.get() == to.get(); }
};

// Dense polynomials with NFElement coefficients; just enough for gcd-based
// generator recovery in extensions.
using PolyNF = std::vector<NFElement>;

PolyNF polynf_from_polyq(const FieldPtr& K, const PolyQ& f);
int polynf_degree(const PolyNF& f);
void polynf_trim(PolyNF& f);
PolyNF polynf_mul(const PolyNF& a, const PolyNF& b);
PolyNF polynf_add(const PolyNF& a, const PolyNF& b);
PolyNF polynf_sub(const PolyNF& a, const PolyNF& b);
void polynf_divrem(const PolyNF& a, const PolyNF& b, PolyNF& q, PolyNF& r);
PolyNF polynf_gcd(PolyNF a, PolyNF b);  // monic
NFElement polynf_eval(const PolyNF& f, const NFElement& x);

// Solves sum_i c_i * basis_i = x over Q; nullopt when x is outside the span.
std::optional<std::vector<Rat>> solve_q_linear(const std::vector<NFElement>& basis,
                                               const NFElement& x);

}  // namespace csep
