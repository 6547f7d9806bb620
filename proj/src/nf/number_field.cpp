#include "nf/number_field.hpp"

#include <algorithm>

#include "algebra/poly_fp.hpp"
#include "algebra/primes.hpp"

namespace csep {

FieldPtr NumberField::create(std::string variable, PolyQ min_poly, bool asserted_irreducible) {
  if (min_poly.degree() < 1) throw Error(Errc::invalid_input, "minimal polynomial must be nonconstant");
  if (!min_poly.is_monic()) throw Error(Errc::invalid_input, "minimal polynomial must be monic");
  if (!is_squarefree(min_poly)) throw Error(Errc::invalid_input, "minimal polynomial must be squarefree");
  return FieldPtr(new NumberField(std::move(variable), std::move(min_poly), asserted_irreducible));
}

FieldPtr NumberField::rationals() {
  static FieldPtr q = create("t", PolyQ::variable(), true);
  return q;
}

const Rat& NumberField::disc() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!disc_) disc_ = degree() == 1 ? Rat(1) : discriminant(f_);
  return *disc_;
}

bool NumberField::spot_check_irreducible() const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (spot_checked_) return *spot_checked_;
  }
  bool ok = false;
  if (degree() == 1) {
    ok = true;
  } else {
    uint64_t p = 2;
    for (int tried = 0; tried < 25 && !ok; p = next_prime_u64(p)) {
      auto fp = poly_q_mod_p(f_, p);
      if (!fp || fp->degree() != degree()) continue;
      Int dn = rat_num(disc());
      if (mpz_divisible_ui_p(dn.get_mpz_t(), p)) continue;
      ++tried;
      if (is_irreducible_mod_p(*fp)) ok = true;
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  spot_checked_ = ok;
  return ok;
}

NFElement::NFElement(FieldPtr field, std::vector<Rat> coeffs) : K_(std::move(field)), c_(std::move(coeffs)) {
  if (!K_) throw Error(Errc::invalid_input, "element without a field");
  if (static_cast<int>(c_.size()) != K_->degree())
    throw Error(Errc::invalid_input, "coefficient count must equal the field degree");
}

NFElement NFElement::zero(const FieldPtr& K) {
  return NFElement(K, std::vector<Rat>(K->degree(), Rat(0)));
}

NFElement NFElement::one(const FieldPtr& K) { return from_rational(K, Rat(1)); }

NFElement NFElement::from_rational(const FieldPtr& K, const Rat& r) {
  std::vector<Rat> c(K->degree(), Rat(0));
  c[0] = r;
  return NFElement(K, std::move(c));
}

NFElement NFElement::generator(const FieldPtr& K) {
  return from_poly(K, PolyQ::variable());
}

NFElement NFElement::from_poly(const FieldPtr& K, const PolyQ& rep) {
  PolyQ r = rep.degree() >= K->degree() ? PolyQ::rem(rep, K->min_poly()) : rep;
  std::vector<Rat> c(K->degree(), Rat(0));
  for (int i = 0; i <= r.degree(); ++i) c[i] = r.coeff(i);
  return NFElement(K, std::move(c));
}

bool NFElement::is_zero() const {
  for (const auto& a : c_)
    if (a != 0) return false;
  return true;
}

bool NFElement::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat NFElement::to_rational() const {
  if (!is_rational()) throw Error(Errc::invalid_input, "element is not rational");
  return c_[0];
}

void NFElement::check_same(const NFElement& o) const {
  if (K_.get() == o.K_.get()) return;
  if (K_ && o.K_ && K_->same_presentation(*o.K_)) return;
  throw Error(Errc::field_mismatch, "elements of different fields");
}

NFElement NFElement::operator-() const {
  std::vector<Rat> c = c_;
  for (auto& a : c) a = -a;
  return NFElement(K_, std::move(c));
}

NFElement NFElement::operator+(const NFElement& o) const {
  check_same(o);
  std::vector<Rat> c = c_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
  return NFElement(K_, std::move(c));
}

NFElement NFElement::operator-(const NFElement& o) const { return *this + (-o); }

NFElement NFElement::operator*(const NFElement& o) const {
  check_same(o);
  return from_poly(K_, rep() * o.rep());
}

NFElement NFElement::inverse() const {
  if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero");
  // Extended gcd of the representative with the minimal polynomial.
  PolyQ r0 = K_->min_poly(), r1 = rep();
  PolyQ t0 = PolyQ::zero(), t1 = PolyQ::one();
  while (!r1.is_zero()) {
    PolyQ q, r;
    PolyQ::divrem(r0, r1, q, r);
    PolyQ t = t0 - q * t1;
    r0 = r1;
    r1 = r;
    t0 = t1;
    t1 = t;
  }
  if (r0.degree() != 0)
    throw Error(Errc::division_by_zero,
                "representative shares a factor with the modulus; the presented ring is not a field");
  return from_poly(K_, t0.scaled(1 / r0.lc()));
}

NFElement NFElement::operator/(const NFElement& o) const { return *this * o.inverse(); }

NFElement NFElement::pow(const Int& e) const {
  if (e < 0) return inverse().pow(-e);
  NFElement base = *this, acc = one(K_);
  Int n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool NFElement::operator==(const NFElement& o) const {
  check_same(o);
  return c_ == o.c_;
}

NFElement NFElement::operator*(const Rat& r) const {
  std::vector<Rat> c = c_;
  for (auto& a : c) a *= r;
  return NFElement(K_, std::move(c));
}

NFElement NFElement::operator+(const Rat& r) const {
  std::vector<Rat> c = c_;
  c[0] += r;
  return NFElement(K_, std::move(c));
}

NFElement NFElement::operator-(const Rat& r) const { return *this + (-r); }

bool NFElement::is_p_integral(uint64_t p) const {
  for (const auto& a : c_) {
    Int den = rat_den(a);
    if (mpz_divisible_ui_p(den.get_mpz_t(), p)) return false;
  }
  return true;
}

NFElement eval_poly(const PolyQ& f, const NFElement& x) {
  NFElement acc = NFElement::zero(x.field());
  for (size_t i = f.coeffs().size(); i-- > 0;) acc = acc * x + f.coeff(i);
  return acc;
}

PolyQ min_poly_of(const NFElement& x) {
  const int n = x.field()->degree();
  // Rows are coordinates of x^0, x^1, ...; the first linear dependence gives
  // the minimal relation.
  std::vector<std::vector<Rat>> pows;
  NFElement cur = NFElement::one(x.field());
  for (int j = 0; j <= n; ++j) {
    pows.push_back(cur.coeffs());
    // Solve sum_{i<j} a_i x^i = x^j.
    if (j >= 1) {
      std::vector<std::vector<Rat>> m(n, std::vector<Rat>(j + 1, Rat(0)));
      for (int col = 0; col < j; ++col)
        for (int row = 0; row < n; ++row) m[row][col] = pows[col][row];
      for (int row = 0; row < n; ++row) m[row][j] = pows[j][row];
      // Gaussian elimination with the last column as the right-hand side.
      int rank = 0;
      std::vector<int> pivot_col;
      for (int col = 0; col < j && rank < n; ++col) {
        int piv = -1;
        for (int r = rank; r < n; ++r)
          if (m[r][col] != 0) {
            piv = r;
            break;
          }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        Rat inv = 1 / m[rank][col];
        for (int c2 = col; c2 <= j; ++c2) m[rank][c2] *= inv;
        for (int r = 0; r < n; ++r) {
          if (r == rank || m[r][col] == 0) continue;
          Rat f = m[r][col];
          for (int c2 = col; c2 <= j; ++c2) m[r][c2] -= f * m[rank][c2];
        }
        pivot_col.push_back(col);
        ++rank;
      }
      bool consistent = true;
      for (int r = rank; r < n; ++r)
        if (m[r][j] != 0) consistent = false;
      if (consistent) {
        std::vector<Rat> coeffs(j + 1, Rat(0));
        coeffs[j] = 1;
        for (int k = 0; k < rank; ++k) coeffs[pivot_col[k]] = -m[k][j];
        return PolyQ(std::move(coeffs));
      }
    }
    cur = cur * NFElement(x);
  }
  throw Error(Errc::internal, "no minimal polynomial found below the field degree");
}

FieldHom FieldHom::identity(const FieldPtr& K) {
  return FieldHom{K, K, NFElement::generator(K)};
}

NFElement FieldHom::apply(const NFElement& x) const {
  if (x.field().get() != from.get() && !x.field()->same_presentation(*from))
    throw Error(Errc::field_mismatch, "homomorphism applied to an element of the wrong field");
  if (is_identity()) return NFElement(to, x.coeffs());
  return eval_poly(x.rep(), gen_image);
}

FieldHom FieldHom::then(const FieldHom& next) const {
  if (to.get() != next.from.get() && !to->same_presentation(*next.from))
    throw Error(Errc::field_mismatch, "non-composable homomorphisms");
  return FieldHom{from, next.to, next.apply(gen_image)};
}

PolyNF polynf_from_polyq(const FieldPtr& K, const PolyQ& f) {
  PolyNF out;
  out.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) out.push_back(NFElement::from_rational(K, a));
  return out;
}

int polynf_degree(const PolyNF& f) { return static_cast<int>(f.size()) - 1; }

void polynf_trim(PolyNF& f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
}

PolyNF polynf_mul(const PolyNF& a, const PolyNF& b) {
  if (a.empty() || b.empty()) return {};
  const FieldPtr& K = a[0].field();
  PolyNF c(a.size() + b.size() - 1, NFElement::zero(K));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  polynf_trim(c);
  return c;
}

PolyNF polynf_add(const PolyNF& a, const PolyNF& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  PolyNF c(std::max(a.size(), b.size()), NFElement::zero(a[0].field()));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < a.size()) c[i] = c[i] + a[i];
    if (i < b.size()) c[i] = c[i] + b[i];
  }
  polynf_trim(c);
  return c;
}

PolyNF polynf_sub(const PolyNF& a, const PolyNF& b) {
  if (b.empty()) return a;
  PolyNF nb = b;
  for (auto& x : nb) x = -x;
  return polynf_add(a, nb);
}

void polynf_divrem(const PolyNF& a, const PolyNF& b, PolyNF& q, PolyNF& r) {
  if (b.empty()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  const FieldPtr& K = b[0].field();
  r = a;
  polynf_trim(r);
  q.assign(r.size() > b.size() ? r.size() - b.size() + 1 : 1, NFElement::zero(K));
  NFElement lb_inv = b.back().inverse();
  while (polynf_degree(r) >= polynf_degree(b)) {
    size_t shift = r.size() - b.size();
    NFElement f = r.back() * lb_inv;
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) r[shift + i] = r[shift + i] - f * b[i];
    polynf_trim(r);
    if (r.empty()) break;
  }
  polynf_trim(q);
}

PolyNF polynf_gcd(PolyNF a, PolyNF b) {
  polynf_trim(a);
  polynf_trim(b);
  while (!b.empty()) {
    PolyNF q, r;
    polynf_divrem(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  NFElement inv = a.back().inverse();
  for (auto& x : a) x = x * inv;
  return a;
}

NFElement polynf_eval(const PolyNF& f, const NFElement& x) {
  NFElement acc = NFElement::zero(x.field());
  for (size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
  return acc;
}

std::optional<std::vector<Rat>> solve_q_linear(const std::vector<NFElement>& basis,
                                               const NFElement& x) {
  const int n = x.field()->degree();
  const int k = static_cast<int>(basis.size());
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(k + 1, Rat(0)));
  for (int col = 0; col < k; ++col)
    for (int row = 0; row < n; ++row) m[row][col] = basis[col].coeffs()[row];
  for (int row = 0; row < n; ++row) m[row][k] = x.coeffs()[row];
  int rank = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < k && rank < n; ++col) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[piv], m[rank]);
    Rat inv = 1 / m[rank][col];
    for (int c2 = col; c2 <= k; ++c2) m[rank][c2] *= inv;
    for (int r = 0; r < n; ++r) {
      if (r == rank || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (int c2 = col; c2 <= k; ++c2) m[r][c2] -= f * m[rank][c2];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (int r = rank; r < n; ++r)
    if (m[r][k] != 0) return std::nullopt;
  std::vector<Rat> sol(k, Rat(0));
  for (int i = 0; i < rank; ++i) sol[pivot_col[i]] = m[i][k];
  return sol;
}

}  // namespace csep
