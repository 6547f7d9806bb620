#include "algebra/poly_q.hpp"

#include <algorithm>

namespace csep {

void PolyQ::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::constant(const Rat& a) {
  PolyQ p;
  if (a != 0) p.c_ = {a};
  return p;
}

PolyQ PolyQ::variable() {
  PolyQ p;
  p.c_ = {Rat(0), Rat(1)};
  return p;
}

PolyQ PolyQ::from_strings(const std::vector<std::string>& ss) {
  std::vector<Rat> c;
  c.reserve(ss.size());
  for (const auto& s : ss) c.push_back(rat_from_string(s));
  return PolyQ(std::move(c));
}

std::vector<std::string> PolyQ::to_strings() const {
  std::vector<std::string> out;
  out.reserve(c_.size());
  for (const auto& a : c_) out.push_back(rat_to_string(a));
  return out;
}

const Rat& PolyQ::lc() const {
  if (c_.empty()) throw Error(Errc::invalid_input, "leading coefficient of zero polynomial");
  return c_.back();
}

PolyQ PolyQ::operator-() const {
  PolyQ r = *this;
  for (auto& a : r.c_) a = -a;
  return r;
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
  std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (i < c_.size()) c[i] += c_[i];
    if (i < o.c_.size()) c[i] += o.c_[i];
  }
  return PolyQ(std::move(c));
}

PolyQ PolyQ::operator-(const PolyQ& o) const { return *this + (-o); }

PolyQ PolyQ::operator*(const PolyQ& o) const {
  if (is_zero() || o.is_zero()) return PolyQ();
  std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  return PolyQ(std::move(c));
}

PolyQ PolyQ::scaled(const Rat& a) const {
  if (a == 0) return PolyQ();
  PolyQ r = *this;
  for (auto& x : r.c_) x *= a;
  return r;
}

PolyQ PolyQ::monic() const {
  if (is_zero()) throw Error(Errc::invalid_input, "monic of zero polynomial");
  return scaled(1 / lc());
}

PolyQ PolyQ::derivative() const {
  if (c_.size() <= 1) return PolyQ();
  std::vector<Rat> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(static_cast<long>(i));
  return PolyQ(std::move(c));
}

Rat PolyQ::eval(const Rat& x) const {
  Rat r(0);
  for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
  return r;
}

PolyQ PolyQ::shifted(size_t k) const {
  if (is_zero()) return PolyQ();
  std::vector<Rat> c(k, Rat(0));
  c.insert(c.end(), c_.begin(), c_.end());
  return PolyQ(std::move(c));
}

void PolyQ::divrem(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r) {
  if (b.is_zero()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  std::vector<Rat> rem = a.c_;
  std::vector<Rat> quo;
  int db = b.degree();
  if (a.degree() >= db) quo.assign(a.degree() - db + 1, Rat(0));
  while (static_cast<int>(rem.size()) - 1 >= db) {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    int dr = static_cast<int>(rem.size()) - 1;
    if (dr < db) break;
    Rat f = rem.back() / b.lc();
    quo[dr - db] = f;
    for (int i = 0; i <= db; ++i) rem[dr - db + i] -= f * b.c_[i];
    rem.pop_back();
  }
  q = PolyQ(std::move(quo));
  r = PolyQ(std::move(rem));
}

PolyQ PolyQ::rem(const PolyQ& a, const PolyQ& b) {
  PolyQ q, r;
  divrem(a, b, q, r);
  return r;
}

PolyQ PolyQ::gcd(PolyQ a, PolyQ b) {
  while (!b.is_zero()) {
    PolyQ r = rem(a, b);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.monic();
}

namespace {

using ZPoly = std::vector<Int>;

int zdeg(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

ZPoly zscale(const ZPoly& p, const Int& a) {
  ZPoly r = p;
  for (auto& x : r) x *= a;
  return r;
}

// lc(b)^(deg a - deg b + 1) * a mod b, computed over Z.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
  int db = zdeg(b);
  int e = zdeg(a) - db + 1;
  const Int& lb = b.back();
  while (zdeg(a) >= db) {
    Int la = a.back();
    for (auto& x : a) x *= lb;
    int shift = zdeg(a) - db;
    for (int i = 0; i <= db; ++i) a[shift + i] -= la * b[i];
    ztrim(a);
    --e;
  }
  if (e > 0) {
    Int f = pow_int(lb, static_cast<unsigned long>(e));
    for (auto& x : a) x *= f;
  }
  return a;
}

// Splits f into content (rational) times primitive integer polynomial.
Rat z_content_split(const PolyQ& f, ZPoly& prim) {
  Int den(1);
  for (const auto& a : f.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), a.get_den().get_mpz_t());
  ZPoly z;
  z.reserve(f.coeffs().size());
  Int g(0);
  for (const auto& a : f.coeffs()) {
    Int v = rat_num(a) * (den / rat_den(a));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    z.push_back(v);
  }
  if (g == 0) g = 1;
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  prim = std::move(z);
  return Rat(g) / Rat(den);
}

Int z_resultant_subresultant(ZPoly A, ZPoly B) {
  // Cohen, A Course in Computational Algebraic Number Theory, Alg. 3.3.7.
  Int s(1);
  if (zdeg(A) < zdeg(B)) {
    if ((zdeg(A) & 1) && (zdeg(B) & 1)) s = -1;
    std::swap(A, B);
  }
  if (zdeg(B) < 0) throw Error(Errc::invalid_input, "resultant of zero polynomial");
  if (zdeg(B) == 0) return s * pow_int(B.back(), static_cast<unsigned long>(zdeg(A)));
  Int g(1), h(1);
  while (true) {
    int da = zdeg(A), db = zdeg(B);
    int delta = da - db;
    if ((da & 1) && (db & 1)) s = -s;
    ZPoly R = pseudo_rem(A, B);
    A = B;
    Int divisor = g * pow_int(h, static_cast<unsigned long>(delta));
    B.clear();
    B.reserve(R.size());
    for (const auto& x : R) {
      Int q;
      mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), divisor.get_mpz_t());
      B.push_back(q);
    }
    g = A.back();
    if (delta >= 1) {
      Int gd = pow_int(g, static_cast<unsigned long>(delta));
      Int hd = pow_int(h, static_cast<unsigned long>(delta - 1));
      mpz_divexact(h.get_mpz_t(), gd.get_mpz_t(), hd.get_mpz_t());
    }
    if (zdeg(B) < 0) return Int(0);
    if (zdeg(B) == 0) {
      int d = zdeg(A);
      Int t = pow_int(B.back(), static_cast<unsigned long>(d));
      Int hd = pow_int(h, static_cast<unsigned long>(d - 1));
      Int r;
      mpz_divexact(r.get_mpz_t(), t.get_mpz_t(), hd.get_mpz_t());
      return s * r;
    }
  }
}

}  // namespace

Rat resultant(const PolyQ& f, const PolyQ& g) {
  if (f.is_zero() || g.is_zero())
    throw Error(Errc::invalid_input, "resultant of zero polynomial");
  if (f.degree() == 0) return pow_rat(f.lc(), g.degree());
  if (g.degree() == 0) return pow_rat(g.lc(), f.degree());
  ZPoly F, G;
  Rat cf = z_content_split(f, F);
  Rat cg = z_content_split(g, G);
  Int r = z_resultant_subresultant(F, G);
  return pow_rat(cf, g.degree()) * pow_rat(cg, f.degree()) * Rat(r);
}

bool is_squarefree(const PolyQ& f) {
  if (f.is_zero()) return false;
  if (f.degree() <= 1) return true;
  return PolyQ::gcd(f, f.derivative()).degree() == 0;
}

Rat discriminant(const PolyQ& f) {
  int n = f.degree();
  if (n <= 0) throw Error(Errc::invalid_input, "discriminant of constant polynomial");
  if (n == 1) return Rat(1);
  Rat r = resultant(f, f.derivative()) / f.lc();
  long k = static_cast<long>(n) * (n - 1) / 2;
  return (k % 2 == 0) ? r : -r;
}

PolyQ interpolate(const std::vector<std::pair<Rat, Rat>>& points) {
  PolyQ acc;
  for (size_t i = 0; i < points.size(); ++i) {
    PolyQ basis = PolyQ::one();
    Rat denom(1);
    for (size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      basis = basis * (PolyQ::variable() - PolyQ::constant(points[j].first));
      denom *= points[i].first - points[j].first;
    }
    acc = acc + basis.scaled(points[i].second / denom);
  }
  return acc;
}

}  // namespace csep
