#include "algebra/poly_fp.hpp"

#include <algorithm>

namespace csep {

uint64_t add_mod(uint64_t a, uint64_t b, uint64_t p) {
  uint64_t r = a + b;
  if (r >= p || r < a) r -= p;
  return r;
}

uint64_t sub_mod(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

uint64_t inv_mod(uint64_t a, uint64_t p) {
  if (a == 0) throw Error(Errc::division_by_zero, "inverse of 0 mod p");
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(p), newr = static_cast<int64_t>(a % p);
  while (newr != 0) {
    int64_t q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw Error(Errc::division_by_zero, "non-invertible element mod p");
  if (t < 0) t += static_cast<int64_t>(p);
  return static_cast<uint64_t>(t);
}

uint64_t pow_mod(uint64_t a, const Int& e, uint64_t p) {
  if (e < 0) return pow_mod(inv_mod(a, p), -e, p);
  uint64_t base = a % p, r = 1 % p;
  Int n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = mul_mod(r, base, p);
    base = mul_mod(base, base, p);
    n >>= 1;
  }
  return r;
}

PolyFp::PolyFp(uint64_t p, std::vector<uint64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2) throw Error(Errc::invalid_input, "modulus must be at least 2");
  for (auto& x : c_) x %= p_;
  trim();
}

void PolyFp::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void PolyFp::check_same(const PolyFp& o) const {
  if (p_ != o.p_) throw Error(Errc::field_mismatch, "mixed moduli in PolyFp arithmetic");
}

uint64_t PolyFp::lc() const {
  if (c_.empty()) throw Error(Errc::invalid_input, "leading coefficient of zero polynomial");
  return c_.back();
}

PolyFp PolyFp::operator+(const PolyFp& o) const {
  check_same(o);
  std::vector<uint64_t> c(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    uint64_t v = i < c_.size() ? c_[i] : 0;
    if (i < o.c_.size()) v = add_mod(v, o.c_[i], p_);
    c[i] = v;
  }
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::operator-(const PolyFp& o) const {
  check_same(o);
  std::vector<uint64_t> c(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    uint64_t v = i < c_.size() ? c_[i] : 0;
    uint64_t w = i < o.c_.size() ? o.c_[i] : 0;
    c[i] = sub_mod(v, w, p_);
  }
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::operator*(const PolyFp& o) const {
  check_same(o);
  if (is_zero() || o.is_zero()) return zero(p_);
  std::vector<uint64_t> c(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      c[i + j] = add_mod(c[i + j], mul_mod(c_[i], o.c_[j], p_), p_);
  }
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::monic() const {
  if (is_zero()) throw Error(Errc::invalid_input, "monic of zero polynomial");
  if (is_monic()) return *this;
  uint64_t inv = inv_mod(lc(), p_);
  std::vector<uint64_t> c = c_;
  for (auto& x : c) x = mul_mod(x, inv, p_);
  return PolyFp(p_, std::move(c));
}

PolyFp PolyFp::derivative() const {
  if (c_.size() <= 1) return zero(p_);
  std::vector<uint64_t> c(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = mul_mod(c_[i], i % p_, p_);
  return PolyFp(p_, std::move(c));
}

uint64_t PolyFp::eval(uint64_t x) const {
  uint64_t r = 0;
  x %= p_;
  for (size_t i = c_.size(); i-- > 0;) r = add_mod(mul_mod(r, x, p_), c_[i], p_);
  return r;
}

void PolyFp::divrem(const PolyFp& a, const PolyFp& b, PolyFp& q, PolyFp& r) {
  a.check_same(b);
  if (b.is_zero()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  uint64_t p = a.p_;
  std::vector<uint64_t> rem = a.c_;
  std::vector<uint64_t> quo;
  int db = b.degree();
  if (a.degree() >= db) quo.assign(a.degree() - db + 1, 0);
  uint64_t invlb = inv_mod(b.lc(), p);
  while (true) {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    int dr = static_cast<int>(rem.size()) - 1;
    if (dr < db) break;
    uint64_t f = mul_mod(rem.back(), invlb, p);
    quo[dr - db] = f;
    for (int i = 0; i <= db; ++i)
      rem[dr - db + i] = sub_mod(rem[dr - db + i], mul_mod(f, b.c_[i], p), p);
  }
  q = PolyFp(p, std::move(quo));
  r = PolyFp(p, std::move(rem));
}

PolyFp PolyFp::rem(const PolyFp& a, const PolyFp& b) {
  PolyFp q, r;
  divrem(a, b, q, r);
  return r;
}

PolyFp PolyFp::gcd(PolyFp a, PolyFp b) {
  a.check_same(b);
  while (!b.is_zero()) {
    PolyFp r = rem(a, b);
    a = b;
    b = r;
  }
  if (a.is_zero()) return a;
  return a.monic();
}

PolyFp PolyFp::pow_mod(const PolyFp& base, const Int& e, const PolyFp& mod) {
  if (e < 0) throw Error(Errc::invalid_input, "negative polynomial power");
  PolyFp r = one(base.p());
  PolyFp b = rem(base, mod);
  Int n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) r = rem(r * b, mod);
    b = rem(b * b, mod);
    n >>= 1;
  }
  return r;
}

bool PolyFp::order_less(const PolyFp& a, const PolyFp& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.coeffs() < b.coeffs();
}

namespace {

// Next monic polynomial in the (degree, coefficients) enumeration, used as
// the deterministic splitting sequence for equal-degree factorization.
PolyFp next_candidate(const PolyFp& w) {
  uint64_t p = w.p();
  std::vector<uint64_t> c = w.coeffs();
  for (size_t i = 0; i + 1 < c.size(); ++i) {
    if (c[i] + 1 < p) {
      ++c[i];
      return PolyFp(p, std::move(c));
    }
    c[i] = 0;
  }
  std::vector<uint64_t> up(c.size() + 1, 0);
  up.back() = 1;
  return PolyFp(p, std::move(up));
}

// Trace map w + w^2 + w^4 + ... over F_2, used to split in characteristic 2.
PolyFp trace_map_f2(const PolyFp& w, const PolyFp& mod, int d) {
  PolyFp acc = PolyFp::rem(w, mod);
  PolyFp term = acc;
  for (int i = 1; i < d; ++i) {
    term = PolyFp::rem(term * term, mod);
    acc = acc + term;
  }
  return acc;
}

void equal_degree_split(const PolyFp& f, int d, std::vector<PolyFp>& out) {
  uint64_t p = f.p();
  if (f.degree() == d) {
    out.push_back(f.monic());
    return;
  }
  PolyFp w = PolyFp::variable(p);
  while (true) {
    PolyFp g;
    if (p == 2) {
      g = PolyFp::gcd(f, trace_map_f2(w, f, d));
    } else {
      Int e = (pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
      PolyFp t = PolyFp::pow_mod(w, e, f) - PolyFp::one(p);
      g = PolyFp::gcd(f, t);
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      PolyFp q, r;
      PolyFp::divrem(f, g, q, r);
      equal_degree_split(g, d, out);
      equal_degree_split(q.monic(), d, out);
      return;
    }
    w = next_candidate(w);
  }
}

// Distinct-degree decomposition of a monic squarefree polynomial.
void factor_squarefree(const PolyFp& f, std::vector<PolyFp>& out) {
  uint64_t p = f.p();
  PolyFp rest = f;
  PolyFp frob = PolyFp::pow_mod(PolyFp::variable(p), Int(static_cast<unsigned long>(p)), rest);
  PolyFp h = frob;
  int d = 1;
  while (rest.degree() >= 2 * d) {
    PolyFp g = PolyFp::gcd(rest, h - PolyFp::variable(p));
    if (g.degree() > 0) {
      equal_degree_split(g, d, out);
      PolyFp q, r;
      PolyFp::divrem(rest, g, q, r);
      rest = q.monic();
      h = PolyFp::rem(h, rest);
    }
    h = PolyFp::pow_mod(h, Int(static_cast<unsigned long>(p)), rest);
    ++d;
  }
  if (rest.degree() > 0) out.push_back(rest.monic());
}

// g(X^p) -> g, valid when f' = 0 in characteristic p.
PolyFp pth_root(const PolyFp& f) {
  uint64_t p = f.p();
  std::vector<uint64_t> c;
  for (size_t i = 0; i < f.coeffs().size(); i += static_cast<size_t>(p)) {
    // Coefficients of F_p are fixed by x -> x^p, so the root is coefficientwise.
    c.push_back(f.coeffs()[i]);
  }
  return PolyFp(p, std::move(c));
}

void factor_rec(const PolyFp& f, int mult, std::vector<std::pair<PolyFp, int>>& out) {
  if (f.degree() <= 0) return;
  uint64_t p = f.p();
  PolyFp df = f.derivative();
  if (df.is_zero()) {
    factor_rec(pth_root(f), mult * static_cast<int>(p), out);
    return;
  }
  PolyFp g = PolyFp::gcd(f, df);
  PolyFp sqfree;
  {
    PolyFp q, r;
    PolyFp::divrem(f, g, q, r);
    sqfree = q.monic();
  }
  std::vector<PolyFp> irr;
  factor_squarefree(sqfree, irr);
  PolyFp rest = f;
  for (const auto& u : irr) {
    int e = 0;
    while (true) {
      PolyFp q, r;
      PolyFp::divrem(rest, u, q, r);
      if (!r.is_zero()) break;
      rest = q;
      ++e;
    }
    out.emplace_back(u, e * mult);
  }
  if (rest.degree() > 0) factor_rec(rest.monic(), mult, out);
}

}  // namespace

std::vector<std::pair<PolyFp, int>> factor_mod_p(const PolyFp& f) {
  if (f.is_zero()) throw Error(Errc::invalid_input, "factorization of zero polynomial");
  if (!f.is_monic()) throw Error(Errc::invalid_input, "factorization requires a monic polynomial");
  std::vector<std::pair<PolyFp, int>> out;
  factor_rec(f, 1, out);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return PolyFp::order_less(a.first, b.first); });
  return out;
}

bool is_irreducible_mod_p(const PolyFp& f) {
  if (f.degree() <= 0) return false;
  if (f.degree() == 1) return true;
  auto fs = factor_mod_p(f.monic());
  return fs.size() == 1 && fs[0].second == 1;
}

std::optional<PolyFp> poly_q_mod_p(const PolyQ& f, uint64_t p) {
  std::vector<uint64_t> c;
  c.reserve(f.coeffs().size());
  for (const auto& a : f.coeffs()) {
    Int den = rat_den(a);
    if (mpz_divisible_ui_p(den.get_mpz_t(), p)) return std::nullopt;
    uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
    uint64_t n = mpz_fdiv_ui(rat_num(a).get_mpz_t(), p);
    c.push_back(mul_mod(n, inv_mod(d, p), p));
  }
  return PolyFp(p, std::move(c));
}

}  // namespace csep
