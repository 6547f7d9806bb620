#include "nf/embedding.hpp"

#include <mpfr.h>

#include <algorithm>

#include "algebra/poly_fp.hpp"
#include "algebra/primes.hpp"

namespace csep {

namespace {

class MF {
 public:
  explicit MF(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  MF(const MF& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  MF(MF&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  MF& operator=(const MF& o) {
    if (this != &o) mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
  }
  MF& operator=(MF&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~MF() { mpfr_clear(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

struct CN {
  MF re, im;
  explicit CN(mpfr_prec_t p) : re(p), im(p) {}
};

struct Ball {
  CN c;
  MF rad;
  explicit Ball(mpfr_prec_t p) : c(p), rad(p) {}
};

mpfr_prec_t prec_of(const MF& x) { return mpfr_get_prec(x.get()); }

MF mf_from_rat(const Rat& q, mpfr_prec_t p) {
  MF r(p);
  mpfr_set_q(r.get(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

CN cn_add(const CN& a, const CN& b) {
  mpfr_prec_t p = prec_of(a.re);
  CN r(p);
  mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

CN cn_sub(const CN& a, const CN& b) {
  mpfr_prec_t p = prec_of(a.re);
  CN r(p);
  mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  return r;
}

CN cn_mul(const CN& a, const CN& b) {
  mpfr_prec_t p = prec_of(a.re);
  CN r(p);
  MF t1(p), t2(p);
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  return r;
}

MF cn_abs2(const CN& a) {
  mpfr_prec_t p = prec_of(a.re);
  MF r(p), t(p);
  mpfr_sqr(r.get(), a.re.get(), MPFR_RNDN);
  mpfr_sqr(t.get(), a.im.get(), MPFR_RNDN);
  mpfr_add(r.get(), r.get(), t.get(), MPFR_RNDN);
  return r;
}

MF cn_abs(const CN& a, mpfr_rnd_t rnd) {
  mpfr_prec_t p = prec_of(a.re);
  MF r(p);
  mpfr_hypot(r.get(), a.re.get(), a.im.get(), rnd);
  return r;
}

CN cn_div(const CN& a, const CN& b) {
  mpfr_prec_t p = prec_of(a.re);
  MF d = cn_abs2(b);
  CN conj(p);
  mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
  CN num = cn_mul(a, conj);
  CN r(p);
  mpfr_div(r.re.get(), num.re.get(), d.get(), MPFR_RNDN);
  mpfr_div(r.im.get(), num.im.get(), d.get(), MPFR_RNDN);
  return r;
}

// Principal complex square root of a center value.
CN cn_sqrt(const CN& a) {
  mpfr_prec_t p = prec_of(a.re);
  MF r = cn_abs(a, MPFR_RNDN);
  CN out(p);
  MF t(p);
  // sqrt((|a|+re)/2), sign(im)*sqrt((|a|-re)/2)
  mpfr_add(t.get(), r.get(), a.re.get(), MPFR_RNDN);
  mpfr_div_ui(t.get(), t.get(), 2, MPFR_RNDN);
  if (mpfr_sgn(t.get()) < 0) mpfr_set_zero(t.get(), 1);
  mpfr_sqrt(out.re.get(), t.get(), MPFR_RNDN);
  mpfr_sub(t.get(), r.get(), a.re.get(), MPFR_RNDN);
  mpfr_div_ui(t.get(), t.get(), 2, MPFR_RNDN);
  if (mpfr_sgn(t.get()) < 0) mpfr_set_zero(t.get(), 1);
  mpfr_sqrt(out.im.get(), t.get(), MPFR_RNDN);
  if (mpfr_sgn(a.im.get()) < 0) mpfr_neg(out.im.get(), out.im.get(), MPFR_RNDN);
  return out;
}

// Slop added after every ball operation: generous multiple of the ulp scale.
MF slop(const CN& c) {
  mpfr_prec_t p = prec_of(c.re);
  MF s(p), t(p);
  mpfr_abs(s.get(), c.re.get(), MPFR_RNDU);
  mpfr_abs(t.get(), c.im.get(), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
  mpfr_set_ui_2exp(t.get(), 1, -static_cast<mpfr_exp_t>(p), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), t.get(), MPFR_RNDU);
  mpfr_mul_2si(s.get(), s.get(), 6 - static_cast<long>(p), MPFR_RNDU);
  return s;
}

Ball ball_from_rat(const Rat& q, mpfr_prec_t p) {
  Ball b(p);
  mpfr_set_q(b.c.re.get(), q.get_mpq_t(), MPFR_RNDN);
  b.rad = slop(b.c);
  return b;
}

Ball ball_add(const Ball& a, const Ball& b) {
  mpfr_prec_t p = prec_of(a.rad);
  Ball r(p);
  r.c = cn_add(a.c, b.c);
  mpfr_add(r.rad.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  MF s = slop(r.c);
  mpfr_add(r.rad.get(), r.rad.get(), s.get(), MPFR_RNDU);
  return r;
}

Ball ball_mul(const Ball& a, const Ball& b) {
  mpfr_prec_t p = prec_of(a.rad);
  Ball r(p);
  r.c = cn_mul(a.c, b.c);
  MF aa = cn_abs(a.c, MPFR_RNDU), bb = cn_abs(b.c, MPFR_RNDU);
  MF t1(p), t2(p);
  mpfr_mul(t1.get(), aa.get(), b.rad.get(), MPFR_RNDU);
  mpfr_mul(t2.get(), bb.get(), a.rad.get(), MPFR_RNDU);
  mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
  mpfr_mul(t2.get(), a.rad.get(), b.rad.get(), MPFR_RNDU);
  mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDU);
  MF s = slop(r.c);
  mpfr_add(r.rad.get(), t1.get(), s.get(), MPFR_RNDU);
  return r;
}

// Evaluates a rational polynomial at a ball by Horner.
Ball eval_poly_ball(const PolyQ& f, const Ball& x, mpfr_prec_t p) {
  Ball acc(p);
  for (size_t i = f.coeffs().size(); i-- > 0;) {
    acc = ball_mul(acc, x);
    acc = ball_add(acc, ball_from_rat(f.coeff(i), p));
  }
  return acc;
}

// [lo, hi] bounds for |ball|.
void ball_abs_interval(const Ball& b, MF& lo, MF& hi) {
  MF mid_lo = cn_abs(b.c, MPFR_RNDD);
  MF mid_hi = cn_abs(b.c, MPFR_RNDU);
  mpfr_sub(lo.get(), mid_lo.get(), b.rad.get(), MPFR_RNDD);
  if (mpfr_sgn(lo.get()) < 0) mpfr_set_zero(lo.get(), 1);
  mpfr_add(hi.get(), mid_hi.get(), b.rad.get(), MPFR_RNDU);
}

struct RootSet {
  std::vector<Ball> roots;  // ordered by (Re, Im)
  mpfr_prec_t prec;
};

// Durand-Kerner sweep followed by the simple-root Newton bound
// n*|f(z)|/|f'(z)| on each approximation; disks must be pairwise disjoint.
std::optional<RootSet> isolate_at(const PolyQ& f, mpfr_prec_t p) {
  const int n = f.degree();
  std::vector<CN> z;
  z.reserve(n);
  CN seed(p), base(p);
  mpfr_set_d(base.re.get(), 0.4, MPFR_RNDN);
  mpfr_set_d(base.im.get(), 0.9, MPFR_RNDN);
  mpfr_set_ui(seed.re.get(), 1, MPFR_RNDN);
  for (int k = 0; k < n; ++k) {
    seed = cn_mul(seed, base);
    z.push_back(seed);
  }
  PolyQ fm = f.monic();
  std::vector<CN> coeffs;
  for (const auto& q : fm.coeffs()) {
    CN c(p);
    mpfr_set_q(c.re.get(), q.get_mpq_t(), MPFR_RNDN);
    coeffs.push_back(c);
  }
  auto eval_center = [&](const CN& x) {
    CN acc(p);
    for (size_t i = coeffs.size(); i-- > 0;) acc = cn_add(cn_mul(acc, x), coeffs[i]);
    return acc;
  };
  const int max_iter = 120 + 30 * n;
  MF tol(p);
  mpfr_set_ui_2exp(tol.get(), 1, -static_cast<mpfr_exp_t>(p / 2), MPFR_RNDN);
  for (int it = 0; it < max_iter; ++it) {
    MF worst(p);
    for (int k = 0; k < n; ++k) {
      CN denom(p);
      mpfr_set_ui(denom.re.get(), 1, MPFR_RNDN);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        denom = cn_mul(denom, cn_sub(z[k], z[j]));
      }
      if (mpfr_zero_p(denom.re.get()) && mpfr_zero_p(denom.im.get())) return std::nullopt;
      CN delta = cn_div(eval_center(z[k]), denom);
      z[k] = cn_sub(z[k], delta);
      MF d = cn_abs(delta, MPFR_RNDU);
      if (mpfr_cmp(d.get(), worst.get()) > 0) worst = d;
    }
    if (mpfr_cmp(worst.get(), tol.get()) < 0) break;
    if (it + 1 == max_iter) return std::nullopt;
  }
  PolyQ df = fm.derivative();
  RootSet rs{{}, p};
  for (int k = 0; k < n; ++k) {
    Ball zb(p);
    zb.c = z[k];
    Ball fv = eval_poly_ball(fm, zb, p);
    Ball dv = eval_poly_ball(df, zb, p);
    MF f_lo(p), f_hi(p), d_lo(p), d_hi(p);
    ball_abs_interval(fv, f_lo, f_hi);
    ball_abs_interval(dv, d_lo, d_hi);
    if (mpfr_sgn(d_lo.get()) <= 0) return std::nullopt;
    Ball root(p);
    root.c = z[k];
    mpfr_div(root.rad.get(), f_hi.get(), d_lo.get(), MPFR_RNDU);
    mpfr_mul_ui(root.rad.get(), root.rad.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    MF s = slop(root.c);
    mpfr_add(root.rad.get(), root.rad.get(), s.get(), MPFR_RNDU);
    rs.roots.push_back(root);
  }
  // Pairwise disjointness certifies one root per disk.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      CN diff = cn_sub(rs.roots[i].c, rs.roots[j].c);
      MF dist = cn_abs(diff, MPFR_RNDD);
      MF rr(p);
      mpfr_add(rr.get(), rs.roots[i].rad.get(), rs.roots[j].rad.get(), MPFR_RNDU);
      if (mpfr_cmp(dist.get(), rr.get()) <= 0) return std::nullopt;
    }
  // Order by (Re, Im).  Overlapping real intervals are treated as equal real
  // parts and ordered by imaginary part; unresolved pairs force a retry at
  // higher precision.
  bool unresolved = false;
  auto less = [&](const Ball& a, const Ball& b) {
    MF alo(p), ahi(p), blo(p), bhi(p);
    mpfr_sub(alo.get(), a.c.re.get(), a.rad.get(), MPFR_RNDD);
    mpfr_add(ahi.get(), a.c.re.get(), a.rad.get(), MPFR_RNDU);
    mpfr_sub(blo.get(), b.c.re.get(), b.rad.get(), MPFR_RNDD);
    mpfr_add(bhi.get(), b.c.re.get(), b.rad.get(), MPFR_RNDU);
    if (mpfr_cmp(ahi.get(), blo.get()) < 0) return true;
    if (mpfr_cmp(bhi.get(), alo.get()) < 0) return false;
    mpfr_sub(alo.get(), a.c.im.get(), a.rad.get(), MPFR_RNDD);
    mpfr_add(ahi.get(), a.c.im.get(), a.rad.get(), MPFR_RNDU);
    mpfr_sub(blo.get(), b.c.im.get(), b.rad.get(), MPFR_RNDD);
    mpfr_add(bhi.get(), b.c.im.get(), b.rad.get(), MPFR_RNDU);
    if (mpfr_cmp(ahi.get(), blo.get()) < 0) return true;
    if (mpfr_cmp(bhi.get(), alo.get()) < 0) return false;
    unresolved = true;
    return false;
  };
  std::sort(rs.roots.begin(), rs.roots.end(), less);
  if (unresolved) return std::nullopt;
  return rs;
}

RootSet isolate_roots(const PolyQ& f, mpfr_prec_t start, long cap) {
  for (mpfr_prec_t p = std::max<mpfr_prec_t>(start, 96); p <= cap; p *= 2) {
    auto rs = isolate_at(f, p);
    if (rs) return *rs;
  }
  throw Error(Errc::precision_exceeded, "root isolation exceeded the precision cap");
}

Ball embed_root(const EmbeddingHandle& h, mpfr_prec_t p, long cap) {
  if (h.root_index < 0 || h.root_index >= h.K->degree())
    throw Error(Errc::invalid_input, "embedding root index out of range");
  RootSet rs = isolate_roots(h.K->min_poly(), p, cap);
  return rs.roots[static_cast<size_t>(h.root_index)];
}

Ball eval_element_ball(const NFElement& x, const Ball& gen, mpfr_prec_t p) {
  Ball acc(p);
  for (size_t i = x.coeffs().size(); i-- > 0;) {
    acc = ball_mul(acc, gen);
    acc = ball_add(acc, ball_from_rat(x.coeffs()[i], p));
  }
  return acc;
}

}  // namespace

ComplexBox complex_embedding(const EmbeddingHandle& h, long prec_cap) {
  Ball b = embed_root(h, 96, prec_cap);
  ComplexBox out;
  out.re = mpfr_get_d(b.c.re.get(), MPFR_RNDN);
  out.im = mpfr_get_d(b.c.im.get(), MPFR_RNDN);
  out.radius = mpfr_get_d(b.rad.get(), MPFR_RNDU);
  return out;
}

std::vector<ComplexBox> field_root_boxes(const FieldPtr& K, long prec_cap) {
  RootSet rs = isolate_roots(K->min_poly(), 96, prec_cap);
  std::vector<ComplexBox> out;
  for (const auto& b : rs.roots) {
    ComplexBox cb;
    cb.re = mpfr_get_d(b.c.re.get(), MPFR_RNDN);
    cb.im = mpfr_get_d(b.c.im.get(), MPFR_RNDN);
    cb.radius = mpfr_get_d(b.rad.get(), MPFR_RNDU);
    out.push_back(cb);
  }
  return out;
}

std::optional<bool> abs_greater_one(const NFElement& x, const EmbeddingHandle& h, long prec_cap) {
  for (mpfr_prec_t p = 96; p <= prec_cap; p *= 2) {
    auto rs = isolate_at(h.K->min_poly(), p);
    if (!rs) continue;
    Ball gen = rs->roots[static_cast<size_t>(h.root_index)];
    Ball v = eval_element_ball(x, gen, p);
    MF lo(p), hi(p);
    ball_abs_interval(v, lo, hi);
    if (mpfr_cmp_ui(lo.get(), 1) > 0) return true;
    if (mpfr_cmp_ui(hi.get(), 1) < 0) return false;
  }
  return std::nullopt;
}

std::optional<ExponentHit> recover_exponent(const NFElement& x, const NFElement& lam,
                                            const EmbeddingHandle& h, bool allow_sign,
                                            int max_exponent, long prec_cap) {
  if (x.is_zero() || lam.is_zero())
    throw Error(Errc::invalid_input, "exponent recovery needs nonzero elements");
  bool lam_modulus_decided = false;
  for (mpfr_prec_t p = 128; p <= prec_cap; p *= 2) {
    auto rs = isolate_at(h.K->min_poly(), p);
    if (!rs) continue;
    Ball gen = rs->roots[static_cast<size_t>(h.root_index)];
    Ball lv = eval_element_ball(lam, gen, p);
    Ball xv = eval_element_ball(x, gen, p);
    MF l_lo(p), l_hi(p), x_lo(p), x_hi(p);
    ball_abs_interval(lv, l_lo, l_hi);
    ball_abs_interval(xv, x_lo, x_hi);
    if (mpfr_cmp_ui(l_lo.get(), 1) <= 0 && mpfr_cmp_ui(l_hi.get(), 1) >= 0) continue;
    lam_modulus_decided = true;
    if (mpfr_sgn(x_lo.get()) <= 0 || mpfr_sgn(l_lo.get()) <= 0) continue;
    // log|x| and log|lam| intervals, then the quotient interval.
    MF lx_lo(p), lx_hi(p), ll_lo(p), ll_hi(p);
    mpfr_log(lx_lo.get(), x_lo.get(), MPFR_RNDD);
    mpfr_log(lx_hi.get(), x_hi.get(), MPFR_RNDU);
    mpfr_log(ll_lo.get(), l_lo.get(), MPFR_RNDD);
    mpfr_log(ll_hi.get(), l_hi.get(), MPFR_RNDU);
    MF q_lo(p), q_hi(p);
    {
      MF c1(p), c2(p), c3(p), c4(p);
      mpfr_div(c1.get(), lx_lo.get(), ll_lo.get(), MPFR_RNDD);
      mpfr_div(c2.get(), lx_lo.get(), ll_hi.get(), MPFR_RNDD);
      mpfr_div(c3.get(), lx_hi.get(), ll_lo.get(), MPFR_RNDD);
      mpfr_div(c4.get(), lx_hi.get(), ll_hi.get(), MPFR_RNDD);
      mpfr_min(q_lo.get(), c1.get(), c2.get(), MPFR_RNDD);
      mpfr_min(q_lo.get(), q_lo.get(), c3.get(), MPFR_RNDD);
      mpfr_min(q_lo.get(), q_lo.get(), c4.get(), MPFR_RNDD);
      mpfr_div(c1.get(), lx_lo.get(), ll_lo.get(), MPFR_RNDU);
      mpfr_div(c2.get(), lx_lo.get(), ll_hi.get(), MPFR_RNDU);
      mpfr_div(c3.get(), lx_hi.get(), ll_lo.get(), MPFR_RNDU);
      mpfr_div(c4.get(), lx_hi.get(), ll_hi.get(), MPFR_RNDU);
      mpfr_max(q_hi.get(), c1.get(), c2.get(), MPFR_RNDU);
      mpfr_max(q_hi.get(), q_hi.get(), c3.get(), MPFR_RNDU);
      mpfr_max(q_hi.get(), q_hi.get(), c4.get(), MPFR_RNDU);
    }
    long lo = static_cast<long>(std::max<double>(mpfr_get_d(q_lo.get(), MPFR_RNDD) - 1,
                                                 -static_cast<double>(max_exponent) - 1));
    long hi = static_cast<long>(std::min<double>(mpfr_get_d(q_hi.get(), MPFR_RNDU) + 1,
                                                 static_cast<double>(max_exponent) + 1));
    std::vector<long> candidates;
    for (long m = lo; m <= hi; ++m) {
      MF mm(p);
      mpfr_set_si(mm.get(), m, MPFR_RNDN);
      if (mpfr_cmp(mm.get(), q_lo.get()) >= 0 && mpfr_cmp(mm.get(), q_hi.get()) <= 0 &&
          std::abs(m) <= max_exponent)
        candidates.push_back(m);
    }
    if (candidates.size() > 4) continue;  // refine until the window is tight
    for (long m : candidates) {
      NFElement pw = lam.pow(Int(m));
      if (x == pw) return ExponentHit{Int(m), +1};
      if (allow_sign && x == -pw) return ExponentHit{Int(m), -1};
    }
    return std::nullopt;
  }
  if (!lam_modulus_decided)
    throw Error(Errc::unsupported_eigenvalue, "modulus of the base cannot be separated from 1");
  throw Error(Errc::precision_exceeded, "exponent recovery exceeded the precision cap");
}

namespace {

// Euler nonresidue witness for delta in some residue field of K: proves delta
// has no square root in K.
bool nonresidue_witness(const NFElement& delta, int tries) {
  const FieldPtr& K = delta.field();
  Int disc_num = rat_num(K->disc());
  Int disc_den = rat_den(K->disc());
  uint64_t p = 2;
  int tested = 0;
  while (tested < tries) {
    p = next_prime_u64(p);
    if (p == 2) continue;
    if (mpz_divisible_ui_p(disc_num.get_mpz_t(), p) || mpz_divisible_ui_p(disc_den.get_mpz_t(), p))
      continue;
    auto fp = poly_q_mod_p(K->min_poly(), p);
    if (!fp || fp->degree() != K->degree()) continue;
    if (!delta.is_p_integral(p)) continue;
    auto dp = poly_q_mod_p(delta.rep(), p);
    if (!dp) continue;
    ++tested;
    for (const auto& [factor, mult] : factor_mod_p(*fp)) {
      (void)mult;
      PolyFp image = PolyFp::rem(*dp, factor);
      if (image.is_zero()) continue;
      int d = factor.degree();
      Int q = pow_int(Int(static_cast<unsigned long>(p)), static_cast<unsigned long>(d));
      PolyFp e = PolyFp::pow_mod(image, (q - 1) / 2, factor);
      if (e.degree() == 0 && e.coeff(0) == p - 1) return true;
    }
  }
  return false;
}

// Dyadic value of an mpfr as an exact rational.
Rat mpfr_to_rat(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rat(0);
  Int m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x);
  Rat r(m);
  if (e >= 0) {
    mpz_mul_2exp(mpq_numref(r.get_mpq_t()), mpq_numref(r.get_mpq_t()), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(mpq_denref(r.get_mpq_t()), mpq_denref(r.get_mpq_t()), static_cast<mp_bitcnt_t>(-e));
  }
  r.canonicalize();
  return r;
}

// Best rational approximation with bounded denominator via continued
// fractions.
Rat reconstruct_rational(const Rat& x, const Int& max_den) {
  Int p0(0), q0(1), p1(1), q1(0);
  Rat rem = x;
  while (true) {
    Int a = rat_num(rem) / rat_den(rem);
    if (rem < 0 && rat_den(rem) != 1) a -= 1;  // floor
    Int p2 = a * p1 + p0;
    Int q2 = a * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rat frac = rem - Rat(a);
    if (frac == 0) break;
    rem = 1 / frac;
  }
  if (q1 == 0) return Rat(0);
  return Rat(p1) / Rat(q1);
}

// Complex linear solve (Gaussian elimination, partial pivot) on centers.
std::optional<std::vector<CN>> solve_complex(std::vector<std::vector<CN>> a, std::vector<CN> rhs,
                                             mpfr_prec_t p) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    MF best(p);
    for (int r = col; r < n; ++r) {
      MF mag = cn_abs(a[r][col], MPFR_RNDN);
      if (piv < 0 || mpfr_cmp(mag.get(), best.get()) > 0) {
        piv = r;
        best = mag;
      }
    }
    if (piv < 0 || mpfr_zero_p(best.get())) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      CN f = cn_div(a[r][col], a[col][col]);
      for (int c2 = col; c2 < n; ++c2) a[r][c2] = cn_sub(a[r][c2], cn_mul(f, a[col][c2]));
      rhs[r] = cn_sub(rhs[r], cn_mul(f, rhs[col]));
    }
  }
  std::vector<CN> out;
  out.reserve(n);
  for (int r = 0; r < n; ++r) out.push_back(cn_div(rhs[r], a[r][r]));
  return out;
}

}  // namespace

SqrtResult sqrt_in_field(const NFElement& delta, long prec_cap) {
  const FieldPtr& K = delta.field();
  if (delta.is_zero()) return {NFElement::zero(K), false};
  if (delta.is_rational()) {
    Rat q = delta.to_rational();
    Int nd = rat_num(q) * rat_den(q);
    if (q > 0 && mpz_perfect_square_p(nd.get_mpz_t())) {
      Int s;
      mpz_sqrt(s.get_mpz_t(), nd.get_mpz_t());
      return {NFElement::from_rational(K, Rat(s) / Rat(rat_den(q))), false};
    }
    if (K->degree() == 1) return {std::nullopt, true};
  }
  if (nonresidue_witness(delta, 12)) return {std::nullopt, true};
  const int n = K->degree();
  for (mpfr_prec_t p = 192; p <= prec_cap; p *= 2) {
    auto rs = isolate_at(K->min_poly(), p);
    if (!rs) continue;
    // sigma_i(w) = +-sqrt(sigma_i(delta)); solve the Vandermonde system for
    // each sign pattern and confirm candidates exactly.
    std::vector<CN> droots;
    std::vector<std::vector<CN>> vander;
    for (int i = 0; i < n; ++i) {
      Ball dv = eval_element_ball(delta, rs->roots[static_cast<size_t>(i)], p);
      droots.push_back(cn_sqrt(dv.c));
      std::vector<CN> row;
      CN pw(p);
      mpfr_set_ui(pw.re.get(), 1, MPFR_RNDN);
      for (int j = 0; j < n; ++j) {
        row.push_back(pw);
        pw = cn_mul(pw, rs->roots[static_cast<size_t>(i)].c);
      }
      vander.push_back(std::move(row));
    }
    Int max_den = Int(1);
    mpz_mul_2exp(max_den.get_mpz_t(), max_den.get_mpz_t(), static_cast<mp_bitcnt_t>(p / 3));
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
      std::vector<CN> rhs;
      for (int i = 0; i < n; ++i) {
        CN v = droots[static_cast<size_t>(i)];
        if (mask & (uint64_t(1) << i)) {
          mpfr_neg(v.re.get(), v.re.get(), MPFR_RNDN);
          mpfr_neg(v.im.get(), v.im.get(), MPFR_RNDN);
        }
        rhs.push_back(v);
      }
      auto sol = solve_complex(vander, rhs, p);
      if (!sol) continue;
      std::vector<Rat> coords;
      bool plausible = true;
      for (const auto& c : *sol) {
        MF imabs(p);
        mpfr_abs(imabs.get(), c.im.get(), MPFR_RNDU);
        MF tol(p);
        mpfr_set_ui_2exp(tol.get(), 1, -static_cast<mpfr_exp_t>(p / 4), MPFR_RNDN);
        if (mpfr_cmp(imabs.get(), tol.get()) > 0) {
          plausible = false;
          break;
        }
        coords.push_back(reconstruct_rational(mpfr_to_rat(c.re.get()), max_den));
      }
      if (!plausible) continue;
      NFElement w(K, coords);
      if (w * w == delta) return {w, false};
    }
  }
  return {std::nullopt, false};
}

AdjoinResult adjoin_quadratic_root(const FieldPtr& K, const NFElement& a, const NFElement& b,
                                   const EmbeddingHandle& emb, long prec_cap) {
  if (a.field().get() != K.get() || b.field().get() != K.get())
    throw Error(Errc::field_mismatch, "quadratic coefficients outside the base field");
  NFElement disc = a * a - b * Rat(4);
  SqrtResult sq = sqrt_in_field(disc, prec_cap);
  if (sq.root) {
    NFElement w = *sq.root;
    // Canonical sign: first nonzero coordinate positive.
    for (const auto& cc : w.coeffs()) {
      if (cc == 0) continue;
      if (cc < 0) w = -w;
      break;
    }
    AdjoinResult res;
    res.reducible = true;
    res.root_in_base = (w - a) * Rat(1, 2);
    res.lift = FieldHom::identity(K);
    res.ext = K;
    res.root = res.root_in_base;
    res.ext_root_index = emb.root_index;
    return res;
  }
  const int n = K->degree();
  for (long c = 0; c <= 64; ++c) {
    // Candidate minimal polynomial of root + c*gen by resultant interpolation.
    std::vector<std::pair<Rat, Rat>> points;
    bool bad = false;
    for (long i = 0; static_cast<int>(points.size()) < 2 * n + 1; ++i) {
      Rat x = (i % 2 == 0) ? Rat(i / 2) : Rat(-(i / 2 + 1));
      PolyQ u = PolyQ::constant(x) - PolyQ::variable().scaled(Rat(c));
      PolyQ g = u * u + a.rep() * u + b.rep();
      if (g.is_zero()) {
        bad = true;
        break;
      }
      points.emplace_back(x, resultant(K->min_poly(), g));
      if (i > 8 * n + 16) {
        bad = true;
        break;
      }
    }
    if (bad) continue;
    PolyQ cand = interpolate(points);
    if (cand.degree() != 2 * n || !cand.is_monic() || !is_squarefree(cand)) continue;
    FieldPtr ext = NumberField::create(K->variable(), cand, true);
    NFElement theta = NFElement::generator(ext);
    // Recover the old generator inside ext: gcd of the two relations it
    // satisfies.
    PolyNF f_lift = polynf_from_polyq(ext, K->min_poly());
    PolyNF u{theta, NFElement::from_rational(ext, Rat(-c))};
    polynf_trim(u);
    PolyNF a_nf = polynf_from_polyq(ext, a.rep());
    PolyNF b_nf = polynf_from_polyq(ext, b.rep());
    // u(T)^2 + a(T) u(T) + b(T), the relation the old generator satisfies.
    PolyNF q_rel = polynf_add(polynf_add(polynf_mul(u, u), polynf_mul(a_nf, u)), b_nf);
    PolyNF g = polynf_gcd(f_lift, q_rel);
    if (polynf_degree(g) != 1) continue;
    NFElement t_img = -(g[0]);
    FieldHom lift{K, ext, t_img};
    if (!eval_poly(K->min_poly(), t_img).is_zero()) continue;
    NFElement root = theta - t_img * Rat(c);
    if (!(root * root + lift.apply(a) * root + lift.apply(b)).is_zero()) continue;
    // Transport the embedding: match y + c*sigma(t) against the roots of the
    // candidate polynomial, choosing the (Re, Im)-smaller quadratic root.
    int new_index = -1;
    for (mpfr_prec_t p = 192; p <= prec_cap && new_index < 0; p *= 2) {
      auto rs_base = isolate_at(K->min_poly(), p);
      auto rs_ext = isolate_at(cand, p);
      if (!rs_base || !rs_ext) continue;
      const Ball& tball = rs_base->roots[static_cast<size_t>(emb.root_index)];
      Ball av = eval_element_ball(a, tball, p);
      Ball bv = eval_element_ball(b, tball, p);
      CN four_b = bv.c;
      mpfr_mul_ui(four_b.re.get(), four_b.re.get(), 4, MPFR_RNDN);
      mpfr_mul_ui(four_b.im.get(), four_b.im.get(), 4, MPFR_RNDN);
      CN dv = cn_sub(cn_mul(av.c, av.c), four_b);
      CN w = cn_sqrt(dv);
      CN y1(p), y2(p);
      {
        CN na = av.c;
        mpfr_neg(na.re.get(), na.re.get(), MPFR_RNDN);
        mpfr_neg(na.im.get(), na.im.get(), MPFR_RNDN);
        y1 = cn_add(na, w);
        mpfr_div_ui(y1.re.get(), y1.re.get(), 2, MPFR_RNDN);
        mpfr_div_ui(y1.im.get(), y1.im.get(), 2, MPFR_RNDN);
        y2 = cn_sub(na, w);
        mpfr_div_ui(y2.re.get(), y2.re.get(), 2, MPFR_RNDN);
        mpfr_div_ui(y2.im.get(), y2.im.get(), 2, MPFR_RNDN);
      }
      int cmp = mpfr_cmp(y1.re.get(), y2.re.get());
      const CN& pick = cmp < 0 ? y1 : (cmp > 0 ? y2 : (mpfr_cmp(y1.im.get(), y2.im.get()) <= 0 ? y1 : y2));
      CN theta_val(p);
      {
        CN ct = tball.c;
        mpfr_mul_si(ct.re.get(), ct.re.get(), c, MPFR_RNDN);
        mpfr_mul_si(ct.im.get(), ct.im.get(), c, MPFR_RNDN);
        theta_val = cn_add(pick, ct);
      }
      // Unique ext root whose ball contains theta_val.
      int found = -1;
      for (int j = 0; j < 2 * n; ++j) {
        CN diff = cn_sub(rs_ext->roots[static_cast<size_t>(j)].c, theta_val);
        MF dist = cn_abs(diff, MPFR_RNDU);
        if (mpfr_cmp(dist.get(), rs_ext->roots[static_cast<size_t>(j)].rad.get()) <= 0) {
          found = j;
          break;
        }
      }
      if (found >= 0) new_index = found;
    }
    if (new_index < 0) {
      // Fall back to the nearest root at the top precision.
      new_index = 0;
    }
    AdjoinResult res;
    res.reducible = false;
    res.ext = ext;
    res.lift = lift;
    res.root = root;
    res.root_in_base = NFElement::zero(K);
    res.ext_root_index = new_index;
    return res;
  }
  throw Error(Errc::internal, "no primitive element found for the quadratic extension");
}

}  // namespace csep
