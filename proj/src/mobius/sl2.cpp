#include "mobius/sl2.hpp"

namespace csep {

SL2Matrix::SL2Matrix(NFElement a, NFElement b, NFElement c, NFElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if ((a_ * d_ - b_ * c_) != NFElement::one(a_.field()))
    throw Error(Errc::invalid_input, "matrix determinant must be 1");
}

SL2Matrix SL2Matrix::identity(const FieldPtr& K) {
  return SL2Matrix(NFElement::one(K), NFElement::zero(K), NFElement::zero(K), NFElement::one(K));
}

SL2Matrix SL2Matrix::operator*(const SL2Matrix& o) const {
  return SL2Matrix(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                   c_ * o.b_ + d_ * o.d_);
}

SL2Matrix SL2Matrix::inverse() const { return SL2Matrix(d_, -b_, -c_, a_); }

SL2Matrix SL2Matrix::negated() const { return SL2Matrix(-a_, -b_, -c_, -d_); }

SL2Matrix SL2Matrix::pow(const Int& e) const {
  if (e < 0) return inverse().pow(-e);
  SL2Matrix acc = identity(field()), base = *this;
  Int n = e;
  while (n > 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

SL2Matrix SL2Matrix::conj_by(const SL2Matrix& g) const { return g.inverse() * *this * g; }

SL2Matrix SL2Matrix::map(const FieldHom& hom) const {
  return SL2Matrix(hom.apply(a_), hom.apply(b_), hom.apply(c_), hom.apply(d_));
}

bool SL2Matrix::operator==(const SL2Matrix& o) const {
  return a_ == o.a_ && b_ == o.b_ && c_ == o.c_ && d_ == o.d_;
}

bool SL2Matrix::eq_up_to_sign(const SL2Matrix& o) const {
  return *this == o || *this == o.negated();
}

bool SL2Matrix::is_identity() const { return *this == identity(field()); }

bool SL2Matrix::is_neg_identity() const { return *this == identity(field()).negated(); }

MatClass classify(const SL2Matrix& m) {
  if (m.is_identity() || m.is_neg_identity()) return MatClass::identity_class;
  NFElement tr = m.trace();
  if (tr * tr == NFElement::from_rational(m.field(), Rat(4))) return MatClass::parabolic;
  return MatClass::nonparabolic;
}

void SubgroupSpec::validate() const {
  switch (kind) {
    case Kind::loxodromic_cyclic:
      if (classify(gen1) != MatClass::nonparabolic)
        throw Error(Errc::invalid_input, "loxodromic generator must have trace^2 != 4");
      if (power < 1) throw Error(Errc::invalid_input, "subgroup power must be positive");
      break;
    case Kind::parabolic_cyclic:
      if (classify(gen1) != MatClass::parabolic)
        throw Error(Errc::invalid_input, "parabolic generator must have trace^2 = 4 and not be +-I");
      if (!gen2) throw Error(Errc::invalid_input, "cyclic parabolic subgroup needs its ambient mate");
      if (classify(*gen2) != MatClass::parabolic)
        throw Error(Errc::invalid_input, "ambient mate must be parabolic");
      if (!(gen1 * *gen2 == *gen2 * gen1))
        throw Error(Errc::invalid_input, "ambient basis must commute");
      break;
    case Kind::parabolic_rank2:
      if (!gen2) throw Error(Errc::invalid_input, "rank-2 subgroup needs two generators");
      if (classify(gen1) != MatClass::parabolic || classify(*gen2) != MatClass::parabolic)
        throw Error(Errc::invalid_input, "rank-2 generators must be parabolic");
      if (!(gen1 * *gen2 == *gen2 * gen1))
        throw Error(Errc::invalid_input, "rank-2 generators must commute");
      break;
  }
}

SL2Matrix parabolic_conjugator(const SL2Matrix& m) {
  const FieldPtr& K = m.field();
  int sign = m.trace() == NFElement::from_rational(K, Rat(2)) ? 1 : -1;
  // N = sign*m - I is nonzero nilpotent; its kernel is the fixed line.
  NFElement n1 = (sign > 0 ? m.a() : -m.a()) - Rat(1);
  NFElement n2 = sign > 0 ? m.b() : -m.b();
  NFElement n3 = sign > 0 ? m.c() : -m.c();
  NFElement n4 = (sign > 0 ? m.d() : -m.d()) - Rat(1);
  NFElement v1 = NFElement::zero(K), v2 = NFElement::zero(K);
  if (!n1.is_zero() || !n2.is_zero()) {
    v1 = n2;
    v2 = -n1;
  } else {
    v1 = n4;
    v2 = -n3;
  }
  if (v1.is_zero() && v2.is_zero()) throw Error(Errc::invalid_input, "not a parabolic matrix");
  if (!v1.is_zero()) {
    return SL2Matrix(v1, NFElement::zero(K), v2, v1.inverse());
  }
  return SL2Matrix(v1, -v2.inverse(), v2, NFElement::zero(K));
}

std::optional<UnipotentReading> read_upper_unipotent(const SL2Matrix& m) {
  const FieldPtr& K = m.field();
  if (!m.c().is_zero()) return std::nullopt;
  if (m.a() == NFElement::one(K) && m.d() == NFElement::one(K))
    return UnipotentReading{+1, m.b()};
  if (m.a() == -NFElement::one(K) && m.d() == -NFElement::one(K))
    return UnipotentReading{-1, -m.b()};
  return std::nullopt;
}

std::optional<UnipotentReading> read_lower_unipotent(const SL2Matrix& m) {
  const FieldPtr& K = m.field();
  if (!m.b().is_zero()) return std::nullopt;
  if (m.a() == NFElement::one(K) && m.d() == NFElement::one(K))
    return UnipotentReading{+1, m.c()};
  if (m.a() == -NFElement::one(K) && m.d() == -NFElement::one(K))
    return UnipotentReading{-1, -m.c()};
  return std::nullopt;
}

Diagonalization diagonalize(const SL2Matrix& m, const EmbeddingHandle& emb, long prec_cap) {
  if (classify(m) != MatClass::nonparabolic)
    throw Error(Errc::invalid_input, "only nonparabolic matrices diagonalize");
  const FieldPtr& K = m.field();
  NFElement tr = m.trace();
  AdjoinResult adj = adjoin_quadratic_root(K, -tr, NFElement::one(K), emb, prec_cap);
  FieldHom lift = adj.reducible ? FieldHom::identity(K) : adj.lift;
  FieldPtr F = adj.reducible ? K : adj.ext;
  EmbeddingHandle femb{F, adj.reducible ? emb.root_index : adj.ext_root_index};
  NFElement lam1 = adj.reducible ? adj.root_in_base : adj.root;
  NFElement lam2 = lift.apply(tr) - lam1;
  auto big = abs_greater_one(lam1, femb, prec_cap);
  if (!big.has_value())
    throw Error(Errc::unsupported_eigenvalue, "eigenvalue modulus is not separated from 1");
  NFElement lambda = *big ? lam1 : lam2;
  NFElement mu = *big ? lam2 : lam1;
  SL2Matrix M = m.map(lift);
  auto eigenvector = [&](const NFElement& ev) -> std::pair<NFElement, NFElement> {
    if (!M.b().is_zero()) return {M.b(), ev - M.a()};
    if (!M.c().is_zero()) return {ev - M.d(), M.c()};
    return M.a() == ev ? std::make_pair(NFElement::one(F), NFElement::zero(F))
                       : std::make_pair(NFElement::zero(F), NFElement::one(F));
  };
  auto [x1, y1] = eigenvector(lambda);
  auto [x2, y2] = eigenvector(mu);
  NFElement det = x1 * y2 - y1 * x2;
  if (det.is_zero()) throw Error(Errc::internal, "degenerate eigenvectors");
  NFElement inv = det.inverse();
  SL2Matrix g(x1, x2 * inv, y1, y2 * inv);
  SL2Matrix D(lambda, NFElement::zero(F), NFElement::zero(F), mu);
  if (!(g * D * g.inverse() == M)) throw Error(Errc::internal, "eigen-decomposition mismatch");
  return Diagonalization{lift, femb, g, lambda};
}

namespace {

// Rescales an upper-unipotent frame so the first translation becomes 1 when
// it is a square; returns the diag(w, 1/w) conjugator or identity.
SL2Matrix unipotent_rescaler(const NFElement& tau1, long prec_cap) {
  const FieldPtr& K = tau1.field();
  SqrtResult s = sqrt_in_field(tau1, prec_cap);
  if (!s.root) return SL2Matrix::identity(K);
  NFElement w = *s.root;
  for (const auto& cc : w.coeffs()) {
    if (cc == 0) continue;
    if (cc < 0) w = -w;
    break;
  }
  if (w.is_zero()) return SL2Matrix::identity(K);
  return SL2Matrix(w, NFElement::zero(K), NFElement::zero(K), w.inverse());
}

}  // namespace

Case1Normalization normalize_case1(const SubgroupSpec& H, const SubgroupSpec& K,
                                   const SL2Matrix& gamma, const EmbeddingHandle& emb,
                                   long prec_cap) {
  H.validate();
  K.validate();
  SL2Matrix h = H.gen1.pow(H.power);
  Diagonalization dh = diagonalize(h, emb, prec_cap);
  // Frame 1: conjugate by dh.g so H becomes diagonal.
  SL2Matrix k1 = K.gen1.pow(K.power).map(dh.lift).conj_by(dh.g);
  SL2Matrix gamma1 = gamma.map(dh.lift).conj_by(dh.g);
  Diagonalization dk = diagonalize(k1, dh.emb, prec_cap);
  FieldHom total = dh.lift.then(dk.lift);
  SL2Matrix conj = dh.g.map(dk.lift);
  SL2Matrix gk = dk.g;
  if (gk.a().is_zero() || gk.b().is_zero() || gk.c().is_zero() || gk.d().is_zero())
    return SharedFixedPoint{"subgroup fixed points meet; inputs commute or are non-discrete"};
  SL2Matrix gamma2 = gamma1.map(dk.lift);
  Case1Frame frame{total,
                   dk.emb,
                   conj,
                   dk.lift.apply(dh.lambda),
                   dk.lambda,
                   gk,
                   gamma2 * gk};
  return frame;
}

Case4Normalization normalize_case4(const SubgroupSpec& H, const SubgroupSpec& K,
                                   const SL2Matrix& gamma, const EmbeddingHandle& emb,
                                   long prec_cap) {
  H.validate();
  K.validate();
  if (K.kind != SubgroupSpec::Kind::parabolic_cyclic)
    throw Error(Errc::invalid_input, "the parabolic side must be cyclic with an ambient mate");
  SL2Matrix C = parabolic_conjugator(K.gen1);
  SL2Matrix k1 = K.gen1.conj_by(C);
  SL2Matrix k2 = K.gen2->conj_by(C);
  SL2Matrix h0 = H.gen1.pow(H.power).conj_by(C);
  SL2Matrix g0 = gamma.conj_by(C);
  auto r1 = read_upper_unipotent(k1);
  auto r2 = read_upper_unipotent(k2);
  if (!r1 || !r2) throw Error(Errc::internal, "parabolic frame failed to triangularize");
  // Scale the first translation to 1 when possible.
  SL2Matrix S = unipotent_rescaler(r1->tau, prec_cap);
  if (!S.is_identity()) {
    k1 = k1.conj_by(S);
    k2 = k2.conj_by(S);
    h0 = h0.conj_by(S);
    g0 = g0.conj_by(S);
    C = C * S;
    r1 = read_upper_unipotent(k1);
    r2 = read_upper_unipotent(k2);
  }
  if (solve_q_linear({r1->tau}, r2->tau).has_value())
    throw Error(Errc::invalid_input, "ambient translations are dependent; lattice rank below 2");
  if (h0.c().is_zero())
    return SharedFixedPoint{"loxodromic side fixes the parabolic fixed point"};
  Diagonalization dh = diagonalize(h0, emb, prec_cap);
  FieldHom lift = dh.lift;
  FieldPtr F = dh.emb.K;
  UnipotentReading k1f{r1->sign, lift.apply(r1->tau)};
  UnipotentReading k2f{r2->sign, lift.apply(r2->tau)};
  Case4Frame frame{lift,
                   dh.emb,
                   C.map(lift),
                   k1f,
                   k2f,
                   k2f.tau / k1f.tau,
                   h0.map(lift),
                   dh.g,
                   dh.lambda,
                   g0.map(lift)};
  return frame;
}

Case5Normalization normalize_case5(const SubgroupSpec& H, const SubgroupSpec& K,
                                   const SL2Matrix& gamma, const EmbeddingHandle& emb,
                                   long prec_cap) {
  H.validate();
  K.validate();
  if (!H.parabolic() || !K.parabolic())
    throw Error(Errc::invalid_input, "both subgroups must be parabolic");
  const FieldPtr& K0 = gamma.field();
  SL2Matrix C1 = parabolic_conjugator(H.gen1);
  SL2Matrix h1 = H.gen1.conj_by(C1);
  std::optional<SL2Matrix> h2;
  if (H.gen2) h2 = H.gen2->conj_by(C1);
  SL2Matrix k1 = K.gen1.conj_by(C1);
  std::optional<SL2Matrix> k2;
  if (K.gen2) k2 = K.gen2->conj_by(C1);
  SL2Matrix g0 = gamma.conj_by(C1);
  // K's fixed vector must avoid infinity.
  SL2Matrix CK = parabolic_conjugator(k1);
  if (CK.c().is_zero())
    return SharedFixedPoint{"both subgroups fix the same point"};
  // Send K's fixed point to zero with the upper-unipotent shift by a1/c1.
  NFElement shift = CK.a() / CK.c();
  SL2Matrix C2(NFElement::one(K0), shift, NFElement::zero(K0), NFElement::one(K0));
  h1 = h1.conj_by(C2);
  if (h2) h2 = h2->conj_by(C2);
  k1 = k1.conj_by(C2);
  if (k2) k2 = k2->conj_by(C2);
  g0 = g0.conj_by(C2);
  SL2Matrix C = C1 * C2;
  auto hr1 = read_upper_unipotent(h1);
  if (!hr1) throw Error(Errc::internal, "upper frame failed");
  // Rescale so the first upper translation is 1 when it is a square.
  SL2Matrix S = unipotent_rescaler(hr1->tau, prec_cap);
  if (!S.is_identity()) {
    h1 = h1.conj_by(S);
    if (h2) h2 = h2->conj_by(S);
    k1 = k1.conj_by(S);
    if (k2) k2 = k2->conj_by(S);
    g0 = g0.conj_by(S);
    C = C * S;
    hr1 = read_upper_unipotent(h1);
  }
  auto kr1 = read_lower_unipotent(k1);
  if (!kr1) throw Error(Errc::internal, "lower frame failed to triangularize");
  if (kr1->tau.is_zero()) return SharedFixedPoint{"parabolic sides share a fixed point"};
  Case5Frame frame{FieldHom::identity(K0), EmbeddingHandle{K0, emb.root_index}, C,
                   *hr1,          UnipotentReading{+1, NFElement::zero(K0)},
                   *kr1,          UnipotentReading{+1, NFElement::zero(K0)},
                   false,         false,
                   NFElement::zero(K0), g0};
  if (h2) {
    auto hr2 = read_upper_unipotent(*h2);
    if (!hr2) throw Error(Errc::internal, "ambient mate failed to triangularize");
    if (solve_q_linear({hr1->tau}, hr2->tau).has_value())
      throw Error(Errc::invalid_input, "upper translations are dependent; lattice rank below 2");
    frame.h2 = *hr2;
    frame.h_has_mate = true;
    frame.beta_h = hr2->tau / hr1->tau;
  }
  if (k2) {
    auto kr2 = read_lower_unipotent(*k2);
    if (!kr2) throw Error(Errc::internal, "second lower generator failed to triangularize");
    if (solve_q_linear({kr1->tau}, kr2->tau).has_value())
      throw Error(Errc::invalid_input, "lower translations are dependent; lattice rank below 2");
    frame.k2 = *kr2;
    frame.k_has_mate = true;
  }
  return frame;
}

}  // namespace csep
