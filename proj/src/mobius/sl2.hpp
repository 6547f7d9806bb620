#pragma once

#include <optional>

#include "nf/embedding.hpp"
#include "sep/separation.hpp"

namespace csep {

class SL2Matrix {
 public:
  SL2Matrix() = default;
  SL2Matrix(NFElement a, NFElement b, NFElement c, NFElement d);

  static SL2Matrix identity(const FieldPtr& K);

  const FieldPtr& field() const { return a_.field(); }
  const NFElement& a() const { return a_; }
  const NFElement& b() const { return b_; }
  const NFElement& c() const { return c_; }
  const NFElement& d() const { return d_; }

  SL2Matrix operator*(const SL2Matrix& o) const;
  SL2Matrix inverse() const;
  SL2Matrix negated() const;
  SL2Matrix pow(const Int& e) const;
  SL2Matrix conj_by(const SL2Matrix& g) const;  // g^{-1} * this * g
  SL2Matrix map(const FieldHom& hom) const;
  NFElement trace() const { return a_ + d_; }

  bool operator==(const SL2Matrix& o) const;
  bool operator!=(const SL2Matrix& o) const { return !(*this == o); }
  bool eq_up_to_sign(const SL2Matrix& o) const;
  bool is_identity() const;
  bool is_neg_identity() const;

 private:
  NFElement a_, b_, c_, d_;
};

enum class MatClass { identity_class, parabolic, nonparabolic };

MatClass classify(const SL2Matrix& m);

struct SubgroupSpec {
  enum class Kind { loxodromic_cyclic, parabolic_cyclic, parabolic_rank2 };
  Kind kind;
  SL2Matrix gen1;
  std::optional<SL2Matrix> gen2;  // ambient basis mate (cyclic) or second generator (rank 2)
  Int power = Int(1);             // loxodromic: the subgroup is <gen1^power>

  void validate() const;
  bool parabolic() const { return kind != Kind::loxodromic_cyclic; }
  int rank() const { return kind == Kind::parabolic_rank2 ? 2 : 1; }
};

struct Diagonalization {
  FieldHom lift;        // base field -> frame field (identity when no extension)
  EmbeddingHandle emb;  // embedding of the frame field
  SL2Matrix g;          // lifted matrix = g * diag(lambda, 1/lambda) * g^{-1}
  NFElement lambda;     // |sigma(lambda)| > 1 at emb
};

// Exact eigen-decomposition of a nonparabolic matrix, extending the field by
// the eigenvalue when needed.  Throws unsupported_eigenvalue when the modulus
// of the eigenvalue cannot be separated from 1 (elliptic-like input).
Diagonalization diagonalize(const SL2Matrix& m, const EmbeddingHandle& emb,
                            long prec_cap = kDefaultPrecisionCap);

// Unipotent conjugating frame of a parabolic matrix: conj^{-1} * m * conj is
// (+-1, tau; 0, +-1).  det(conj) = 1.
SL2Matrix parabolic_conjugator(const SL2Matrix& m);

// sign * (1, tau; 0, 1) reading of an upper-triangular unipotent-like matrix.
struct UnipotentReading {
  int sign;  // +1 or -1
  NFElement tau;
};
std::optional<UnipotentReading> read_upper_unipotent(const SL2Matrix& m);
std::optional<UnipotentReading> read_lower_unipotent(const SL2Matrix& m);

struct SharedFixedPoint {
  std::string detail;
};

// Case frames.  Every frame carries the total conjugator and field lift so
// that applying them to the original data reproduces the transformed data.

struct Case1Frame {
  FieldHom lift;
  EmbeddingHandle emb;
  SL2Matrix conj;          // X -> conj^{-1} X conj was applied after lifting
  NFElement lambda;        // H = <diag(lambda, 1/lambda)> after the frame map
  NFElement omega;         // K generator = gk * diag(omega, 1/omega) * gk^{-1}
  SL2Matrix gk;            // all four entries nonzero
  SL2Matrix gamma_target;  // (framed gamma) * gk; membership target is
                           // diag(lambda^m) * gk * diag(omega^n)
};

using Case1Normalization = std::variant<Case1Frame, SharedFixedPoint>;

Case1Normalization normalize_case1(const SubgroupSpec& H, const SubgroupSpec& K,
                                   const SL2Matrix& gamma, const EmbeddingHandle& emb,
                                   long prec_cap = kDefaultPrecisionCap);

struct Case4Frame {
  FieldHom lift;
  EmbeddingHandle emb;
  SL2Matrix conj;
  // Parabolic side, upper unipotent: k1 -> sign1 * u(tau1), k2 -> sign2 * u(tau2).
  UnipotentReading k1, k2;
  NFElement beta;  // tau2 / tau1
  // Loxodromic side in the same frame, with eigen data.
  SL2Matrix h;
  SL2Matrix gh;       // h = gh * diag(lambda, 1/lambda) * gh^{-1}
  NFElement lambda;
  SL2Matrix gamma;    // framed gamma
};

using Case4Normalization = std::variant<Case4Frame, SharedFixedPoint>;

// H loxodromic, K parabolic cyclic with ambient mate; moves K's fixed point
// to infinity and rescales the first translation to 1 when it is a square.
Case4Normalization normalize_case4(const SubgroupSpec& H, const SubgroupSpec& K,
                                   const SL2Matrix& gamma, const EmbeddingHandle& emb,
                                   long prec_cap = kDefaultPrecisionCap);

struct Case5Frame {
  FieldHom lift;
  EmbeddingHandle emb;
  SL2Matrix conj;
  // H side upper unipotent, K side lower unipotent.
  UnipotentReading h1, h2;  // h2 only meaningful when h_has_mate
  UnipotentReading k1, k2;  // lower-left entries; k2 only when k_has_mate
  bool h_has_mate = false, k_has_mate = false;
  NFElement beta_h;  // h2.tau / h1.tau when present
  SL2Matrix gamma;
};

using Case5Normalization = std::variant<Case5Frame, SharedFixedPoint>;

// Both subgroups parabolic; H's fixed point goes to infinity, K's to zero.
Case5Normalization normalize_case5(const SubgroupSpec& H, const SubgroupSpec& K,
                                   const SL2Matrix& gamma, const EmbeddingHandle& emb,
                                   long prec_cap = kDefaultPrecisionCap);

}  // namespace csep
