#pragma once

#include <optional>

#include "nf/number_field.hpp"

namespace csep {

// A fixed complex place of the field: roots of the minimal polynomial are
// isolated and ordered by (real part, imaginary part); root_index selects one.
struct EmbeddingHandle {
  FieldPtr K;
  int root_index = 0;
};

struct ComplexBox {
  double re = 0;
  double im = 0;
  double radius = 0;
};

inline constexpr long kDefaultPrecisionCap = 4096;

// Certified box around the selected root of the minimal polynomial.
ComplexBox complex_embedding(const EmbeddingHandle& h, long prec_cap = kDefaultPrecisionCap);

// All root boxes of the field at once (midpoints/radii), in embedding order.
std::vector<ComplexBox> field_root_boxes(const FieldPtr& K, long prec_cap = kDefaultPrecisionCap);

// Decides |sigma(x)| > 1; nullopt when the modulus cannot be separated from 1
// within the precision cap.
std::optional<bool> abs_greater_one(const NFElement& x, const EmbeddingHandle& h,
                                    long prec_cap = kDefaultPrecisionCap);

struct ExponentHit {
  Int m;
  int sign;  // +1: x = lam^m; -1: x = -lam^m (only when signs allowed)
};

// Finds the integer m with x = lam^m exactly (x = -lam^m too when allow_sign),
// via the archimedean logarithm at the handle followed by exact confirmation.
// Throws unsupported_eigenvalue when |sigma(lam)| = 1 within the cap.
std::optional<ExponentHit> recover_exponent(const NFElement& x, const NFElement& lam,
                                            const EmbeddingHandle& h, bool allow_sign,
                                            int max_exponent,
                                            long prec_cap = kDefaultPrecisionCap);

struct SqrtResult {
  std::optional<NFElement> root;
  bool proven_none = false;  // a residue witness certifies there is no root
};

// Square root of delta inside its own field: residue-field nonresidue scan for
// refutation, archimedean candidates with exact confirmation for discovery.
SqrtResult sqrt_in_field(const NFElement& delta, long prec_cap = kDefaultPrecisionCap);

struct AdjoinResult {
  bool reducible = false;
  NFElement root_in_base;  // valid when reducible
  FieldPtr ext;            // valid when not reducible
  FieldHom lift;
  NFElement root;
  int ext_root_index = 0;
};

// Root of X^2 + aX + b over K.  If the quadratic already splits in K the root
// is returned in place (flagged) and no extension is made.  Otherwise K is
// extended by a primitive element root + c * gen for the smallest c giving a
// squarefree degree-2n candidate polynomial, and the embedding is transported.
AdjoinResult adjoin_quadratic_root(const FieldPtr& K, const NFElement& a, const NFElement& b,
                                   const EmbeddingHandle& emb,
                                   long prec_cap = kDefaultPrecisionCap);

}  // namespace csep
