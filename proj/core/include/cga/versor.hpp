#pragma once

#include "cga/multivector.hpp"

namespace cga {

/// A product of invertible vectors, acting on multivectors by sandwich
/// conjugation. V * reverse(V) must be a nonzero scalar (checked to 1e-9
/// relative on construction).
class Versor {
public:
  enum class Parity { even, odd };

  Versor(Multivector mv, Parity parity);

  static Versor identity(SignaturePtr sig);

  const Multivector& mv() const { return mv_; }
  Parity parity() const { return parity_; }

  /// V x V~ / (V V~), with grade involution applied to x for odd versors.
  Multivector apply(const Multivector& x) const;

private:
  Multivector mv_;
  Parity parity_;
};

/// Exponential of a homogeneous grade-2 element. Uses the closed form when
/// B*B is scalar (rotation / boost / null translation branches), otherwise
/// sums the power series until the term norm drops below 1e-15 or max_terms
/// terms have been added.
Versor exp_bivector(const Multivector& bivector, int max_terms = 200);

/// Power-series exponential, no closed-form shortcut. Same contract.
Versor exp_bivector_series(const Multivector& bivector, int max_terms = 200);

inline Multivector apply_versor(const Versor& v, const Multivector& x) {
  return v.apply(x);
}

}  // namespace cga
