#pragma once

#include <cstdint>
#include <vector>

#include "cga/signature.hpp"

namespace cga {

/// Bit i set means basis vector i is a factor of the blade; factors are
/// ordered by ascending index (canonical order).
using BladeMask = std::uint8_t;

int blade_grade(BladeMask mask);

/// Sign of the geometric product of two canonical basis blades, including
/// the metric squares picked up by repeated factors. Never zero for a
/// nondegenerate metric. The resulting blade is mask_a ^ mask_b.
int blade_product_sign(const Signature& sig, BladeMask a, BladeMask b);

/// One stored blade/coefficient pair.
struct Term {
  BladeMask mask;
  double coeff;
};

/// Sparse real multivector over the basis blades of a diagonal Clifford
/// algebra. Terms are kept sorted by mask; coefficients that are exactly
/// zero are never stored. Values are immutable in spirit: every operation
/// returns a fresh multivector, nothing mutates shared state.
class Multivector {
public:
  Multivector() = default;
  explicit Multivector(SignaturePtr sig) : sig_(std::move(sig)) {}

  static Multivector scalar(SignaturePtr sig, double value);
  static Multivector basis_vector(SignaturePtr sig, int index);
  static Multivector basis_blade(SignaturePtr sig, BladeMask mask, double coeff = 1.0);

  const SignaturePtr& sig() const { return sig_; }
  const std::vector<Term>& terms() const { return terms_; }

  double coeff(BladeMask mask) const;
  double scalar_part() const { return coeff(0); }

  bool is_zero() const { return terms_.empty(); }
  int term_count() const { return static_cast<int>(terms_.size()); }

  /// Largest grade with a stored term; -1 for the zero multivector.
  int max_grade() const;

  /// True when all stored terms share one grade (the zero multivector is
  /// homogeneous of every grade). Writes that grade when requested.
  bool is_homogeneous(int* grade_out = nullptr) const;

  double norm() const;           // 2-norm of coefficients
  double max_abs_coeff() const;

  /// Explicit normalization point: drops terms with |coeff| < eps.
  Multivector pruned(double eps = 1e-12) const;

  Multivector operator-() const;
  Multivector& operator+=(const Multivector& rhs);
  Multivector& operator-=(const Multivector& rhs);
  Multivector& operator*=(double s);

  /// Terms must arrive sorted by mask with no duplicates; zeros dropped.
  static Multivector from_sorted_terms(SignaturePtr sig, std::vector<Term> terms);

private:
  SignaturePtr sig_;
  std::vector<Term> terms_;
};

Multivector operator+(const Multivector& a, const Multivector& b);
Multivector operator-(const Multivector& a, const Multivector& b);
Multivector operator*(double s, const Multivector& a);
Multivector operator*(const Multivector& a, double s);

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector outer_product(const Multivector& a, const Multivector& b);

/// The metric pairing: on two vectors this is the symmetric scalar product;
/// on mixed grades it is the grade-|s-r| part of the geometric product
/// (the left contraction of the lower-graded argument onto the higher).
Multivector inner_product(const Multivector& a, const Multivector& b);

/// Scalar part of the inner product, handy for vector-vector pairs.
double inner_scalar(const Multivector& a, const Multivector& b);

/// Euclidean dot product of the coefficient vectors, ignoring the metric.
/// Used for span projections and orthonormalization in coefficient space.
double coeff_dot(const Multivector& a, const Multivector& b);

Multivector grade_project(const Multivector& a, int k);
Multivector reverse(const Multivector& a);
Multivector grade_involution(const Multivector& a);

/// a * I^-1 with I the canonical pseudoscalar (basis vectors in ascending
/// label order).
Multivector dual(const Multivector& a);

/// (ab - ba) / 2
Multivector commutator_half(const Multivector& a, const Multivector& b);

Multivector pseudoscalar(const SignaturePtr& sig);

/// Sign of I*I for the canonical pseudoscalar, +1 or -1.
int pseudoscalar_square_sign(const Signature& sig);

/// Geometric product shorthand.
inline Multivector operator*(const Multivector& a, const Multivector& b) {
  return geometric_product(a, b);
}
/// Outer product shorthand.
inline Multivector operator^(const Multivector& a, const Multivector& b) {
  return outer_product(a, b);
}

bool approx_equal(const Multivector& a, const Multivector& b, double tol);

}  // namespace cga
