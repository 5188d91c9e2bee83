#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string_view>
#include <vector>

#include "cga/conformal.hpp"
#include "cga/multivector.hpp"

namespace cga {

/// A Lie algebra presented by bivector basis elements with structure
/// constants for the half-commutator bracket [a,b] = (ab - ba)/2 and the
/// Killing form K(i,j) = tr(ad B_i . ad B_j).
struct LieAlgebraPresentation {
  std::vector<Multivector> basis;
  /// bracket_coeffs[i](j,k): [B_i, B_j] = sum_k bracket_coeffs[i](j,k) B_k.
  std::vector<Eigen::MatrixXd> bracket_coeffs;
  Eigen::MatrixXd killing;
  /// Worst relative residual of a bracket after projection onto the span.
  double closure_residual = 0.0;
  /// Worst relative Jacobi defect over basis triples.
  double jacobi_residual = 0.0;

  int dim() const { return static_cast<int>(basis.size()); }

  /// Adjoint matrix of basis element i: (ad B_i)(k,j) = c[i](j,k).
  Eigen::MatrixXd ad(int i) const;

  double structure_constant(int i, int j, int k) const {
    return bracket_coeffs[static_cast<size_t>(i)](j, k);
  }
};

/// Presentation over a caller-supplied bivector basis. The elements must be
/// homogeneous grade 2, share one signature, and be linearly independent.
LieAlgebraPresentation make_presentation(std::vector<Multivector> basis);

/// Full isometry algebra of the model space: all coordinate bivectors
/// e_i e_j (i < j), dimension n(n-1)/2.
LieAlgebraPresentation isometry_algebra(const SignaturePtr& sig);

/// Infinitesimal isometry action of a bivector: (Bx - xB)/2. Grade
/// preserving; on vectors this is the generator of the rotation/boost.
Multivector act(const Multivector& bivector, const Multivector& x);

struct KillingSignature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  bool operator==(const KillingSignature&) const = default;
};

enum class AlgebraName { so21, so3, e2, p11, so31, so4, so22, so41, so32, unknown };

std::string_view to_string(AlgebraName name);

struct ClassificationLabel {
  AlgebraName name = AlgebraName::unknown;
  int dim = 0;
  int killing_rank = 0;
  KillingSignature killing_signature;
};

/// Names the algebra from the (dim, Killing rank, Killing signature)
/// fingerprint, confirmed where needed by adjoint eigenvalue probes:
/// the Levi generator of a 3-dimensional rank-1 algebra must act
/// elliptically for e(2) and hyperbolically for p(1,1); the 6-dimensional
/// rank-6 split uses five seeded random elements, whose adjoint spectra are
/// axial (purely real or purely imaginary) exactly for the so(2,2) type.
ClassificationLabel classify(const LieAlgebraPresentation& algebra, double eps = 1e-9,
                             std::uint64_t probe_seed = 0x5eed5eed5eed5eedull);

struct StabilizerResult {
  Multivector fixed;
  LieAlgebraPresentation algebra;
  ClassificationLabel label;
  /// Worst ||act(B, fixed)|| / (||B|| ||fixed||) over the returned basis.
  double max_action_residual = 0.0;
  /// Rank of B -> act(B, fixed); full dim = stabilizer dim + this rank.
  int action_rank = 0;
};

/// Nullspace of the infinitesimal action on `fixed` inside `algebra`,
/// orthonormalized in coefficient space, with recomputed structure
/// constants, Killing form and classification. The rank decision uses
/// singular values below eps * sigma_max.
StabilizerResult stabilizer_of(const Multivector& fixed, const LieAlgebraPresentation& algebra,
                               double eps = 1e-9);

enum class AlgebraComparison { isomorphic, distinct, undecided };

std::string_view to_string(AlgebraComparison cmp);

/// Invariant-based comparison only: equal known labels are isomorphic,
/// different known labels are distinct, anything involving `unknown` is
/// undecided.
AlgebraComparison compare_little_algebras(const StabilizerResult& a, const StabilizerResult& b);

/// Split of a model-space bivector over the mixed basis
/// {e_i^inf, e_i^O, e_i^e_j, O^inf}; the three parts re-sum to the input
/// exactly.
struct InfinityDecomposition {
  Multivector translation_part;  // e_i ^ inf span: target translations
  Multivector tangent_part;      // e_i ^ O span: tangent vectors at the origin
  Multivector remainder;         // e_i ^ e_j and O ^ inf span
};

InfinityDecomposition decompose_infinity_generator(const ConformalModel& model,
                                                   const Multivector& bivector);

}  // namespace cga
