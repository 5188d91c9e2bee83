#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cga/multivector.hpp"
#include "cga/text_format.hpp"

namespace cga {

using TargetPoint = std::vector<double>;

enum class RoundKind {
  point,
  point_pair,
  circle,
  line_flat,
  shell_spacelike,
  shell_timelike,
  degenerate,
};

enum class Representation { direct, dual };

std::string_view to_string(RoundKind kind);
std::string_view to_string(Representation rep);

/// A homogeneous blade together with its geometric classification.
struct RoundBlade {
  Multivector blade;
  RoundKind kind = RoundKind::degenerate;
  Representation representation = Representation::direct;
};

enum class DistanceConvention {
  /// -2 * (P(a) . P(b)): reproduces the target-metric squared distance.
  normalized,
  /// The raw model-space inner product P(a) . P(b) (= -d^2/2).
  model_dot,
};

/// Conformal model of a flat target space: the target signature plus one
/// extra +1 and one extra -1 direction, with distinguished null vectors O
/// (origin) and inf (point at infinity) satisfying O.O = inf.inf = 0 and
/// O.inf = -1 exactly in double arithmetic.
class ConformalModel {
public:
  static ConformalModel make(const Signature& target);

  /// Aliases: E2, M11, E3, M21, M31. Minkowski targets list the timelike
  /// vector first, labeled e0, with square -1.
  static ConformalModel from_alias(std::string_view alias);

  const SignaturePtr& target_sig() const { return target_; }
  const SignaturePtr& model_sig() const { return model_; }
  int target_dim() const { return target_->dim(); }

  const Multivector& origin() const { return origin_; }
  const Multivector& infinity() const { return infinity_; }

  /// Basis vector e+ = (O - inf)/sqrt(2) index in the model signature.
  int plus_index() const { return target_->dim(); }
  int minus_index() const { return target_->dim() + 1; }

  /// Text I/O frame over {target labels..., "O", "inf"}.
  Frame null_frame() const;

  /// P(x) = O + sum x_i e_i + (x.x)/2 inf; null, with P(x).inf = -1 exactly.
  Multivector embed_point(const TargetPoint& x) const;

  /// Inverse of embed_point on any grade-1 v with v.inf != 0: rescales to
  /// v.inf = -1 and reads off the target coordinates.
  TargetPoint project_point(const Multivector& v) const;

  double squared_distance(const TargetPoint& a, const TargetPoint& b,
                          DistanceConvention convention = DistanceConvention::normalized) const;

  /// Direct-representation round through three points: P(a)^P(b)^P(c).
  /// Collinear points give a line/flat, coincident ones a degenerate blade.
  RoundBlade circle_through(const TargetPoint& a, const TargetPoint& b,
                            const TargetPoint& c) const;

  /// Norm of P(x) ^ S for a direct round; zero iff x is on the round.
  double incidence_direct(const TargetPoint& x, const RoundBlade& s) const;

  /// P(x) . S for a dual round; the scalar value for grade-1 duals,
  /// otherwise the norm of the contraction.
  double incidence_dual(const TargetPoint& x, const RoundBlade& s) const;

  /// Relative incidence verdict at tolerance tol (default 1e-9).
  bool is_incident(const TargetPoint& x, const RoundBlade& s, double tol = 1e-9) const;

  /// Dual round sigma = P(center) - r2/2 inf, with sigma.sigma = r2.
  /// Negative r2 gives timelike shells in Minkowski targets.
  RoundBlade dual_round(const TargetPoint& center, double r2) const;

  /// Flip between direct and dual representation of the same round.
  RoundBlade dualize(const RoundBlade& s) const;

  /// Decision tree on (grade, blade square, inf^S) producing the kind tag.
  RoundKind classify_round(const Multivector& blade, Representation rep) const;

  /// Target-metric square of a coordinate vector.
  double target_square(const TargetPoint& x) const;

  bool target_is_minkowski() const { return target_->q() > 0; }

private:
  ConformalModel() = default;

  RoundKind classify_dual_vector(const Multivector& sigma) const;

  SignaturePtr target_;
  SignaturePtr model_;
  Multivector origin_;
  Multivector infinity_;
  double alpha_ = 0.0;  // e+/e- coefficient of O
  double beta_ = 0.0;   // e+/e- coefficient magnitude of inf
};

}  // namespace cga
