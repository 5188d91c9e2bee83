#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string_view>
#include <vector>

namespace cga {

/// Label of a unitary irreducible series of so(2,1) in the basis where the
/// compact generator is diagonal. The principal series carries a continuous
/// parameter s >= 0 and a weight offset eps in {0, 1/2}; the discrete
/// series are labelled by k > 0 and are bounded from one side.
class RepLabel {
public:
  enum class Series { principal, discrete_plus, discrete_minus };

  /// Defaults to principal(0, 0).
  RepLabel() = default;

  static RepLabel principal(double s, double eps);
  static RepLabel discrete_plus(double k);
  static RepLabel discrete_minus(double k);

  Series series() const { return series_; }
  double s() const { return s_; }
  double eps() const { return eps_; }
  double k() const { return k_; }

  /// Casimir eigenvalue: -(1/4 + s^2) for the principal series, k(k+1)
  /// for the discrete series.
  double casimir_q() const;

  std::string_view series_name() const;

private:
  Series series_ = Series::principal;
  double s_ = 0.0;
  double eps_ = 0.0;
  double k_ = 0.0;
};

/// Finite window of a unitary irreducible representation in the weight
/// basis. Weights run ascending; ladder matrices are exact on the interior
/// band (two indices away from each truncation edge), edge rows are
/// truncation artifacts.
struct TruncatedRep {
  RepLabel label;
  int half_width = 0;            // M
  std::vector<double> weights;   // S3 diagonal, ascending
  Eigen::MatrixXd S3;
  Eigen::MatrixXd Splus;         // S+|m> = sqrt(m(m+1)-q)|m+1>
  Eigen::MatrixXd Sminus;        // S-|m> = sqrt(m(m-1)-q)|m-1>
  Eigen::MatrixXcd S1;           // (S+ + S-)/2
  Eigen::MatrixXcd S2;           // (S+ - S-)/(2i)
  Eigen::MatrixXcd casimir;      // S3^2 - S1^2 - S2^2

  int size() const { return static_cast<int>(weights.size()); }
  int interior_begin() const { return 2; }
  int interior_end() const { return size() - 2; }  // half-open
  bool has_interior() const { return interior_end() > interior_begin(); }
};

/// Builds the truncated matrices for a label. M >= 2. The principal series
/// uses the symmetric band eps-M..eps+M; the discrete series use the
/// one-sided band starting at +-(k+1), M weights long. Radicands more
/// negative than -1e-12 reject the label; tiny negatives clip to zero.
TruncatedRep build_rep(const RepLabel& label, int half_width);

struct CommutatorReport {
  double s3_raise = 0.0;   // ||[S3,S+] - S+|| on the interior
  double s3_lower = 0.0;   // ||[S3,S-] + S-|| on the interior
  double ladder = 0.0;     // ||[S+,S-] + 2 S3|| on the interior
  double max_interior = 0.0;
  double max_full = 0.0;   // including edge rows, O(1) by truncation
};

CommutatorReport check_commutators(const TruncatedRep& rep);

struct CasimirReport {
  double q = 0.0;
  double max_interior_diagonal_error = 0.0;
  double max_interior_offdiagonal = 0.0;
  double max_full = 0.0;
};

CasimirReport check_casimir(const TruncatedRep& rep);

/// Magnitude of the would-be ladder element past the extremal weight;
/// exactly the annihilation condition for the discrete series. Empty for
/// the principal series.
std::optional<double> extremal_annihilation_magnitude(const TruncatedRep& rep);

/// True iff the series' weight set is unbounded in both directions.
bool two_sided_spectrum_check(const RepLabel& label);

}  // namespace cga
