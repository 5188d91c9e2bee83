#include "cga/so21_rep.hpp"

#include <cmath>
#include <stdexcept>

namespace cga {

namespace {

constexpr double kRadicandTolerance = 1e-12;

double ladder_radicand(double m, double q, int direction) {
  // S+: m(m+1) - q ; S-: m(m-1) - q
  return m * (m + direction) - q;
}

double checked_sqrt(double radicand) {
  if (radicand < -kRadicandTolerance)
    throw std::domain_error("label outside unitarity region");
  return std::sqrt(std::max(0.0, radicand));
}

}  // namespace

RepLabel RepLabel::principal(double s, double eps) {
  if (!(s >= 0.0)) throw std::invalid_argument("principal series needs s >= 0");
  if (eps != 0.0 && eps != 0.5)
    throw std::invalid_argument("weight offset must be 0 or 1/2");
  RepLabel l;
  l.series_ = Series::principal;
  l.s_ = s;
  l.eps_ = eps;
  return l;
}

RepLabel RepLabel::discrete_plus(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("discrete series needs k > 0");
  RepLabel l;
  l.series_ = Series::discrete_plus;
  l.k_ = k;
  return l;
}

RepLabel RepLabel::discrete_minus(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("discrete series needs k > 0");
  RepLabel l;
  l.series_ = Series::discrete_minus;
  l.k_ = k;
  return l;
}

double RepLabel::casimir_q() const {
  if (series_ == Series::principal) return -(0.25 + s_ * s_);
  return k_ * (k_ + 1.0);
}

std::string_view RepLabel::series_name() const {
  switch (series_) {
    case Series::principal: return "principal";
    case Series::discrete_plus: return "discrete_plus";
    case Series::discrete_minus: return "discrete_minus";
  }
  return "principal";
}

TruncatedRep build_rep(const RepLabel& label, int half_width) {
  if (half_width < 2) throw std::invalid_argument("truncation width must be at least 2");

  TruncatedRep rep;
  rep.label = label;
  rep.half_width = half_width;

  switch (label.series()) {
    case RepLabel::Series::principal:
      for (int j = -half_width; j <= half_width; ++j)
        rep.weights.push_back(label.eps() + j);
      break;
    case RepLabel::Series::discrete_plus:
      for (int j = 0; j < half_width; ++j) rep.weights.push_back(label.k() + 1.0 + j);
      break;
    case RepLabel::Series::discrete_minus:
      for (int j = half_width - 1; j >= 0; --j)
        rep.weights.push_back(-(label.k() + 1.0 + j));
      break;
  }

  int n = rep.size();
  double q = label.casimir_q();
  rep.S3 = Eigen::MatrixXd::Zero(n, n);
  rep.Splus = Eigen::MatrixXd::Zero(n, n);
  rep.Sminus = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) rep.S3(i, i) = rep.weights[static_cast<size_t>(i)];
  for (int i = 0; i + 1 < n; ++i) {
    double m = rep.weights[static_cast<size_t>(i)];
    rep.Splus(i + 1, i) = checked_sqrt(ladder_radicand(m, q, +1));
  }
  for (int i = 1; i < n; ++i) {
    double m = rep.weights[static_cast<size_t>(i)];
    rep.Sminus(i - 1, i) = checked_sqrt(ladder_radicand(m, q, -1));
  }

  const std::complex<double> half(0.5, 0.0);
  const std::complex<double> half_over_i(0.0, -0.5);  // 1/(2i)
  rep.S1 = half * (rep.Splus + rep.Sminus).cast<std::complex<double>>();
  rep.S2 = half_over_i * (rep.Splus - rep.Sminus).cast<std::complex<double>>();
  Eigen::MatrixXcd s3c = rep.S3.cast<std::complex<double>>();
  rep.casimir = s3c * s3c - rep.S1 * rep.S1 - rep.S2 * rep.S2;
  return rep;
}

CommutatorReport check_commutators(const TruncatedRep& rep) {
  CommutatorReport report;
  Eigen::MatrixXd r1 = rep.S3 * rep.Splus - rep.Splus * rep.S3 - rep.Splus;
  Eigen::MatrixXd r2 = rep.S3 * rep.Sminus - rep.Sminus * rep.S3 + rep.Sminus;
  Eigen::MatrixXd r3 = rep.Splus * rep.Sminus - rep.Sminus * rep.Splus + 2.0 * rep.S3;
  report.max_full = std::max({r1.cwiseAbs().maxCoeff(), r2.cwiseAbs().maxCoeff(),
                              r3.cwiseAbs().maxCoeff()});
  if (rep.has_interior()) {
    int lo = rep.interior_begin(), hi = rep.interior_end();
    auto block_max = [&](const Eigen::MatrixXd& m) {
      return m.block(lo, lo, hi - lo, hi - lo).cwiseAbs().maxCoeff();
    };
    report.s3_raise = block_max(r1);
    report.s3_lower = block_max(r2);
    report.ladder = block_max(r3);
    report.max_interior = std::max({report.s3_raise, report.s3_lower, report.ladder});
  }
  return report;
}

CasimirReport check_casimir(const TruncatedRep& rep) {
  CasimirReport report;
  report.q = rep.label.casimir_q();
  Eigen::MatrixXcd d = rep.casimir;
  report.max_full = (d - report.q * Eigen::MatrixXcd::Identity(rep.size(), rep.size()))
                        .cwiseAbs()
                        .maxCoeff();
  if (rep.has_interior()) {
    int lo = rep.interior_begin(), hi = rep.interior_end();
    for (int r = lo; r < hi; ++r)
      for (int c = lo; c < hi; ++c) {
        double v = std::abs(d(r, c) - (r == c ? std::complex<double>(report.q) : 0.0));
        if (r == c)
          report.max_interior_diagonal_error = std::max(report.max_interior_diagonal_error, v);
        else
          report.max_interior_offdiagonal = std::max(report.max_interior_offdiagonal, v);
      }
  }
  return report;
}

std::optional<double> extremal_annihilation_magnitude(const TruncatedRep& rep) {
  double q = rep.label.casimir_q();
  switch (rep.label.series()) {
    case RepLabel::Series::principal:
      return std::nullopt;
    case RepLabel::Series::discrete_plus: {
      double lowest = rep.weights.front();
      return std::sqrt(std::fabs(ladder_radicand(lowest, q, -1)));
    }
    case RepLabel::Series::discrete_minus: {
      double highest = rep.weights.back();
      return std::sqrt(std::fabs(ladder_radicand(highest, q, +1)));
    }
  }
  return std::nullopt;
}

bool two_sided_spectrum_check(const RepLabel& label) {
  return label.series() == RepLabel::Series::principal;
}

}  // namespace cga
