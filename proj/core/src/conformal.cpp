#include "cga/conformal.hpp"

#include <cmath>
#include <stdexcept>

namespace cga {

namespace {

constexpr double kRelTol = 1e-9;

double nudge(double v, int ulps) {
  double t = v;
  for (int i = 0; i < (ulps < 0 ? -ulps : ulps); ++i)
    t = std::nextafter(t, ulps < 0 ? -HUGE_VAL : HUGE_VAL);
  return t;
}

/// The O and inf coefficients are the doubles nearest 1/sqrt(2) whose
/// product rounds to exactly 0.5, so that the accumulated inner product
/// O.inf comes out as the double -1.0, not merely within roundoff.
std::pair<double, double> null_basis_coefficients() {
  double a0 = std::sqrt(0.5);
  for (int spread = 0; spread <= 4; ++spread)
    for (int i = -spread; i <= spread; ++i) {
      int j_mag = spread - (i < 0 ? -i : i);
      for (int j : {-j_mag, j_mag}) {
        double a = nudge(a0, i), b = nudge(a0, j);
        if (a * b == 0.5) return {a, b};
        if (j_mag == 0) break;
      }
    }
  return {a0, a0};  // unreachable on IEEE-754 doubles
}

/// Picks e+/e- coefficients for an embedded point within ~20 ulps of the
/// ideal (alpha -+ u*beta) such that the engine's two-term accumulation
/// (c+.(-beta)) + (c-.beta).(-1) evaluates to exactly -1.0. The coefficient
/// with the smaller magnitude is the adjustable one: its product lattice is
/// finer than the rounding window of the sum, so a nearby exact hit exists;
/// the fixed side is retried a few ulps in each direction to reseed the
/// search when the lattice straddles the window.
std::pair<double, double> exact_point_split(double alpha, double beta, double u) {
  double shift = u * beta;
  if (!std::isfinite(shift)) throw std::invalid_argument("coordinates overflow the embedding");
  double naive_plus = alpha - shift;
  double naive_minus = alpha + shift;
  bool adjust_plus = std::fabs(naive_plus) <= std::fabs(naive_minus);
  double fixed_naive = adjust_plus ? naive_minus : naive_plus;
  double adj_naive = adjust_plus ? naive_plus : naive_minus;

  for (int k = 0; k <= 24; ++k)
    for (int ks : {k, -k}) {
      double cf = nudge(fixed_naive, ks);
      double bf = cf * beta;
      double seed = (1.0 - bf) / beta;
      for (double base : {adj_naive, seed})
        for (int j = 0; j <= 8; ++j)
          for (int js : {j, -j}) {
            double ca = nudge(base, js);
            if (ca * beta + bf == 1.0)
              return adjust_plus ? std::pair{ca, cf} : std::pair{cf, ca};
            if (j == 0) break;
          }
      if (k == 0) break;
    }
  return {naive_plus, naive_minus};
}

}  // namespace

std::string_view to_string(RoundKind kind) {
  switch (kind) {
    case RoundKind::point: return "point";
    case RoundKind::point_pair: return "point-pair";
    case RoundKind::circle: return "circle";
    case RoundKind::line_flat: return "line/flat";
    case RoundKind::shell_spacelike: return "shell-spacelike";
    case RoundKind::shell_timelike: return "shell-timelike";
    case RoundKind::degenerate: return "degenerate";
  }
  return "degenerate";
}

std::string_view to_string(Representation rep) {
  return rep == Representation::direct ? "direct" : "dual";
}

ConformalModel ConformalModel::make(const Signature& target) {
  if (target.dim() + 2 > Signature::kMaxDim)
    throw std::invalid_argument("target dimension too large for a conformal model");
  if (target.index_of("e+") >= 0 || target.index_of("e-") >= 0)
    throw std::invalid_argument("target labels e+ / e- are reserved");

  ConformalModel m;
  m.target_ = make_signature(target);

  std::vector<std::string> labels = target.labels();
  std::vector<int> squares;
  for (int i = 0; i < target.dim(); ++i) squares.push_back(target.square(i));
  labels.push_back("e+");
  squares.push_back(1);
  labels.push_back("e-");
  squares.push_back(-1);
  m.model_ = make_signature(Signature(std::move(labels), std::move(squares)));

  auto [alpha, beta] = null_basis_coefficients();
  m.alpha_ = alpha;
  m.beta_ = beta;

  Multivector eplus = Multivector::basis_vector(m.model_, m.plus_index());
  Multivector eminus = Multivector::basis_vector(m.model_, m.minus_index());
  m.origin_ = alpha * eplus + alpha * eminus;     // (e+ + e-)/sqrt(2)
  m.infinity_ = beta * eminus - beta * eplus;     // (e- - e+)/sqrt(2)
  return m;
}

ConformalModel ConformalModel::from_alias(std::string_view alias) {
  auto minkowski = [](int d) {
    std::vector<std::string> labels{"e0"};
    std::vector<int> squares{-1};
    for (int i = 1; i < d; ++i) {
      labels.push_back("e" + std::to_string(i));
      squares.push_back(1);
    }
    return Signature(std::move(labels), std::move(squares));
  };
  if (alias == "E2") return make(Signature::diagonal(2, 0));
  if (alias == "E3") return make(Signature::diagonal(3, 0));
  if (alias == "M11") return make(minkowski(2));
  if (alias == "M21") return make(minkowski(3));
  if (alias == "M31") return make(minkowski(4));
  throw std::invalid_argument("unknown model alias: " + std::string(alias));
}

Frame ConformalModel::null_frame() const {
  std::vector<std::pair<std::string, Multivector>> vecs;
  for (int i = 0; i < target_->dim(); ++i)
    vecs.emplace_back(target_->label(i), Multivector::basis_vector(model_, i));
  vecs.emplace_back("O", origin_);
  vecs.emplace_back("inf", infinity_);
  Frame frame(model_, std::move(vecs));
  frame.add_parse_alias("e+", Multivector::basis_vector(model_, plus_index()));
  frame.add_parse_alias("e-", Multivector::basis_vector(model_, minus_index()));
  return frame;
}

double ConformalModel::target_square(const TargetPoint& x) const {
  if (static_cast<int>(x.size()) != target_->dim())
    throw std::invalid_argument("coordinate count does not match the target dimension");
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    s += target_->square(static_cast<int>(i)) * x[i] * x[i];
  return s;
}

Multivector ConformalModel::embed_point(const TargetPoint& x) const {
  double u = 0.5 * target_square(x);
  for (double c : x)
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  auto [cplus, cminus] = exact_point_split(alpha_, beta_, u);

  std::vector<Term> terms;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) terms.push_back({static_cast<BladeMask>(1u << i), x[i]});
  if (cplus != 0.0) terms.push_back({static_cast<BladeMask>(1u << plus_index()), cplus});
  if (cminus != 0.0) terms.push_back({static_cast<BladeMask>(1u << minus_index()), cminus});
  return Multivector::from_sorted_terms(model_, std::move(terms));
}

TargetPoint ConformalModel::project_point(const Multivector& v) const {
  // Versor sandwiches leave sub-1e-9 off-grade dust; keep the vector part.
  Multivector vec = grade_project(v, 1);
  if (vec.is_zero() || (v - vec).norm() > 1e-9 * v.norm())
    throw std::invalid_argument("projection expects a nonzero grade-1 argument");
  double s = inner_scalar(vec, infinity_);
  if (std::fabs(s) <= 1e-12 * vec.norm() * infinity_.norm())
    throw std::domain_error("point at infinity has no target coordinates");
  double scale = -1.0 / s;
  TargetPoint out(static_cast<size_t>(target_->dim()), 0.0);
  for (int i = 0; i < target_->dim(); ++i)
    out[static_cast<size_t>(i)] = scale * vec.coeff(static_cast<BladeMask>(1u << i));
  return out;
}

double ConformalModel::squared_distance(const TargetPoint& a, const TargetPoint& b,
                                        DistanceConvention convention) const {
  double dot = inner_scalar(embed_point(a), embed_point(b));
  return convention == DistanceConvention::normalized ? -2.0 * dot : dot;
}

RoundBlade ConformalModel::circle_through(const TargetPoint& a, const TargetPoint& b,
                                          const TargetPoint& c) const {
  Multivector pa = embed_point(a), pb = embed_point(b), pc = embed_point(c);
  Multivector blade = outer_product(outer_product(pa, pb), pc);
  RoundBlade out{blade, RoundKind::degenerate, Representation::direct};
  double scale = pa.norm() * pb.norm() * pc.norm();
  if (blade.norm() <= kRelTol * scale) {
    out.blade = Multivector(model_);
    return out;
  }
  out.kind = classify_round(blade, Representation::direct);
  return out;
}

double ConformalModel::incidence_direct(const TargetPoint& x, const RoundBlade& s) const {
  return outer_product(embed_point(x), s.blade).norm();
}

double ConformalModel::incidence_dual(const TargetPoint& x, const RoundBlade& s) const {
  int g = 0;
  s.blade.is_homogeneous(&g);
  if (g == 1) return inner_scalar(embed_point(x), s.blade);
  return inner_product(embed_point(x), s.blade).norm();
}

bool ConformalModel::is_incident(const TargetPoint& x, const RoundBlade& s, double tol) const {
  double scale = embed_point(x).norm() * s.blade.norm();
  if (scale == 0.0) return true;  // degenerate blade: everything incident
  double v = s.representation == Representation::direct ? incidence_direct(x, s)
                                                        : std::fabs(incidence_dual(x, s));
  return v <= tol * scale;
}

RoundBlade ConformalModel::dual_round(const TargetPoint& center, double r2) const {
  Multivector sigma = embed_point(center) - (0.5 * r2) * infinity_;
  return RoundBlade{sigma, classify_round(sigma, Representation::dual), Representation::dual};
}

RoundBlade ConformalModel::dualize(const RoundBlade& s) const {
  RoundBlade out;
  out.blade = dual(s.blade);
  out.representation = s.representation == Representation::direct ? Representation::dual
                                                                  : Representation::direct;
  out.kind = s.kind;
  return out;
}

RoundKind ConformalModel::classify_dual_vector(const Multivector& sigma) const {
  double w = inner_scalar(sigma, infinity_);
  if (std::fabs(w) <= kRelTol * sigma.norm() * infinity_.norm())
    return RoundKind::line_flat;  // no point part: a dual flat
  Multivector unit = (-1.0 / w) * sigma;
  double s2 = inner_scalar(unit, unit);  // the squared radius
  if (std::fabs(s2) <= kRelTol * unit.norm() * unit.norm()) return RoundKind::point;
  if (target_is_minkowski())
    return s2 > 0 ? RoundKind::shell_spacelike : RoundKind::shell_timelike;
  return s2 > 0 ? RoundKind::circle : RoundKind::degenerate;  // imaginary radius
}

RoundKind ConformalModel::classify_round(const Multivector& blade, Representation rep) const {
  int g = 0;
  if (!blade.is_homogeneous(&g))
    throw std::invalid_argument("round classification expects a homogeneous blade");
  if (blade.is_zero()) return RoundKind::degenerate;
  int n = model_->dim();

  if (rep == Representation::dual) {
    if (g == 1) return classify_dual_vector(blade);
    // Reduce other dual grades to the direct question.
    return classify_round(dual(blade), Representation::direct);
  }

  if (g < 1 || g > n - 1) return RoundKind::degenerate;
  double flat = outer_product(infinity_, blade).norm();
  if (flat <= kRelTol * infinity_.norm() * blade.norm()) return RoundKind::line_flat;
  if (g == 1) {
    double s2 = inner_scalar(blade, blade);
    return std::fabs(s2) <= kRelTol * blade.norm() * blade.norm() ? RoundKind::point
                                                                  : RoundKind::degenerate;
  }
  if (g == 2) return RoundKind::point_pair;
  if (g == n - 1) return classify_dual_vector(dual(blade));
  return RoundKind::circle;  // codimension >= 2 round in a larger model
}

}  // namespace cga
