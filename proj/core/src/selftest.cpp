#include "cga/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "cga/conformal.hpp"
#include "cga/little_group.hpp"
#include "cga/multivector.hpp"
#include "cga/prng.hpp"
#include "cga/so21_rep.hpp"
#include "cga/text_format.hpp"
#include "cga/versor.hpp"

namespace cga {

namespace {

const std::vector<std::pair<int, int>> kPropertySignatures = {
    {2, 0}, {1, 1}, {3, 1}, {2, 2}, {4, 1}, {3, 2}, {4, 2}};

std::string residual_detail(double worst, double tol) {
  std::ostringstream os;
  os << "worst residual " << worst << " (tolerance " << tol << ")";
  return os.str();
}

Multivector random_sparse(SplitMix64& rng, const SignaturePtr& sig, int max_terms = 5) {
  Multivector mv(sig);
  int terms = rng.next_int(1, max_terms);
  int slots = 1 << sig->dim();
  for (int t = 0; t < terms; ++t) {
    BladeMask mask = static_cast<BladeMask>(rng.next_int(0, slots - 1));
    mv += Multivector::basis_blade(sig, mask, rng.next_range(-2.0, 2.0));
  }
  return mv;
}

Multivector random_vector(SplitMix64& rng, const SignaturePtr& sig) {
  Multivector mv(sig);
  for (int i = 0; i < sig->dim(); ++i)
    mv += Multivector::basis_vector(sig, i) * rng.next_range(-2.0, 2.0);
  return mv;
}

TargetPoint random_point(SplitMix64& rng, int dim, double span = 3.0) {
  TargetPoint p(static_cast<size_t>(dim));
  for (double& c : p) c = rng.next_range(-span, span);
  return p;
}

/// Random conformal isometry: rotation/boost in a coordinate plane of the
/// target composed with a translation.
Versor random_model_isometry(SplitMix64& rng, const ConformalModel& m) {
  const SignaturePtr& sig = m.model_sig();
  int d = m.target_dim();
  Multivector plane(sig);
  if (d >= 2) {
    int i = rng.next_int(0, d - 2);
    int j = rng.next_int(i + 1, d - 1);
    plane = Multivector::basis_blade(sig, static_cast<BladeMask>((1u << i) | (1u << j)),
                                     rng.next_range(-1.0, 1.0));
  }
  Multivector t(sig);
  for (int i = 0; i < d; ++i)
    t += Multivector::basis_vector(sig, i) * rng.next_range(-1.5, 1.5);
  Multivector translator_gen = -0.5 * outer_product(t, m.infinity());
  Versor rot = plane.is_zero() ? Versor::identity(sig) : exp_bivector(plane);
  Versor trans = exp_bivector(translator_gen);
  return Versor(geometric_product(trans.mv(), rot.mv()), Versor::Parity::even);
}

struct Runner {
  SplitMix64 rng;
  std::vector<PropertyResult>& out;

  void check(const std::string& name, bool pass, const std::string& detail) {
    out.push_back({name, pass, detail});
  }

  void residual_check(const std::string& name, double worst, double tol) {
    out.push_back({name, worst <= tol, residual_detail(worst, tol)});
  }
};

void algebra_properties(Runner& r, bool corrupt_metric) {
  double worst_assoc = 0.0, worst_rev = 0.0, worst_grade = 0.0;
  bool metric_ok = true;
  std::string metric_detail = "all basis pairs reproduce the diagonal metric";

  for (auto [p, q] : kPropertySignatures) {
    SignaturePtr sig = make_signature(Signature::diagonal(p, q));
    for (int trial = 0; trial < 200; ++trial) {
      Multivector a = random_sparse(r.rng, sig);
      Multivector b = random_sparse(r.rng, sig);
      Multivector c = random_sparse(r.rng, sig);
      Multivector lhs = geometric_product(geometric_product(a, b), c);
      Multivector rhs = geometric_product(a, geometric_product(b, c));
      double scale = std::max(1.0, a.norm() * b.norm() * c.norm());
      worst_assoc = std::max(worst_assoc, (lhs - rhs).norm() / scale);

      Multivector ab = geometric_product(a, b);
      double rev_scale = std::max(1.0, a.norm() * b.norm());
      worst_rev = std::max(
          worst_rev,
          (reverse(ab) - geometric_product(reverse(b), reverse(a))).norm() / rev_scale);

      Multivector sum(sig);
      for (int k = 0; k <= sig->dim(); ++k) sum += grade_project(a, k);
      worst_grade = std::max(worst_grade, (sum - a).norm());
    }

    for (int i = 0; i < sig->dim() && metric_ok; ++i)
      for (int j = 0; j < sig->dim() && metric_ok; ++j) {
        double dot = inner_scalar(Multivector::basis_vector(sig, i),
                                  Multivector::basis_vector(sig, j));
        double expected = i == j ? static_cast<double>(sig->square(i)) : 0.0;
        if (corrupt_metric && i == 0 && j == 0) expected = -expected;
        if (dot != expected) {
          metric_ok = false;
          metric_detail = "mismatch at " + sig->to_string() + " pair (" +
                          std::to_string(i) + "," + std::to_string(j) + ")";
        }
      }
  }
  r.residual_check("algebra-associativity", worst_assoc, 1e-10);
  r.check("algebra-metric-soundness", metric_ok, metric_detail);
  r.check("algebra-grade-reconstruction", worst_grade == 0.0,
          residual_detail(worst_grade, 0.0));
  r.residual_check("algebra-reverse-antiautomorphism", worst_rev, 1e-12);
}

void versor_properties(Runner& r) {
  double worst_iso = 0.0;
  for (const char* alias : {"E2", "M11"}) {
    ConformalModel m = ConformalModel::from_alias(alias);
    for (int trial = 0; trial < 100; ++trial) {
      Versor v = random_model_isometry(r.rng, m);
      Multivector x = random_vector(r.rng, m.model_sig());
      Multivector y = random_vector(r.rng, m.model_sig());
      double before = inner_scalar(x, y);
      double after = inner_scalar(v.apply(x), v.apply(y));
      double scale = std::max(1.0, x.norm() * y.norm());
      worst_iso = std::max(worst_iso, std::fabs(after - before) / scale);
    }
  }
  r.residual_check("versor-isometry", worst_iso, 1e-12);

  double worst_exp = 0.0;
  SignaturePtr sig = make_signature(Signature::diagonal(3, 1));
  for (int trial = 0; trial < 100; ++trial) {
    // Coordinate-plane bivectors have scalar squares of all three kinds.
    int i = r.rng.next_int(0, 2);
    int j = r.rng.next_int(i + 1, 3);
    Multivector b = Multivector::basis_blade(
        sig, static_cast<BladeMask>((1u << i) | (1u << j)), r.rng.next_range(-2.0, 2.0));
    Multivector closed = exp_bivector(b).mv();
    Multivector series = exp_bivector_series(b).mv();
    worst_exp = std::max(worst_exp, (closed - series).norm());
  }
  r.residual_check("versor-exp-series-consistency", worst_exp, 1e-12);
}

void conformal_properties(Runner& r) {
  double worst_round = 0.0, worst_dist = 0.0;
  bool normalization_exact = true;
  std::string norm_detail = "P(x).inf == -1.0 bit-exact on all samples";

  for (const char* alias : {"E2", "M11"}) {
    ConformalModel m = ConformalModel::from_alias(alias);
    for (int trial = 0; trial < 1000; ++trial) {
      TargetPoint x = random_point(r.rng, m.target_dim(), 5.0);
      Multivector px = m.embed_point(x);
      if (inner_scalar(px, m.infinity()) != -1.0) {
        normalization_exact = false;
        norm_detail = "P(x).inf != -1 at a sample in " + std::string(alias);
      }
      TargetPoint back = m.project_point(px);
      for (size_t i = 0; i < x.size(); ++i)
        worst_round = std::max(worst_round, std::fabs(back[i] - x[i]));

      TargetPoint y = random_point(r.rng, m.target_dim(), 5.0);
      TargetPoint diff(x.size());
      for (size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - y[i];
      double direct = m.target_square(diff);
      double viamodel = m.squared_distance(x, y);
      worst_dist = std::max(worst_dist,
                            std::fabs(direct - viamodel) / std::max(1.0, std::fabs(direct)));
    }
  }
  r.residual_check("conformal-embed-roundtrip", worst_round, 1e-12);
  r.check("conformal-normalization-exact", normalization_exact, norm_detail);
  r.residual_check("conformal-distance-oracle", worst_dist, 1e-10);

  // Direct and dual incidence must agree, stay isometry covariant (with
  // boosts in the Minkowski model), and be insensitive to blade rescaling.
  bool agree = true, covariant = true, scale_invariant = true;
  for (const char* alias : {"E2", "M11"}) {
    ConformalModel m = ConformalModel::from_alias(alias);
    for (int trial = 0; trial < 150 && agree && covariant && scale_invariant; ++trial) {
      TargetPoint a = random_point(r.rng, 2), b = random_point(r.rng, 2),
                  c = random_point(r.rng, 2);
      RoundBlade s = m.circle_through(a, b, c);
      if (s.kind == RoundKind::degenerate || s.kind == RoundKind::line_flat) continue;
      RoundBlade sd = m.dualize(s);
      for (int probe = 0; probe < 6; ++probe) {
        TargetPoint x = probe == 0 ? a : random_point(r.rng, 2);
        bool on_direct = m.is_incident(x, s);
        bool on_dual = m.is_incident(x, sd);
        if (on_direct != on_dual) agree = false;

        RoundBlade scaled{s.blade * r.rng.next_range(0.25, 4.0), s.kind, s.representation};
        if (m.is_incident(x, scaled) != on_direct) scale_invariant = false;

        Versor v = random_model_isometry(r.rng, m);
        RoundBlade moved{v.apply(s.blade), s.kind, s.representation};
        TargetPoint xm = m.project_point(v.apply(m.embed_point(x)));
        if (m.is_incident(xm, moved) != on_direct) covariant = false;
      }
    }
  }
  r.check("conformal-incidence-direct-dual-agreement", agree,
          agree ? "verdicts agree on every probe" : "direct and dual verdicts diverged");
  r.check("conformal-isometry-covariance", covariant,
          covariant ? "incidence preserved under random isometries"
                    : "a moved point left its moved round");
  r.check("conformal-incidence-scale-invariance", scale_invariant,
          scale_invariant ? "verdicts stable under blade rescaling"
                          : "a rescaled blade changed a verdict");
}

void stabilizer_properties(Runner& r) {
  struct Case {
    std::string name;
    ConformalModel model;
    Multivector fixed;
  };
  std::vector<Case> cases;
  for (const char* alias : {"E2", "M11", "E3", "M21", "M31"}) {
    ConformalModel m = ConformalModel::from_alias(alias);
    cases.push_back({std::string(alias) + ":inf", m, m.infinity()});
    cases.push_back({std::string(alias) + ":e+",
                     m, Multivector::basis_vector(m.model_sig(), m.plus_index())});
    cases.push_back({std::string(alias) + ":shell",
                     m, m.dual_round(TargetPoint(static_cast<size_t>(m.target_dim()), 0.0), 1.0).blade});
  }

  double worst_sound = 0.0, worst_closure = 0.0, worst_jacobi = 0.0, worst_exp = 0.0;
  bool complete = true;
  for (const Case& c : cases) {
    LieAlgebraPresentation full = isometry_algebra(c.model.model_sig());
    StabilizerResult stab = stabilizer_of(c.fixed, full);
    worst_sound = std::max(worst_sound, stab.max_action_residual);
    worst_closure = std::max(worst_closure, stab.algebra.closure_residual);
    worst_jacobi = std::max(worst_jacobi, stab.algebra.jacobi_residual);
    if (stab.algebra.dim() + stab.action_rank != full.dim()) complete = false;

    for (const Multivector& gen : stab.algebra.basis) {
      for (int k = 0; k < 10; ++k) {
        double t = r.rng.next_range(-1.5, 1.5);
        Versor v = exp_bivector(t * gen);
        Multivector moved = v.apply(c.fixed);
        double rel = (moved - c.fixed).norm() / std::max(1e-300, c.fixed.norm());
        worst_exp = std::max(worst_exp, rel);
      }
    }
  }
  r.residual_check("stabilizer-nullspace-soundness", worst_sound, 1e-9);
  r.check("stabilizer-nullspace-completeness", complete,
          complete ? "dim(stabilizer) + rank(action) = dim(algebra) in all cases"
                   : "rank/nullity mismatch");
  r.residual_check("stabilizer-finite-exponential-check", worst_exp, 1e-9);
  r.residual_check("stabilizer-structure-closure", worst_closure, 1e-9);
  r.residual_check("stabilizer-jacobi-identity", worst_jacobi, 1e-9);

  // The stabilizer of e+ in the E2 model spans the canonical generators
  // {e-e1, e-e2, e1e2}.
  {
    ConformalModel m = ConformalModel::from_alias("E2");
    const SignaturePtr& sig = m.model_sig();
    Multivector eminus = Multivector::basis_vector(sig, m.minus_index());
    Multivector e1 = Multivector::basis_vector(sig, 0);
    Multivector e2 = Multivector::basis_vector(sig, 1);
    std::vector<Multivector> canonical = {geometric_product(eminus, e1),
                                          geometric_product(eminus, e2),
                                          geometric_product(e1, e2)};
    StabilizerResult stab = stabilizer_of(
        Multivector::basis_vector(sig, m.plus_index()), isometry_algebra(sig));

    double worst_span = 0.0;
    auto project_residual = [](const std::vector<Multivector>& span, const Multivector& v) {
      // Gram-matrix least squares in coefficient space.
      int n = static_cast<int>(span.size());
      Eigen::MatrixXd g(n, n);
      Eigen::VectorXd rhs(n);
      for (int i = 0; i < n; ++i) {
        rhs(i) = coeff_dot(span[static_cast<size_t>(i)], v);
        for (int j = 0; j < n; ++j)
          g(i, j) = coeff_dot(span[static_cast<size_t>(i)], span[static_cast<size_t>(j)]);
      }
      Eigen::VectorXd x = g.ldlt().solve(rhs);
      Multivector res = v;
      for (int i = 0; i < n; ++i) res -= x(i) * span[static_cast<size_t>(i)];
      return res.norm() / std::max(1e-300, v.norm());
    };
    for (const Multivector& v : stab.algebra.basis)
      worst_span = std::max(worst_span, project_residual(canonical, v));
    for (const Multivector& v : canonical)
      worst_span = std::max(worst_span, project_residual(stab.algebra.basis, v));
    bool label_ok = stab.label.name == AlgebraName::so21 && stab.algebra.dim() == 3;
    r.check("stabilizer-canonical-span",
            worst_span <= 1e-10 && label_ok,
            residual_detail(worst_span, 1e-10) +
                (label_ok ? "" : "; wrong label ") );
  }

  // Dimension counts for null and unit vectors across model dimensions
  // n = 4, 5, 6.
  {
    bool counts_ok = true;
    for (const char* alias : {"E2", "E3", "M31"}) {
      ConformalModel m = ConformalModel::from_alias(alias);
      int n = m.model_sig()->dim();
      LieAlgebraPresentation full = isometry_algebra(m.model_sig());
      int null_dim = stabilizer_of(m.infinity(), full).algebra.dim();
      int unit_dim =
          stabilizer_of(Multivector::basis_vector(m.model_sig(), 0), full).algebra.dim();
      int expected = (n - 1) * (n - 2) / 2;
      if (null_dim != expected || unit_dim != expected) counts_ok = false;
    }
    r.check("stabilizer-dimension-counts", counts_ok,
            counts_ok ? "null and unit stabilizers have (n-1)(n-2)/2 dimensions"
                      : "a stabilizer dimension deviates from the count");
  }

  // Full isometry algebras of the large signatures stay consistent.
  {
    double worst = 0.0;
    bool symmetric = true;
    for (auto [p, q] : {std::pair{4, 1}, std::pair{3, 2}, std::pair{4, 2}}) {
      LieAlgebraPresentation alg = isometry_algebra(make_signature(Signature::diagonal(p, q)));
      worst = std::max(worst, alg.jacobi_residual);
      if ((alg.killing - alg.killing.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        symmetric = false;
    }
    r.check("isometry-jacobi-and-killing-symmetry", worst <= 1e-9 && symmetric,
            residual_detail(worst, 1e-9));
  }
}

void rep_properties(Runner& r) {
  bool hermitian = true;
  double worst_cas_comm = 0.0;
  std::vector<TruncatedRep> reps;
  reps.push_back(build_rep(RepLabel::principal(1.0, 0.0), 20));
  reps.push_back(build_rep(RepLabel::principal(0.5, 0.5), 20));
  reps.push_back(build_rep(RepLabel::discrete_plus(2.0), 15));
  reps.push_back(build_rep(RepLabel::discrete_minus(1.0), 15));
  for (const TruncatedRep& rep : reps) {
    if ((rep.Splus.transpose() - rep.Sminus).cwiseAbs().maxCoeff() != 0.0) hermitian = false;
    if ((rep.S1 - rep.S1.adjoint()).cwiseAbs().maxCoeff() != 0.0) hermitian = false;
    if ((rep.S2 - rep.S2.adjoint()).cwiseAbs().maxCoeff() != 0.0) hermitian = false;

    int lo = rep.interior_begin(), hi = rep.interior_end();
    Eigen::MatrixXcd s3c = rep.S3.cast<std::complex<double>>();
    for (const Eigen::MatrixXcd& gen : {rep.S1, rep.S2, s3c}) {
      Eigen::MatrixXcd comm = rep.casimir * gen - gen * rep.casimir;
      worst_cas_comm =
          std::max(worst_cas_comm, comm.block(lo, lo, hi - lo, hi - lo).cwiseAbs().maxCoeff());
    }
  }
  r.check("rep-ladder-hermiticity", hermitian,
          hermitian ? "S+^T = S- and S1, S2 Hermitian entrywise"
                    : "a generator lost Hermiticity");
  r.residual_check("rep-casimir-commutes", worst_cas_comm, 1e-10);

  // (m+1/2)^2 + s^2 vanishes only at the reducible boundary s = 0,
  // eps = 1/2, m = -1/2.
  bool radicands_positive = true;
  for (double s : {0.0, 0.5, 1.0, 2.0})
    for (double eps : {0.0, 0.5}) {
      double q = -(0.25 + s * s);
      for (int j = -10000; j <= 10000 && radicands_positive; ++j) {
        double m = eps + j;
        double radicand = m * (m + 1) - q;
        bool boundary = s == 0.0 && m == -0.5;
        if (boundary ? radicand != 0.0 : radicand <= 0.0) radicands_positive = false;
      }
    }
  r.check("rep-radicand-positivity", radicands_positive,
          radicands_positive ? "(m+1/2)^2 + s^2 > 0 across |m| <= 1e4 off the s=0 boundary"
                             : "a principal-series radicand was non-positive");

  // Interior residuals are pure edge effects: widening the band from
  // M = 10 to M = 40 must not change them.
  {
    TruncatedRep narrow = build_rep(RepLabel::principal(1.0, 0.0), 10);
    TruncatedRep wide = build_rep(RepLabel::principal(1.0, 0.0), 40);
    double rn = check_commutators(narrow).max_interior;
    double rw = check_commutators(wide).max_interior;
    double cn = check_casimir(narrow).max_interior_diagonal_error;
    double cw = check_casimir(wide).max_interior_diagonal_error;
    double drift = std::max(std::fabs(rn - rw), std::fabs(cn - cw));
    r.residual_check("rep-truncation-convergence", drift, 1e-12);
  }

  // Structure-constant dictionary between the geometric generators of the
  // e+ stabilizer and the Hermitian weight-basis matrices: the matrix-side
  // constants are -i times the geometric ones.
  {
    ConformalModel m = ConformalModel::from_alias("E2");
    const SignaturePtr& sig = m.model_sig();
    Multivector eminus = Multivector::basis_vector(sig, m.minus_index());
    std::vector<Multivector> gens = {
        geometric_product(eminus, Multivector::basis_vector(sig, 0)),
        geometric_product(eminus, Multivector::basis_vector(sig, 1)),
        geometric_product(Multivector::basis_vector(sig, 0),
                          Multivector::basis_vector(sig, 1))};
    LieAlgebraPresentation geo = make_presentation(gens);

    TruncatedRep rep = build_rep(RepLabel::principal(1.0, 0.0), 20);
    Eigen::MatrixXcd s3c = rep.S3.cast<std::complex<double>>();
    std::vector<Eigen::MatrixXcd> mats = {rep.S1, rep.S2, s3c};
    const std::complex<double> minus_i(0.0, -1.0);
    int lo = rep.interior_begin(), hi = rep.interior_end();
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Eigen::MatrixXcd lhs = mats[static_cast<size_t>(i)] * mats[static_cast<size_t>(j)] -
                               mats[static_cast<size_t>(j)] * mats[static_cast<size_t>(i)];
        Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(rep.size(), rep.size());
        for (int k = 0; k < 3; ++k)
          rhs += minus_i * geo.structure_constant(i, j, k) * mats[static_cast<size_t>(k)];
        worst = std::max(worst,
                         (lhs - rhs).block(lo, lo, hi - lo, hi - lo).cwiseAbs().maxCoeff());
      }
    r.residual_check("rep-structure-dictionary", worst, 1e-10);
  }
}

void format_properties(Runner& r) {
  double worst = 0.0;
  for (auto [p, q] : {std::pair{3, 1}, std::pair{2, 2}}) {
    SignaturePtr sig = make_signature(Signature::diagonal(p, q));
    Frame frame = Frame::orthonormal(sig);
    for (int trial = 0; trial < 100; ++trial) {
      Multivector mv = random_sparse(r.rng, sig);
      Multivector back = parse_multivector(format_multivector(mv, frame), frame);
      worst = std::max(worst, (mv - back).norm());
    }
  }
  for (const char* alias : {"E2", "M11"}) {
    ConformalModel m = ConformalModel::from_alias(alias);
    Frame frame = m.null_frame();
    for (int trial = 0; trial < 50; ++trial) {
      Multivector mv = random_sparse(r.rng, m.model_sig());
      Multivector back = parse_multivector(format_multivector(mv, frame), frame);
      worst = std::max(worst, (mv - back).norm() / std::max(1.0, mv.norm()));
    }
  }
  r.residual_check("text-format-roundtrip", worst, 1e-12);
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
  SelftestReport report;
  report.seed = options.seed;
  Runner runner{SplitMix64(options.seed), report.properties};

  algebra_properties(runner, options.corrupt_metric);
  versor_properties(runner);
  conformal_properties(runner);
  stabilizer_properties(runner);
  rep_properties(runner);
  format_properties(runner);

  report.all_pass = true;
  for (const PropertyResult& p : report.properties)
    if (!p.pass) report.all_pass = false;
  return report;
}

}  // namespace cga
