// cgatool: batch front-end over the conformal-algebra kernel. Every
// subcommand reads flags, writes one machine-readable result to stdout
// (JSON by default) and diagnostics to stderr. Exit codes: 0 success,
// 1 domain error (degenerate input), 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cga/conformal.hpp"
#include "cga/little_group.hpp"
#include "cga/multivector.hpp"
#include "cga/selftest.hpp"
#include "cga/so21_rep.hpp"
#include "cga/text_format.hpp"
#include "json_out.hpp"

namespace {

using namespace cga;

struct ModelContext {
  std::optional<ConformalModel> conformal;  // set for alias models
  SignaturePtr algebra;                      // model algebra or plain R(p,q)
  Frame frame;                               // text I/O frame

  static ModelContext parse(const std::string& spec) {
    if (spec.rfind("R(", 0) == 0) {
      int p = 0, q = 0;
      if (std::sscanf(spec.c_str(), "R(%d,%d)", &p, &q) != 2)
        throw std::invalid_argument("bad signature spec, expected R(p,q): " + spec);
      SignaturePtr sig = make_signature(Signature::diagonal(p, q));
      return ModelContext{std::nullopt, sig, Frame::orthonormal(sig)};
    }
    ConformalModel m = ConformalModel::from_alias(spec);
    SignaturePtr sig = m.model_sig();
    Frame frame = m.null_frame();
    return ModelContext{std::move(m), sig, std::move(frame)};
  }
};

std::vector<double> parse_coords(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad coordinate list: " + text);
  }
  if (out.empty()) throw std::invalid_argument("empty coordinate list");
  return out;
}

/// Tokens for --fix / --with: inf, O, a basis label, point:<coords>,
/// shell:<r2>[@<coords>], mv:<multivector text>.
Multivector parse_fixed_token(const ModelContext& ctx, const std::string& token) {
  if (token.rfind("mv:", 0) == 0)
    return parse_multivector(token.substr(3), ctx.frame);
  if (ctx.conformal) {
    const ConformalModel& m = *ctx.conformal;
    if (token == "inf") return m.infinity();
    if (token == "O") return m.origin();
    if (token.rfind("point:", 0) == 0)
      return m.embed_point(parse_coords(token.substr(6)));
    if (token.rfind("shell:", 0) == 0) {
      std::string rest = token.substr(6);
      TargetPoint center(static_cast<size_t>(m.target_dim()), 0.0);
      size_t at = rest.find('@');
      if (at != std::string::npos) {
        center = parse_coords(rest.substr(at + 1));
        rest = rest.substr(0, at);
      }
      return m.dual_round(center, std::stod(rest)).blade;
    }
  }
  int idx = ctx.algebra->index_of(token);
  if (idx >= 0) return Multivector::basis_vector(ctx.algebra, idx);
  throw std::invalid_argument("unrecognized fixed-vector token: " + token);
}

Representation parse_representation(const std::string& s) {
  if (s == "direct") return Representation::direct;
  if (s == "dual") return Representation::dual;
  throw std::invalid_argument("representation must be direct or dual");
}

double rank_epsilon(const std::optional<double>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("CGA_EPSILON")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return 1e-9;
}

std::string round_json(const ModelContext& ctx, const RoundBlade& round) {
  int grade = 0;
  round.blade.is_homogeneous(&grade);
  return jout::Object()
      .field("schema", "1")
      .field("kind", jout::str(std::string(to_string(round.kind))))
      .field("grade", jout::num(grade))
      .field("blade", jout::str(format_multivector(round.blade, ctx.frame)))
      .field("representation", jout::str(std::string(to_string(round.representation))))
      .render();
}

void round_text(std::ostream& os, const ModelContext& ctx, const RoundBlade& round) {
  int grade = 0;
  round.blade.is_homogeneous(&grade);
  os << "kind: " << to_string(round.kind) << "\n"
     << "grade: " << grade << "\n"
     << "blade: " << format_multivector(round.blade, ctx.frame) << "\n"
     << "representation: " << to_string(round.representation) << "\n";
}

std::string stabilizer_json(const ModelContext& ctx, const StabilizerResult& stab) {
  std::string basis = "[";
  for (int i = 0; i < stab.algebra.dim(); ++i) {
    if (i) basis += ",";
    basis += jout::str(format_multivector(stab.algebra.basis[static_cast<size_t>(i)], ctx.frame));
  }
  basis += "]";

  std::string constants = "[";
  int n = stab.algebra.dim();
  for (int i = 0; i < n; ++i) {
    if (i) constants += ",";
    constants += "[";
    for (int j = 0; j < n; ++j) {
      if (j) constants += ",";
      std::vector<double> row(static_cast<size_t>(n));
      for (int k = 0; k < n; ++k) row[static_cast<size_t>(k)] = stab.algebra.structure_constant(i, j, k);
      constants += jout::array_of_numbers(row);
    }
    constants += "]";
  }
  constants += "]";

  const KillingSignature& ks = stab.label.killing_signature;
  return jout::Object()
      .field("schema", "1")
      .field("fixed", jout::str(format_multivector(stab.fixed, ctx.frame)))
      .field("dim", jout::num(stab.algebra.dim()))
      .field("label", jout::str(std::string(to_string(stab.label.name))))
      .field("killing_signature", jout::array_of_ints({ks.positive, ks.negative, ks.zero}))
      .field("action_residual", jout::num(stab.max_action_residual))
      .field("basis", basis)
      .field("structure_constants", constants)
      .render();
}

struct Options {
  std::string output = "json";
  bool json() const { return output == "json"; }
};

int run(int argc, char** argv) {
  CLI::App app{"conformal geometric algebra models, little groups and so(2,1) weight matrices"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --output after the subcommand too

  Options opt;
  app.add_option("--output", opt.output, "Output format: json or text")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  std::string model_spec = "E2";
  std::string a_spec, b_spec, c_spec, point_spec, mv_spec, blade_spec;
  std::string representation_spec = "direct";
  std::string fix_spec, with_spec, bivector_spec;
  std::string convention = "normalized";
  std::optional<double> epsilon_flag;

  auto add_model = [&](CLI::App* cmd) {
    cmd->add_option("--model", model_spec, "Model alias (E2, M11, E3, M21, M31) or R(p,q)")
        ->capture_default_str();
  };

  CLI::App* embed = app.add_subcommand("embed", "Embed a target point as a null model vector");
  add_model(embed);
  embed->add_option("--point", point_spec, "Coordinates, comma separated")->required();

  CLI::App* project = app.add_subcommand("project", "Project a model vector back to coordinates");
  add_model(project);
  project->add_option("--mv", mv_spec, "Multivector text")->required();

  CLI::App* dist = app.add_subcommand("dist", "Squared distance between two points");
  add_model(dist);
  dist->add_option("--a", a_spec, "First point")->required();
  dist->add_option("--b", b_spec, "Second point")->required();
  dist->add_option("--convention", convention, "normalized or model-dot")
      ->check(CLI::IsMember({"normalized", "model-dot"}))
      ->capture_default_str();

  CLI::App* circle = app.add_subcommand("circle", "Round through three points (direct blade)");
  add_model(circle);
  circle->add_option("--a", a_spec)->required();
  circle->add_option("--b", b_spec)->required();
  circle->add_option("--c", c_spec)->required();

  CLI::App* incidence = app.add_subcommand("incidence", "Incidence of a point on a round");
  add_model(incidence);
  incidence->add_option("--point", point_spec)->required();
  incidence->add_option("--blade", blade_spec, "Round blade text")->required();
  incidence->add_option("--representation", representation_spec, "direct or dual")
      ->capture_default_str();

  CLI::App* dual_cmd = app.add_subcommand("dual", "Dualize a round blade");
  add_model(dual_cmd);
  dual_cmd->add_option("--blade", blade_spec)->required();
  dual_cmd->add_option("--representation", representation_spec)->capture_default_str();

  CLI::App* little = app.add_subcommand("little-group", "Stabilizer algebra of a fixed vector");
  add_model(little);
  little->add_option("--fix", fix_spec,
                     "inf | O | <basis label> | point:<coords> | shell:<r2>[@coords] | mv:<text>")
      ->required();
  little->add_option("--epsilon", epsilon_flag, "Rank threshold (default 1e-9, env CGA_EPSILON)");

  CLI::App* classify_cmd = app.add_subcommand("classify", "Classify a round blade");
  add_model(classify_cmd);
  classify_cmd->add_option("--blade", blade_spec)->required();
  classify_cmd->add_option("--representation", representation_spec)->capture_default_str();

  CLI::App* compare = app.add_subcommand("compare", "Compare two little algebras");
  add_model(compare);
  compare->add_option("--fix", fix_spec)->required();
  compare->add_option("--with", with_spec)->required();
  compare->add_option("--epsilon", epsilon_flag, "Rank threshold");

  CLI::App* decompose = app.add_subcommand(
      "decompose", "Split a model bivector into translation/tangent/remainder parts");
  add_model(decompose);
  decompose->add_option("--bivector", bivector_spec, "Bivector text")->required();

  std::string series = "principal";
  double s_param = 0.0, eps_param = 0.0, k_param = 1.0;
  int width = 10;
  bool check = false;
  CLI::App* rep_cmd = app.add_subcommand("rep", "Truncated so(2,1) weight-basis matrices");
  rep_cmd->add_option("--series", series, "principal, discrete_plus or discrete_minus")
      ->check(CLI::IsMember({"principal", "discrete_plus", "discrete_minus"}))
      ->capture_default_str();
  rep_cmd->add_option("--s", s_param, "Principal-series parameter s >= 0")->capture_default_str();
  rep_cmd->add_option("--eps", eps_param, "Weight offset, 0 or 0.5")->capture_default_str();
  rep_cmd->add_option("--k", k_param, "Discrete-series parameter k > 0")->capture_default_str();
  rep_cmd->add_option("--M", width, "Truncation half-width, at least 2")->capture_default_str();
  rep_cmd->add_flag("--check", check, "Also report interior residuals");

  std::uint64_t seed = 1729;
  bool corrupt_metric = false;
  CLI::App* selftest = app.add_subcommand("selftest", "Run the full invariant suite");
  selftest->add_option("--seed", seed, "PRNG seed for the randomized properties")
      ->capture_default_str();
  selftest->add_flag("--corrupt-metric", corrupt_metric,
                     "Negative control: corrupt the metric expectation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;  // usage error
  }

  std::ostringstream out;

  if (embed->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("embed needs a conformal model alias");
    Multivector p = ctx.conformal->embed_point(parse_coords(point_spec));
    if (opt.json())
      out << jout::Object()
                 .field("schema", "1")
                 .field("model", jout::str(model_spec))
                 .field("mv", jout::str(format_multivector(p, ctx.frame)))
                 .render();
    else
      out << "mv: " << format_multivector(p, ctx.frame) << "\n";
  } else if (project->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("project needs a conformal model alias");
    TargetPoint coords = ctx.conformal->project_point(parse_multivector(mv_spec, ctx.frame));
    if (opt.json())
      out << jout::Object()
                 .field("schema", "1")
                 .field("coords", jout::array_of_numbers(coords))
                 .render();
    else {
      out << "coords:";
      for (double c : coords) out << " " << format_double(c);
      out << "\n";
    }
  } else if (dist->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("dist needs a conformal model alias");
    DistanceConvention conv = convention == "normalized" ? DistanceConvention::normalized
                                                         : DistanceConvention::model_dot;
    double d2 = ctx.conformal->squared_distance(parse_coords(a_spec), parse_coords(b_spec), conv);
    if (opt.json())
      out << jout::Object().field("schema", "1").field("d2", jout::num(d2)).render();
    else
      out << "d2: " << format_double(d2) << "\n";
  } else if (circle->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("circle needs a conformal model alias");
    RoundBlade round = ctx.conformal->circle_through(parse_coords(a_spec), parse_coords(b_spec),
                                                     parse_coords(c_spec));
    if (round.kind == RoundKind::degenerate)
      throw std::domain_error("degenerate round: coincident points");
    if (opt.json())
      out << round_json(ctx, round);
    else
      round_text(out, ctx, round);
  } else if (incidence->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("incidence needs a conformal model alias");
    const ConformalModel& m = *ctx.conformal;
    RoundBlade round{parse_multivector(blade_spec, ctx.frame), RoundKind::degenerate,
                     parse_representation(representation_spec)};
    round.kind = m.classify_round(round.blade, round.representation);
    TargetPoint x = parse_coords(point_spec);
    double value = round.representation == Representation::direct ? m.incidence_direct(x, round)
                                                                  : m.incidence_dual(x, round);
    bool incident = m.is_incident(x, round);
    if (opt.json())
      out << jout::Object()
                 .field("schema", "1")
                 .field("value", jout::num(value))
                 .field("incident", jout::boolean(incident))
                 .render();
    else
      out << "value: " << format_double(value) << "\nincident: " << (incident ? "yes" : "no")
          << "\n";
  } else if (dual_cmd->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("dual needs a conformal model alias");
    RoundBlade round{parse_multivector(blade_spec, ctx.frame), RoundKind::degenerate,
                     parse_representation(representation_spec)};
    round.kind = ctx.conformal->classify_round(round.blade, round.representation);
    RoundBlade dualized = ctx.conformal->dualize(round);
    if (opt.json())
      out << round_json(ctx, dualized);
    else
      round_text(out, ctx, dualized);
  } else if (little->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    Multivector fixed = parse_fixed_token(ctx, fix_spec);
    StabilizerResult stab =
        stabilizer_of(fixed, isometry_algebra(ctx.algebra), rank_epsilon(epsilon_flag));
    if (opt.json())
      out << stabilizer_json(ctx, stab);
    else {
      out << "fixed: " << format_multivector(stab.fixed, ctx.frame) << "\n"
          << "dim: " << stab.algebra.dim() << "\n"
          << "label: " << to_string(stab.label.name) << "\n"
          << "killing_signature: " << stab.label.killing_signature.positive << ","
          << stab.label.killing_signature.negative << "," << stab.label.killing_signature.zero
          << "\n";
      for (const Multivector& b : stab.algebra.basis)
        out << "basis: " << format_multivector(b, ctx.frame) << "\n";
    }
  } else if (classify_cmd->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("classify needs a conformal model alias");
    RoundBlade round{parse_multivector(blade_spec, ctx.frame), RoundKind::degenerate,
                     parse_representation(representation_spec)};
    round.kind = ctx.conformal->classify_round(round.blade, round.representation);
    if (opt.json())
      out << round_json(ctx, round);
    else
      round_text(out, ctx, round);
  } else if (compare->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    double eps = rank_epsilon(epsilon_flag);
    LieAlgebraPresentation full = isometry_algebra(ctx.algebra);
    StabilizerResult sa = stabilizer_of(parse_fixed_token(ctx, fix_spec), full, eps);
    StabilizerResult sb = stabilizer_of(parse_fixed_token(ctx, with_spec), full, eps);
    AlgebraComparison verdict = compare_little_algebras(sa, sb);
    if (opt.json())
      out << jout::Object()
                 .field("schema", "1")
                 .field("verdict", jout::str(std::string(to_string(verdict))))
                 .field("label_a", jout::str(std::string(to_string(sa.label.name))))
                 .field("label_b", jout::str(std::string(to_string(sb.label.name))))
                 .field("dim_a", jout::num(sa.algebra.dim()))
                 .field("dim_b", jout::num(sb.algebra.dim()))
                 .render();
    else
      out << "verdict: " << to_string(verdict) << "\nlabel_a: " << to_string(sa.label.name)
          << "\nlabel_b: " << to_string(sb.label.name) << "\n";
  } else if (decompose->parsed()) {
    ModelContext ctx = ModelContext::parse(model_spec);
    if (!ctx.conformal) throw std::invalid_argument("decompose needs a conformal model alias");
    InfinityDecomposition parts = decompose_infinity_generator(
        *ctx.conformal, parse_multivector(bivector_spec, ctx.frame));
    if (opt.json())
      out << jout::Object()
                 .field("schema", "1")
                 .field("translation", jout::str(format_multivector(parts.translation_part, ctx.frame)))
                 .field("tangent", jout::str(format_multivector(parts.tangent_part, ctx.frame)))
                 .field("remainder", jout::str(format_multivector(parts.remainder, ctx.frame)))
                 .render();
    else
      out << "translation: " << format_multivector(parts.translation_part, ctx.frame) << "\n"
          << "tangent: " << format_multivector(parts.tangent_part, ctx.frame) << "\n"
          << "remainder: " << format_multivector(parts.remainder, ctx.frame) << "\n";
  } else if (rep_cmd->parsed()) {
    RepLabel label = series == "principal"      ? RepLabel::principal(s_param, eps_param)
                     : series == "discrete_plus" ? RepLabel::discrete_plus(k_param)
                                                 : RepLabel::discrete_minus(k_param);
    TruncatedRep rep = build_rep(label, width);
    std::vector<double> sample;
    for (size_t i = 0; i < rep.weights.size() && i < 11; ++i) sample.push_back(rep.weights[i]);

    jout::Object obj;
    obj.field("schema", "1")
        .field("series", jout::str(std::string(label.series_name())))
        .field("q", jout::num(label.casimir_q()))
        .field("two_sided", jout::boolean(two_sided_spectrum_check(label)));
    if (check) {
      CommutatorReport comm = check_commutators(rep);
      CasimirReport cas = check_casimir(rep);
      obj.field("interior_commutator_residual", jout::num(comm.max_interior))
          .field("interior_casimir_residual",
                 jout::num(std::max(cas.max_interior_diagonal_error, cas.max_interior_offdiagonal)));
      if (auto ann = extremal_annihilation_magnitude(rep))
        obj.field("extremal_annihilation", jout::num(*ann));
    }
    obj.field("spectrum_sample", jout::array_of_numbers(sample));
    if (opt.json()) {
      out << obj.render();
    } else {
      out << "series: " << label.series_name() << "\nq: " << format_double(label.casimir_q())
          << "\n";
      if (check) {
        CommutatorReport comm = check_commutators(rep);
        CasimirReport cas = check_casimir(rep);
        out << "interior_commutator_residual: " << format_double(comm.max_interior) << "\n"
            << "interior_casimir_residual: "
            << format_double(std::max(cas.max_interior_diagonal_error, cas.max_interior_offdiagonal))
            << "\n";
      }
      out << "spectrum_sample:";
      for (double w : sample) out << " " << format_double(w);
      out << "\n";
    }
  } else if (selftest->parsed()) {
    SelftestOptions options;
    options.seed = seed;
    options.corrupt_metric = corrupt_metric;
    SelftestReport report = run_selftest(options);
    if (opt.json()) {
      std::string props = "[";
      for (size_t i = 0; i < report.properties.size(); ++i) {
        if (i) props += ",";
        props += jout::Object()
                     .field("name", jout::str(report.properties[i].name))
                     .field("pass", jout::boolean(report.properties[i].pass))
                     .field("detail", jout::str(report.properties[i].detail))
                     .render();
      }
      props += "]";
      out << jout::Object()
                 .field("schema", "1")
                 .field("seed", jout::num(static_cast<double>(report.seed)))
                 .field("all_pass", jout::boolean(report.all_pass))
                 .field("properties", props)
                 .render();
    } else {
      for (const PropertyResult& p : report.properties)
        out << (p.pass ? "PASS " : "FAIL ") << p.name << ": " << p.detail << "\n";
      out << (report.all_pass ? "all properties passed" : "some properties FAILED") << "\n";
    }
    std::cout << out.str();
    if (opt.json()) std::cout << "\n";
    return report.all_pass ? 0 : 1;
  }

  std::cout << out.str();
  if (opt.json()) std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
