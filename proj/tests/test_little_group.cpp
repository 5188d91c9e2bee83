#include <doctest.h>

#include <cmath>

#include "cga/little_group.hpp"
#include "cga/prng.hpp"
#include "cga/versor.hpp"
#include "oracles.hpp"

using namespace cga;

namespace {

Multivector e(const SignaturePtr& sig, int i) { return Multivector::basis_vector(sig, i); }

double span_residual(const std::vector<Multivector>& span, const Multivector& v) {
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
}

}  // namespace

TEST_CASE("isometry algebra dimensions and health") {
  CHECK(isometry_algebra(make_signature(Signature::diagonal(3, 1))).dim() == 6);
  CHECK(isometry_algebra(make_signature(Signature::diagonal(2, 2))).dim() == 6);

  LieAlgebraPresentation big = isometry_algebra(make_signature(Signature::diagonal(4, 2)));
  CHECK(big.dim() == 15);
  CHECK(big.jacobi_residual < 1e-12);
  CHECK(big.closure_residual < 1e-12);
  CHECK((big.killing - big.killing.transpose()).cwiseAbs().maxCoeff() == 0.0);

  // bracket antisymmetry: c[i](j,.) = -c[j](i,.)
  for (int i = 0; i < big.dim(); ++i)
    for (int j = 0; j < big.dim(); ++j)
      for (int k = 0; k < big.dim(); ++k)
        CHECK(std::fabs(big.structure_constant(i, j, k) + big.structure_constant(j, i, k)) <=
              1e-12);
}

TEST_CASE("killing signature of so(2,2) counts boosts and rotations") {
  // pq boost-like directions (positive) and p(p-1)/2+q(q-1)/2 compact ones.
  LieAlgebraPresentation alg = isometry_algebra(make_signature(Signature::diagonal(2, 2)));
  ClassificationLabel label = classify(alg);
  CHECK(label.killing_signature.positive == 4);
  CHECK(label.killing_signature.negative == 2);
  CHECK(label.killing_signature.zero == 0);
  CHECK(label.name == AlgebraName::so22);
}

TEST_CASE("adjoint action on vectors matches the word oracle") {
  SignaturePtr sig = make_signature(Signature::diagonal(3, 1));
  Multivector b = geometric_product(e(sig, 0), e(sig, 1));
  Multivector image = act(b, e(sig, 0));
  oracle::NaiveMV expected =
      oracle::naive_commutator_half(*sig, oracle::from_mv(b), oracle::from_mv(e(sig, 0)));
  CHECK(oracle::naive_distance(oracle::from_mv(image), expected) == 0.0);

  CHECK(act(b, e(sig, 2)).is_zero());  // disjoint support

  SplitMix64 rng(59);
  for (int t = 0; t < 100; ++t) {
    Multivector x(sig);
    for (int i = 0; i < sig->dim(); ++i)
      x += e(sig, i) * rng.next_range(-2.0, 2.0);
    Multivector moved = act(b, x);
    int g = 0;
    CHECK(moved.is_homogeneous(&g));
    if (!moved.is_zero()) CHECK(g == 1);
  }

  CHECK_THROWS_AS(act(e(sig, 0), e(sig, 1)), std::invalid_argument);
}

TEST_CASE("stabilizer of infinity in the plane model is e(2)") {
  ConformalModel m = ConformalModel::from_alias("E2");
  StabilizerResult stab = stabilizer_of(m.infinity(), isometry_algebra(m.model_sig()));
  CHECK(stab.algebra.dim() == 3);
  CHECK(stab.label.name == AlgebraName::e2);
  CHECK(stab.label.killing_signature.positive == 0);
  CHECK(stab.label.killing_signature.negative == 1);
  CHECK(stab.label.killing_signature.zero == 2);
  CHECK(stab.max_action_residual <= 1e-9);
  CHECK(stab.algebra.dim() + stab.action_rank == 6);
}

TEST_CASE("stabilizer of e+ is so(2,1) on the canonical span") {
  ConformalModel m = ConformalModel::from_alias("E2");
  const SignaturePtr& sig = m.model_sig();
  StabilizerResult stab =
      stabilizer_of(e(sig, m.plus_index()), isometry_algebra(sig));
  CHECK(stab.algebra.dim() == 3);
  CHECK(stab.label.name == AlgebraName::so21);
  CHECK(stab.label.killing_signature.positive == 2);
  CHECK(stab.label.killing_signature.negative == 1);

  Multivector eminus = e(sig, m.minus_index());
  std::vector<Multivector> canonical = {geometric_product(eminus, e(sig, 0)),
                                        geometric_product(eminus, e(sig, 1)),
                                        geometric_product(e(sig, 0), e(sig, 1))};
  for (const Multivector& v : stab.algebra.basis)
    CHECK(span_residual(canonical, v) < 1e-10);
  for (const Multivector& v : canonical)
    CHECK(span_residual(stab.algebra.basis, v) < 1e-10);
}

TEST_CASE("classifier fingerprints the canonical so(2,1) and so(3) triples") {
  // half-commutator structure constants give kappa = 2,2,-2 and -2,-2,-2
  ConformalModel m = ConformalModel::from_alias("E2");
  const SignaturePtr& sig = m.model_sig();
  Multivector eminus = e(sig, m.minus_index());
  LieAlgebraPresentation so21 = make_presentation({geometric_product(eminus, e(sig, 0)),
                                                   geometric_product(eminus, e(sig, 1)),
                                                   geometric_product(e(sig, 0), e(sig, 1))});
  Eigen::MatrixXd expected(3, 3);
  expected << 2, 0, 0, 0, 2, 0, 0, 0, -2;
  CHECK((so21.killing - expected).cwiseAbs().maxCoeff() <= 1e-12);
  ClassificationLabel l21 = classify(so21);
  CHECK(l21.name == AlgebraName::so21);
  CHECK(l21.killing_rank == 3);

  LieAlgebraPresentation so3 = isometry_algebra(make_signature(Signature::diagonal(3, 0)));
  CHECK((so3.killing + 2.0 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-12);
  ClassificationLabel l3 = classify(so3);
  CHECK(l3.name == AlgebraName::so3);
  CHECK(l3.killing_signature.negative == 3);
}

TEST_CASE("stabilizer of infinity in the Minkowski plane model is p(1,1)") {
  ConformalModel m = ConformalModel::from_alias("M11");
  StabilizerResult stab = stabilizer_of(m.infinity(), isometry_algebra(m.model_sig()));
  CHECK(stab.algebra.dim() == 3);
  CHECK(stab.label.name == AlgebraName::p11);
  CHECK(stab.label.killing_signature.positive == 1);
  CHECK(stab.label.killing_signature.zero == 2);
}

TEST_CASE("timelike and spacelike shells coincide in the plane spacetime model") {
  ConformalModel m = ConformalModel::from_alias("M11");
  LieAlgebraPresentation full = isometry_algebra(m.model_sig());
  TargetPoint origin = {0.0, 0.0};
  StabilizerResult timelike = stabilizer_of(m.dual_round(origin, -1.0).blade, full);
  StabilizerResult spacelike = stabilizer_of(m.dual_round(origin, 1.0).blade, full);
  CHECK(timelike.label.name == AlgebraName::so21);
  CHECK(spacelike.label.name == AlgebraName::so21);
  CHECK(compare_little_algebras(timelike, spacelike) == AlgebraComparison::isomorphic);
}

TEST_CASE("shell little groups differ in the 2+1 spacetime model") {
  ConformalModel m = ConformalModel::from_alias("M21");
  LieAlgebraPresentation full = isometry_algebra(m.model_sig());
  CHECK(full.dim() == 10);
  TargetPoint origin = {0.0, 0.0, 0.0};
  StabilizerResult timelike = stabilizer_of(m.dual_round(origin, -1.0).blade, full);
  StabilizerResult spacelike = stabilizer_of(m.dual_round(origin, 1.0).blade, full);
  CHECK(timelike.label.name == AlgebraName::so31);
  CHECK(spacelike.label.name == AlgebraName::so22);
  CHECK(compare_little_algebras(timelike, spacelike) == AlgebraComparison::distinct);

  // plain unit basis vectors say the same
  StabilizerResult t2 = stabilizer_of(e(m.model_sig(), 0), full);
  StabilizerResult s2 = stabilizer_of(e(m.model_sig(), 1), full);
  CHECK(t2.label.name == AlgebraName::so31);
  CHECK(s2.label.name == AlgebraName::so22);
}

TEST_CASE("compact and higher-rank fingerprint rows") {
  // complement of the timelike direction in R(4,1) is compact so(4)
  SignaturePtr s41 = make_signature(Signature::diagonal(4, 1));
  StabilizerResult so4 = stabilizer_of(e(s41, 4), isometry_algebra(s41));
  CHECK(so4.algebra.dim() == 6);
  CHECK(so4.label.name == AlgebraName::so4);
  CHECK(so4.label.killing_signature.negative == 6);

  SignaturePtr s42 = make_signature(Signature::diagonal(4, 2));
  LieAlgebraPresentation full = isometry_algebra(s42);
  StabilizerResult so41 = stabilizer_of(e(s42, 5), full);  // drop one -1 direction
  CHECK(so41.label.name == AlgebraName::so41);
  CHECK(so41.label.killing_signature.positive == 4);
  CHECK(so41.label.killing_signature.negative == 6);
  StabilizerResult so32 = stabilizer_of(e(s42, 0), full);  // drop one +1 direction
  CHECK(so32.label.name == AlgebraName::so32);
  CHECK(so32.label.killing_signature.positive == 6);
  CHECK(so32.label.killing_signature.negative == 4);
}

TEST_CASE("comparison verdicts") {
  ConformalModel m = ConformalModel::from_alias("E2");
  LieAlgebraPresentation full = isometry_algebra(m.model_sig());
  StabilizerResult a = stabilizer_of(m.infinity(), full);
  CHECK(compare_little_algebras(a, a) == AlgebraComparison::isomorphic);

  // a vector with an unclassified stabilizer leaves the comparison open
  SignaturePtr small = make_signature(Signature::diagonal(2, 0));
  StabilizerResult tiny = stabilizer_of(e(small, 0), isometry_algebra(small));
  CHECK(tiny.label.name == AlgebraName::unknown);
  CHECK(compare_little_algebras(a, tiny) == AlgebraComparison::undecided);
}

TEST_CASE("stabilizer generators exponentiate to finite symmetries") {
  ConformalModel m = ConformalModel::from_alias("M11");
  LieAlgebraPresentation full = isometry_algebra(m.model_sig());
  StabilizerResult stab = stabilizer_of(m.infinity(), full);
  SplitMix64 rng(61);
  for (const Multivector& gen : stab.algebra.basis)
    for (int t = 0; t < 10; ++t) {
      Versor v = exp_bivector(rng.next_range(-1.0, 1.0) * gen);
      Multivector moved = v.apply(m.infinity());
      CHECK((moved - m.infinity()).norm() <= 1e-9 * m.infinity().norm());
    }
}

TEST_CASE("zero vectors cannot be stabilized") {
  SignaturePtr sig = make_signature(Signature::diagonal(3, 1));
  CHECK_THROWS_AS(stabilizer_of(Multivector(sig), isometry_algebra(sig)), std::domain_error);
}

TEST_CASE("infinity generator decomposition splits translations from tangents") {
  ConformalModel m = ConformalModel::from_alias("M11");
  const SignaturePtr& sig = m.model_sig();

  // A0 = e0 (O - inf) / sqrt(2)
  Multivector a0 = (1.0 / std::sqrt(2.0)) *
                   geometric_product(e(sig, 0), m.origin() - m.infinity());
  InfinityDecomposition parts = decompose_infinity_generator(m, a0);

  Multivector expected_translation =
      -(1.0 / std::sqrt(2.0)) * outer_product(e(sig, 0), m.infinity());
  Multivector expected_tangent =
      (1.0 / std::sqrt(2.0)) * outer_product(e(sig, 0), m.origin());
  CHECK((parts.translation_part - expected_translation).norm() <= 1e-12);
  CHECK((parts.tangent_part - expected_tangent).norm() <= 1e-12);
  CHECK(parts.remainder.norm() <= 1e-12);

  // a pure rotation plane stays in the remainder untouched
  Multivector b = geometric_product(e(sig, 0), e(sig, 1));
  InfinityDecomposition rot = decompose_infinity_generator(m, b);
  CHECK(rot.translation_part.is_zero());
  CHECK(rot.tangent_part.is_zero());
  CHECK(approx_equal(rot.remainder, b, 0.0));

  SplitMix64 rng(67);
  int slots = 1 << sig->dim();
  for (int t = 0; t < 100; ++t) {
    Multivector biv(sig);
    for (int k = 0; k < 3; ++k) {
      BladeMask mask = static_cast<BladeMask>(rng.next_int(0, slots - 1));
      if (blade_grade(mask) != 2) continue;
      biv += Multivector::basis_blade(sig, mask, rng.next_range(-2.0, 2.0));
    }
    if (biv.is_zero()) continue;
    InfinityDecomposition d = decompose_infinity_generator(m, biv);
    Multivector resum = (d.translation_part + d.tangent_part) + d.remainder;
    CHECK(approx_equal(resum, biv, 0.0));
  }
}
