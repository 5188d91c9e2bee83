#include <doctest.h>

#include <cmath>

#include "cga/conformal.hpp"
#include "cga/prng.hpp"
#include "oracles.hpp"

using namespace cga;

TEST_CASE("the origin embeds as O, bit for bit") {
  for (const char* alias : {"E2", "M11", "E3"}) {
    ConformalModel m = ConformalModel::from_alias(alias);
    Multivector p = m.embed_point(TargetPoint(static_cast<size_t>(m.target_dim()), 0.0));
    CHECK(approx_equal(p, m.origin(), 0.0));
  }
}

TEST_CASE("model dot of two embedded points is -d^2/2") {
  ConformalModel m = ConformalModel::from_alias("E2");
  double dot = inner_scalar(m.embed_point({3.0, 4.0}), m.embed_point({0.0, 0.0}));
  CHECK(dot == doctest::Approx(-12.5).epsilon(1e-12));
  CHECK(m.squared_distance({0.0, 0.0}, {1.0, 0.0}, DistanceConvention::model_dot) ==
        doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("embedded points satisfy the hyperplane normalization exactly") {
  SplitMix64 rng(41);
  for (const char* alias : {"E2", "M11"}) {
    ConformalModel m = ConformalModel::from_alias(alias);
    for (int t = 0; t < 100; ++t) {
      TargetPoint x(static_cast<size_t>(m.target_dim()));
      for (double& c : x) c = rng.next_range(-50.0, 50.0);
      CHECK(inner_scalar(m.embed_point(x), m.infinity()) == -1.0);
    }
  }
}

TEST_CASE("projection inverts the embedding") {
  ConformalModel m = ConformalModel::from_alias("E2");
  TargetPoint back = m.project_point(m.origin());
  CHECK(back[0] == 0.0);
  CHECK(back[1] == 0.0);

  back = m.project_point(m.embed_point({3.0, 4.0}));
  CHECK(back[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(back[1] == doctest::Approx(4.0).epsilon(1e-12));

  // homogeneous rescaling is invisible
  back = m.project_point(2.5 * m.embed_point({1.0, 2.0}));
  CHECK(back[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(back[1] == doctest::Approx(2.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(m.project_point(m.infinity()),
                       "point at infinity has no target coordinates", std::domain_error);
}

TEST_CASE("squared distance agrees with coordinates in both metrics") {
  ConformalModel e2 = ConformalModel::from_alias("E2");
  CHECK(e2.squared_distance({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(e2.squared_distance({1.5, -2.0}, {1.5, -2.0}) == 0.0);

  ConformalModel m11 = ConformalModel::from_alias("M11");
  // timelike separation: negative interval with the e0 listed first
  CHECK(m11.squared_distance({2.0, 0.0}, {0.0, 0.0}) == doctest::Approx(-4.0).epsilon(1e-12));
  CHECK(m11.squared_distance({0.0, 3.0}, {0.0, 0.0}) == doctest::Approx(9.0).epsilon(1e-12));

  SplitMix64 rng(43);
  for (int t = 0; t < 200; ++t) {
    TargetPoint a = {rng.next_range(-5.0, 5.0), rng.next_range(-5.0, 5.0)};
    TargetPoint b = {rng.next_range(-5.0, 5.0), rng.next_range(-5.0, 5.0)};
    double dx = a[0] - b[0], dy = a[1] - b[1];
    CHECK(e2.squared_distance(a, b) ==
          doctest::Approx(dx * dx + dy * dy).epsilon(1e-10));
    CHECK(m11.squared_distance(a, b) ==
          doctest::Approx(-dx * dx + dy * dy).epsilon(1e-10));
  }
}

TEST_CASE("circle through three points matches the circumcircle oracle") {
  ConformalModel m = ConformalModel::from_alias("E2");
  RoundBlade s = m.circle_through({1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0});
  CHECK(s.kind == RoundKind::circle);

  // unit circle: the fourth cardinal point lies on it
  CHECK(m.is_incident({0.0, -1.0}, s));
  CHECK_FALSE(m.is_incident({0.0, 0.0}, s));

  auto oc = oracle::circumcircle(1, 0, 0, 1, -1, 0);
  REQUIRE(oc.has_value());
  CHECK(oc->cx == doctest::Approx(0.0));
  CHECK(oc->cy == doctest::Approx(0.0));
  CHECK(oc->radius == doctest::Approx(1.0));

  // defining points satisfy incidence identically
  CHECK(m.incidence_direct({1.0, 0.0}, s) <=
        1e-9 * m.embed_point({1.0, 0.0}).norm() * s.blade.norm());
}

TEST_CASE("collinear points give a flat, coincident points degenerate") {
  ConformalModel m = ConformalModel::from_alias("E2");
  RoundBlade line = m.circle_through({0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0});
  CHECK(line.kind == RoundKind::line_flat);
  CHECK(outer_product(m.infinity(), line.blade).norm() <=
        1e-9 * m.infinity().norm() * line.blade.norm());

  RoundBlade bad = m.circle_through({1.0, 1.0}, {1.0, 1.0}, {0.0, 2.0});
  CHECK(bad.kind == RoundKind::degenerate);
  CHECK(bad.blade.is_zero());
  CHECK(m.incidence_direct({5.0, 5.0}, bad) == 0.0);
}

TEST_CASE("direct and dual incidence agree through the duality map") {
  ConformalModel m = ConformalModel::from_alias("E2");
  SplitMix64 rng(47);
  for (int t = 0; t < 100; ++t) {
    TargetPoint a = {rng.next_range(-3.0, 3.0), rng.next_range(-3.0, 3.0)};
    TargetPoint b = {rng.next_range(-3.0, 3.0), rng.next_range(-3.0, 3.0)};
    TargetPoint c = {rng.next_range(-3.0, 3.0), rng.next_range(-3.0, 3.0)};
    RoundBlade s = m.circle_through(a, b, c);
    if (s.kind != RoundKind::circle) continue;
    RoundBlade sd = m.dualize(s);
    CHECK(sd.representation == Representation::dual);
    int g = 0;
    sd.blade.is_homogeneous(&g);
    CHECK(g == 1);

    for (const TargetPoint& probe :
         {a, b, c, TargetPoint{rng.next_range(-3.0, 3.0), rng.next_range(-3.0, 3.0)}}) {
      CHECK(m.is_incident(probe, s) == m.is_incident(probe, sd));
    }
  }
}

TEST_CASE("incidence on a dual circle is linear in the blade") {
  ConformalModel m = ConformalModel::from_alias("E2");
  RoundBlade sd = m.dualize(m.circle_through({1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}));
  TargetPoint x = {0.7, 0.4};
  double v = m.incidence_dual(x, sd);
  RoundBlade scaled{3.5 * sd.blade, sd.kind, sd.representation};
  CHECK(m.incidence_dual(x, scaled) == doctest::Approx(3.5 * v).epsilon(1e-13));
}

TEST_CASE("e+ is the dual circle of squared radius two") {
  ConformalModel m = ConformalModel::from_alias("E2");
  Multivector eplus = Multivector::basis_vector(m.model_sig(), m.plus_index());
  RoundBlade round{eplus, m.classify_round(eplus, Representation::dual), Representation::dual};
  CHECK(round.kind == RoundKind::circle);

  // P(x).e+ vanishes exactly on x.x = 2 under this normalization
  double r = std::sqrt(2.0);
  for (double theta : {0.0, 0.9, 2.2, 4.0}) {
    TargetPoint x = {r * std::cos(theta), r * std::sin(theta)};
    CHECK(std::fabs(m.incidence_dual(x, round)) <= 1e-12);
  }
  CHECK(std::fabs(m.incidence_dual({0.0, 0.0}, round)) > 0.1);
}

TEST_CASE("dual rounds classify by their squared radius") {
  ConformalModel e2 = ConformalModel::from_alias("E2");
  RoundBlade pt = e2.dual_round({0.0, 0.0}, 0.0);
  CHECK(pt.kind == RoundKind::point);
  CHECK(approx_equal(pt.blade, e2.origin(), 0.0));

  RoundBlade circ = e2.dual_round({0.0, 0.0}, 2.0);
  CHECK(circ.kind == RoundKind::circle);
  Multivector eplus = Multivector::basis_vector(e2.model_sig(), e2.plus_index());
  CHECK((circ.blade - std::sqrt(2.0) * eplus).norm() <= 1e-12);

  ConformalModel m11 = ConformalModel::from_alias("M11");
  RoundBlade timelike = m11.dual_round({0.0, 0.0}, -1.0);
  CHECK(inner_scalar(timelike.blade, timelike.blade) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(timelike.kind == RoundKind::shell_timelike);
  RoundBlade spacelike = m11.dual_round({0.0, 0.0}, 1.0);
  CHECK(inner_scalar(spacelike.blade, spacelike.blade) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spacelike.kind == RoundKind::shell_spacelike);

  SplitMix64 rng(53);
  for (int t = 0; t < 50; ++t) {
    double r2 = rng.next_range(-4.0, 4.0);
    TargetPoint c = {rng.next_range(-2.0, 2.0), rng.next_range(-2.0, 2.0)};
    RoundBlade sh = m11.dual_round(c, r2);
    double w = inner_scalar(sh.blade, m11.infinity());
    Multivector unit = (-1.0 / w) * sh.blade;
    CHECK(inner_scalar(unit, unit) == doctest::Approx(r2).epsilon(1e-10));
  }
}

TEST_CASE("embedded points classify as points, shells by signature") {
  ConformalModel m11 = ConformalModel::from_alias("M11");
  Multivector p = m11.embed_point({0.3, -1.2});
  CHECK(m11.classify_round(p, Representation::dual) == RoundKind::point);

  // a three-point round in the Minkowski model dualizes to a shell
  RoundBlade s = m11.circle_through({0.0, 1.0}, {0.0, -1.0}, {0.5, 0.0});
  CHECK((s.kind == RoundKind::shell_spacelike || s.kind == RoundKind::shell_timelike));

  ConformalModel e2 = ConformalModel::from_alias("E2");
  CHECK(e2.classify_round(e2.infinity(), Representation::direct) == RoundKind::line_flat);
}

TEST_CASE("perturbed points fail incidence at the documented threshold") {
  ConformalModel m = ConformalModel::from_alias("E2");
  RoundBlade s = m.circle_through({1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0});
  TargetPoint off = {0.0, -1.0 - 1e-3};
  CHECK_FALSE(m.is_incident(off, s));
  CHECK(m.is_incident({0.0, -1.0}, s));
}
