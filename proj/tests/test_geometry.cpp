#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spectra/errors.hpp"
#include "spectra/geometry.hpp"

using namespace spectra;
using geom::kPi;

TEST_CASE("unit ball volumes") {
  CHECK(geom::unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(geom::unit_ball_volume(2) == doctest::Approx(kPi));
  CHECK(geom::unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
}

TEST_CASE("cuboid functionals and validation") {
  const geom::Cuboid box = geom::Cuboid::from_signature({2.0, 3.0, 5.0}, {1, 1, 1});
  CHECK(box.volume() == doctest::Approx(30.0));
  CHECK(box.surface() == doctest::Approx(2.0 * (6.0 + 15.0 + 10.0)));
  CHECK(box.diameter() == doctest::Approx(std::sqrt(4.0 + 9.0 + 25.0)));
  CHECK(box.signature().a == 1);
  CHECK(box.signature().b == 1);
  CHECK(box.signature().c == 1);

  CHECK_THROWS_AS(geom::Cuboid({1.0, -1.0}, {geom::AxisBC::Mixed, geom::AxisBC::Mixed}),
                  ValidationError);
  CHECK_THROWS_AS(geom::Cuboid({}, {}), ValidationError);
}

TEST_CASE("polygon basics: square and hexagon") {
  const auto square = geom::ConvexPolygon::rectangle(1.0, 1.0);
  CHECK(square.area() == doctest::Approx(1.0));
  CHECK(square.perimeter() == doctest::Approx(4.0));
  CHECK(square.diameter() == doctest::Approx(std::sqrt(2.0)));

  // Regular hexagon of unit perimeter: area sqrt(3)/24, cross-checked by the
  // shoelace area of the explicit vertex list.
  const double side = 1.0 / 6.0;
  const double circum = side;  // hexagon circumradius equals its side
  const auto hex = geom::ConvexPolygon::regular(6, circum);
  CHECK(hex.perimeter() == doctest::Approx(1.0));
  CHECK(hex.area() == doctest::Approx(std::sqrt(3.0) / 24.0));
}

TEST_CASE("collinear vertices are pruned") {
  const geom::ConvexPolygon poly({{0.0, 0.0},
                                  {0.5, 0.0},
                                  {1.0, 0.0},
                                  {1.0, 1.0},
                                  {0.0, 1.0}});
  CHECK(poly.size() == 4);
  CHECK(poly.area() == doctest::Approx(1.0));
  // Non-convex input stays an error after pruning.
  CHECK_THROWS_AS(geom::ConvexPolygon({{0, 0}, {1, 0}, {0.4, 0.4}, {0, 1}}),
                  ValidationError);
}

TEST_CASE("hausdorff distance: exact cases and sampling oracle") {
  const auto square = geom::ConvexPolygon::rectangle(1.0, 1.0);
  CHECK(geom::hausdorff_distance(square, square) == 0.0);

  const double t = 0.37;
  CHECK(geom::hausdorff_distance(square, square.translated({t, 0.0})) ==
        doctest::Approx(t).epsilon(1e-12));

  const double eps = 0.05;
  const auto bigger = geom::ConvexPolygon::rectangle(1.0 + 2.0 * eps, 1.0 + 2.0 * eps,
                                                     {-eps, -eps});
  const double exact = geom::hausdorff_distance(square, bigger);
  CHECK(exact == doctest::Approx(eps * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(oracles::sampled_hausdorff(square, bigger) ==
        doctest::Approx(exact).epsilon(1e-6));
}

TEST_CASE("hausdorff distance is a metric on a random corpus") {
  std::mt19937 rng(7);
  std::vector<geom::ConvexPolygon> shapes;
  for (int i = 0; i < 6; ++i) shapes.push_back(oracles::random_convex_polygon(rng));
  for (const auto& a : shapes)
    for (const auto& b : shapes) {
      const double dab = geom::hausdorff_distance(a, b);
      CHECK(dab == geom::hausdorff_distance(b, a));  // symmetric, exactly
      for (const auto& c : shapes)
        CHECK(dab <= geom::hausdorff_distance(a, c) +
                         geom::hausdorff_distance(c, b) + 1e-12);
    }
}

TEST_CASE("containment monotonicity of diameter and perimeter") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto outer = oracles::random_convex_polygon(rng, 12);
    // A hull of a vertex subset is contained in the original polygon.
    std::vector<geom::Vec2> sub(outer.vertices().begin(),
                                outer.vertices().end());
    sub.resize(std::max<std::size_t>(3, sub.size() - 3));
    geom::ConvexPolygon inner(sub);
    REQUIRE(geom::polygon_contained(inner, outer));
    CHECK(inner.diameter() <= outer.diameter() + 1e-12);
    CHECK(inner.perimeter() <= outer.perimeter() + 1e-12);
  }
}

TEST_CASE("quermass data for disks, balls, boxes") {
  const auto disk = geom::quermass(geom::Ball{1.0, 2});
  CHECK(disk.volume == doctest::Approx(kPi));
  CHECK(disk.surface == doctest::Approx(2.0 * kPi));
  CHECK(disk.s.empty());

  const double r = 0.8;
  const auto ball3 = geom::quermass(geom::Ball{r, 3});
  CHECK(ball3.s.size() == 1);
  // s_2 = omega_3 r from matching the delta^2 coefficient of omega_3 (r+d)^3.
  CHECK(ball3.s[0] == doctest::Approx(geom::unit_ball_volume(3) * r));
  // Monte-Carlo cross-check of the inflated volumes.
  for (double delta : {0.1, 0.2}) {
    const double mc = oracles::mc_inflated_ball_volume(r, 3, delta, 2000000, 42);
    CHECK(geom::steiner_inflate_volume(ball3, delta) ==
          doctest::Approx(mc).epsilon(0.01));
  }

  const auto box = geom::quermass(
      geom::Cuboid::uniform_bc({2.0, 3.0, 4.0}, geom::AxisBC::DirichletBoth));
  CHECK(box.surface == doctest::Approx(2.0 * (6.0 + 8.0 + 12.0)));
  // d=3 box: C(3,2) s_2 = (a+b+c) omega_2.
  CHECK(box.s[0] == doctest::Approx((2.0 + 3.0 + 4.0) * kPi / 3.0));
}

TEST_CASE("steiner inflation volumes") {
  const auto square =
      geom::quermass(geom::ConvexPolygon::rectangle(1.0, 1.0));
  CHECK(geom::steiner_inflate_volume(square, 1.0) ==
        doctest::Approx(1.0 + 4.0 + kPi));

  const auto disk = geom::quermass(geom::Ball{1.0, 2});
  CHECK(geom::steiner_inflate_volume(disk, 1.0) == doctest::Approx(4.0 * kPi));

  std::mt19937 rng(3);
  const auto box = oracles::random_box(rng, 3, {3, 0, 0});
  const auto q = geom::quermass(box);
  const double delta = 0.3;
  const double mc =
      oracles::mc_inflated_box_volume(box.sides(), delta, 10000000, 1234);
  CHECK(geom::steiner_inflate_volume(q, delta) == doctest::Approx(mc).epsilon(0.01));

  // The Steiner polynomial is monotone increasing in delta.
  double prev = q.volume;
  for (double d = 0.05; d < 2.0; d += 0.05) {
    const double v = geom::steiner_inflate_volume(q, d);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("profile domain validation") {
  const std::vector<double> xs = {0.0, 0.5, 1.0};
  CHECK_NOTHROW(geom::ProfileDomain(xs, {0.0, 0.4, 0.0}, {0.0, -0.4, 0.0}, 1.0));
  // Endpoint disagreement
  CHECK_THROWS_AS(geom::ProfileDomain(xs, {0.0, 0.4, 0.1}, {0.0, -0.4, 0.0}, 1.0),
                  ValidationError);
  // Slope above the Lipschitz bound
  CHECK_THROWS_AS(geom::ProfileDomain(xs, {0.0, 0.6, 0.0}, {0.0, -0.6, 0.0}, 1.0),
                  ValidationError);
  // Upper profile must be concave
  CHECK_THROWS_AS(
      geom::ProfileDomain({0.0, 0.25, 0.5, 1.0}, {0.0, 0.1, 0.4, 0.0},
                          {0.0, -0.4, -0.4, 0.0}, 1.0),
      ValidationError);
  // h+ > h- on interior nodes
  CHECK_THROWS_AS(geom::ProfileDomain(xs, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, 1.0),
                  ValidationError);
}

TEST_CASE("steiner symmetrization: fixed point, kite, random profiles") {
  // Symmetric lens is a fixed point.
  std::vector<double> xs, hp, hm;
  const int m = 16;
  for (int i = 0; i <= m; ++i) {
    const double x = static_cast<double>(i) / m;
    xs.push_back(x);
    hp.push_back(0.3 * x * (1.0 - x));
    hm.push_back(-0.3 * x * (1.0 - x));
  }
  const geom::ProfileDomain lens(xs, hp, hm, 0.5);
  const auto sym = lens.steiner_symmetrized();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(sym.h_plus()[i] == lens.h_plus()[i]);
    CHECK(sym.h_minus()[i] == lens.h_minus()[i]);
  }

  // Kite with vertices (0,0), (1,sqrt3), (4,0), (1,-sqrt3), sheared so the
  // symmetrization has work to do; the shear cancels in (h+ - h-)/2, so the
  // output is the straight kite: equal area, smaller perimeter.
  const double s3 = std::sqrt(3.0);
  const double c = 0.2;
  const geom::ProfileDomain kite({0.0, 1.0, 4.0}, {0.0, s3, 0.0},
                                 {0.0, -s3, 0.0}, s3);
  const geom::ProfileDomain sheared({0.0, 1.0, 4.0}, {0.0, s3 + c, 4.0 * c},
                                    {0.0, -s3 + c, 4.0 * c}, s3 + c);
  const auto kite_sym = sheared.steiner_symmetrized();
  CHECK(kite_sym.area() == doctest::Approx(kite.area()).epsilon(1e-12));
  CHECK(kite_sym.perimeter() <= sheared.perimeter() + 1e-12);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(kite_sym.h_plus()[i] == doctest::Approx(kite.h_plus()[i]).epsilon(1e-12));

  // Random profiles: area exactly preserved, perimeter never increases.
  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dom = oracles::random_profile(rng, 0.5 + 0.1 * (trial % 5));
    const auto out = dom.steiner_symmetrized();
    CHECK(out.area() == doctest::Approx(dom.area()).epsilon(1e-12));
    CHECK(out.perimeter() <= dom.perimeter() + 1e-12);
  }
}

TEST_CASE("unit-perimeter profiles project onto an interval of width <= 1/2") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dom = oracles::random_profile(rng, 0.4 + 0.2 * (trial % 4));
    const auto unit = dom.scaled(1.0 / dom.perimeter());
    CHECK(unit.perimeter() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.width() <= 0.5 + 1e-12);
  }
}

TEST_CASE("profile boundary polygon and diameter") {
  const geom::ProfileDomain kite({0.0, 1.0, 4.0}, {0.0, std::sqrt(3.0), 0.0},
                                 {0.0, -std::sqrt(3.0), 0.0}, std::sqrt(3.0));
  const auto poly = kite.boundary_polygon();
  CHECK(poly.area() == doctest::Approx(kite.area()).epsilon(1e-12));
  CHECK(kite.diameter() == doctest::Approx(4.0));
  CHECK(kite.upper_length() == doctest::Approx(kite.lower_length()).epsilon(1e-12));
}
