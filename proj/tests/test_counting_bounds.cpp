#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spectra/counting_bounds.hpp"
#include "spectra/cuboid_spectra.hpp"
#include "spectra/errors.hpp"
#include "spectra/reference_spectra.hpp"

using namespace spectra;
using geom::kPi;
namespace sb = spectra::bounds;
namespace sc = spectra::cuboid;

namespace {

geom::QuermassData unit_square_quermass() {
  return geom::quermass(geom::ConvexPolygon::rectangle(1.0, 1.0));
}

geom::Cuboid unit_square(geom::AxisBC bc) {
  return geom::Cuboid::uniform_bc({1.0, 1.0}, bc);
}

}  // namespace

TEST_CASE("unit-cube reference eigenvalues used by the bounds") {
  CHECK(sb::unit_cube_neumann(2, 2) == doctest::Approx(kPi * kPi));
  CHECK(sb::unit_cube_dirichlet(2, 1) == doctest::Approx(2.0 * kPi * kPi));
  CHECK(sb::unit_cube_neumann(3, 2) == doctest::Approx(kPi * kPi));
}

TEST_CASE("d=2, n=1 Neumann bound collapses to the planar display") {
  const auto q = unit_square_quermass();
  for (double alpha : {3.0, 50.0, 400.0, 5000.0}) {
    const auto cert = sb::neumann_count_upper(q, alpha, 1);
    CHECK(cert.kappa_n == 2);  // ceil(sqrt(2 pi^2)/pi) = ceil(sqrt 2)
    const double display = alpha / (kPi * kPi) +
                           (14.0 * std::sqrt(2.0) / kPi) * 4.0 * std::sqrt(alpha) +
                           8.0 * kPi;
    CHECK(cert.value == doctest::Approx(display).epsilon(1e-12));
    // kappa_n is recoverable from the stored mu*_{n+1}.
    CHECK(static_cast<long>(std::ceil(std::sqrt(cert.d * cert.mu_star) / kPi)) ==
          cert.kappa_n);
    CHECK(cert.mu_star == sc::kth_eigenvalue(unit_square(geom::AxisBC::NeumannBoth), 2));
  }
}

TEST_CASE("Neumann upper bound dominates the exact count") {
  const auto q = unit_square_quermass();
  const auto square_n = unit_square(geom::AxisBC::NeumannBoth);
  const auto cert = sb::neumann_count_upper(q, kPi * kPi - 0.01, 1);
  CHECK(cert.value >= static_cast<double>(sc::counting(square_n, kPi * kPi - 0.01)));

  // alpha -> 0+: the bound tends to the constant (4d)^{d/2} omega_d, which
  // still covers the zero mode.
  const auto tiny = sb::neumann_count_upper(q, 1e-12, 1);
  CHECK(tiny.value == doctest::Approx(8.0 * kPi).epsilon(1e-6));
  CHECK(tiny.value >= 1.0);
}

TEST_CASE("Dirichlet lower bound stays below the exact count") {
  const auto q = unit_square_quermass();
  const auto square_d = unit_square(geom::AxisBC::DirichletBoth);
  const auto cert = sb::dirichlet_count_lower(q, 1e4, 1);
  CHECK(cert.value <= static_cast<double>(sc::counting(square_d, 1e4)));
  CHECK(cert.lambda_star == sc::kth_eigenvalue(square_d, 1));

  const auto clamped = sb::dirichlet_count_lower(q, 10.0, 1);
  CHECK(clamped.value == 0.0);

  const auto cube = geom::Cuboid::uniform_bc({1.0, 1.0, 1.0},
                                             geom::AxisBC::DirichletBoth);
  const auto qc = geom::quermass(cube);
  const auto exact = sc::counting(cube, 2000.0);
  for (int n : {1, 2, 4}) {
    const auto c = sb::dirichlet_count_lower(qc, 2000.0, n);
    CHECK(c.value <= static_cast<double>(exact));
  }
  // The leading coefficient n / (lambda*_n + 1/n)^{d/2} is eventually tighter
  // for large n (it is not monotone through the first few cube eigenvalues).
  auto leading = [&](int n) {
    return n / std::pow(sb::unit_cube_dirichlet(3, n) + 1.0 / n, 1.5);
  };
  CHECK(leading(64) > leading(1));
}

TEST_CASE("dominance with zero margin on cuboids, d in {2,3}") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 2 + trial % 2;
    const auto box = oracles::random_box(rng, d, {d, 0, 0});
    const auto q = geom::quermass(box);
    const auto box_n = geom::Cuboid::uniform_bc(box.sides(), geom::AxisBC::NeumannBoth);
    const auto box_d = geom::Cuboid::uniform_bc(box.sides(), geom::AxisBC::DirichletBoth);
    for (double alpha : {30.0, 300.0, 3000.0}) {
      for (int n : {1, 2, 4}) {
        CHECK(sb::neumann_count_upper(q, alpha, n).value >=
              static_cast<double>(sc::counting(box_n, alpha)));
        CHECK(sb::dirichlet_count_lower(q, alpha, n).value <=
              static_cast<double>(sc::counting(box_d, alpha)));
      }
    }
  }
}

TEST_CASE("neumann_eig_lower: certification and structure") {
  const auto q = unit_square_quermass();
  const auto square_n = unit_square(geom::AxisBC::NeumannBoth);

  const auto cert = sb::neumann_eig_lower(q, 10000, 1);
  const double exact = sc::kth_eigenvalue(square_n, 10000);
  CHECK(cert.value <= exact);
  CHECK(cert.value > 0.0);
  // The bound at alpha* stays at or below k; just above it crosses.
  CHECK(sb::neumann_count_upper(q, cert.value, 1).value <= 10000.0 + 1e-6);

  // k below the constant term (4d)^{d/2} omega_d = 8 pi ~ 25.13: alpha* = 0.
  CHECK(sb::neumann_eig_lower(q, 25, 1).value == 0.0);

  // Monotonicity: inflating any quermass entry never raises alpha*.
  for (int field = 0; field < 2; ++field) {
    auto q2 = q;
    (field == 0 ? q2.volume : q2.surface) *= 1.5;
    CHECK(sb::neumann_eig_lower(q2, 10000, 1).value <= cert.value + 1e-9);
  }
}

TEST_CASE("neumann_eig_lower on the unit-diameter disk") {
  const geom::Ball disk{0.5, 2};
  const auto q = geom::quermass(disk);
  const auto spec = refspec::disk_spectrum(refspec::DiskBC::Neumann, 0.5, 10000);
  const auto cert = sb::neumann_eig_lower(q, 10000, 1);
  CHECK(cert.value <= spec.spectrum.values.back());
  // Frozen sanity band for this formula at n = 1: the inversion reaches
  // about 6.3k at k = 1e4; the 0.5 W_2/|B| slope only shows at larger k.
  CHECK(cert.value / 1e4 > 6.0);
  CHECK(cert.value / 1e4 < 16.0);
}

TEST_CASE("neumann_eig_lower trend toward the Weyl slope") {
  const auto q = unit_square_quermass();
  double prev = 0.0;
  for (std::int64_t k : {100, 1000, 10000, 100000}) {
    const auto cert = sb::neumann_eig_lower(q, k, 8);
    const double ratio = cert.value / static_cast<double>(k);
    CHECK(ratio >= prev - 1e-12);
    CHECK(ratio <= cuboid::weyl_constant(2) * (1.0 + 1e-9));
    prev = ratio;
  }
}

TEST_CASE("dirichlet_eig_upper: certification and scaling") {
  const auto q = unit_square_quermass();
  const auto square_d = unit_square(geom::AxisBC::DirichletBoth);
  const auto cert = sb::dirichlet_eig_upper(q, 100, 1);
  CHECK(cert.value >= sc::kth_eigenvalue(square_d, 100));

  // Homogeneity: alpha*(t Omega, k) = t^{-2} alpha*(Omega, k).
  const double t = 1.7;
  auto qs = q;
  qs.volume *= t * t;
  qs.surface *= t;
  const auto scaled = sb::dirichlet_eig_upper(qs, 100, 1);
  CHECK(scaled.value == doctest::Approx(cert.value / (t * t)).epsilon(1e-9));

  const auto cube = geom::Cuboid::uniform_bc({1.0, 1.0, 1.0},
                                             geom::AxisBC::DirichletBoth);
  const auto cert3 = sb::dirichlet_eig_upper(geom::quermass(cube), 50, 1);
  CHECK(cert3.value >= sc::kth_eigenvalue(cube, 50));
}

TEST_CASE("default refinement heuristic") {
  CHECK(sb::default_refinement(1) == 1);
  CHECK(sb::default_refinement(10000) == 25);
  CHECK(sb::default_refinement(100000000) == 64);
}

TEST_CASE("zaremba cuboid lower bounds") {
  const auto zz = unit_square(geom::AxisBC::Mixed);
  const auto cert = sb::zaremba_cuboid_lower(zz, 100);
  // max(reflection 2^{-2} W_2 k / |R|, counting 4 pi (k - 1/4)/(|R|+|dR|)).
  const double reflection = 0.25 * 4.0 * kPi * 100.0;
  const double counting = 4.0 * kPi * 99.75 / 5.0;
  CHECK(cert.value == doctest::Approx(std::max(reflection, counting)).epsilon(1e-12));
  CHECK(cert.value <= sc::kth_eigenvalue(zz, 100));

  // Pure Dirichlet: the bound is the Polya line, below lambda_k exactly.
  const auto dd = unit_square(geom::AxisBC::DirichletBoth);
  for (std::int64_t k : {1, 10, 250}) {
    const auto c = sb::zaremba_cuboid_lower(dd, k);
    CHECK(c.value == doctest::Approx(4.0 * kPi * static_cast<double>(k)).epsilon(1e-12));
    CHECK(c.value <= sc::kth_eigenvalue(dd, k));
  }

  // Long thin (0,0,2) rectangle: k = 1 sits below the counting threshold, so
  // only the reflection bound applies.
  const auto thin = geom::Cuboid::uniform_bc({0.1, 10.0}, geom::AxisBC::Mixed);
  const auto c1 = sb::zaremba_cuboid_lower(thin, 1);
  CHECK(c1.note == "reflection");
  CHECK(c1.value == doctest::Approx(0.25 * 4.0 * kPi).epsilon(1e-12));

  CHECK_THROWS_AS(
      sb::zaremba_cuboid_lower(unit_square(geom::AxisBC::NeumannBoth), 5),
      NotApplicable);
}

TEST_CASE("n2 certificate: scan value, defining inequality, monotonicity") {
  const auto n2 = sb::n2_certificate();
  CHECK(n2.threshold == 6323);
  CHECK(n2.threshold >= 6000);
  CHECK(n2.threshold <= 6500);
  auto lhs = [](std::int64_t k) {
    return 56.0 * std::sqrt(2.0 * static_cast<double>(k)) + 8.0 * kPi;
  };
  CHECK(lhs(n2.threshold) < static_cast<double>(n2.threshold));
  CHECK(lhs(n2.threshold - 1) >= static_cast<double>(n2.threshold - 1));
  for (std::int64_t k = n2.threshold; k <= 100000; k += 997)
    CHECK(lhs(k) < static_cast<double>(k));
  CHECK(n2.certificate.note.find("6222") != std::string::npos);
}

TEST_CASE("abstract Zaremba profile lower bound takes C_{d,L} as input") {
  const double v1 = sb::zaremba_profile_lower(0.05, 0.4, 2.0, 2, 1000, 1.0, 0.25);
  const double v2 = sb::zaremba_profile_lower(0.05, 0.4, 2.0, 2, 1000, 2.0, 0.25);
  CHECK(v2 > v1);  // monotone in the supplied constant
  CHECK_THROWS_AS(sb::zaremba_profile_lower(0.05, 0.4, 2.0, 2, 1000, 1.0, 0.6),
                  ValidationError);
}

TEST_CASE("unsupported shapes for d >= 3 quermass bounds") {
  geom::QuermassData q;
  q.d = 3;
  q.volume = 1.0;
  q.surface = 6.0;
  q.omega_d = geom::unit_ball_volume(3);
  // Missing s_2: not enough data for the d = 3 remainder.
  CHECK_THROWS_AS(sb::neumann_count_upper(q, 10.0, 1), UnsupportedShape);
}
