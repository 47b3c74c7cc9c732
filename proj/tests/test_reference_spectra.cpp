#include <doctest.h>

#include <array>
#include <cmath>
#include <thread>

#include "spectra/cuboid_spectra.hpp"
#include "spectra/errors.hpp"
#include "spectra/reference_spectra.hpp"

using namespace spectra;
using geom::kPi;
namespace rs = spectra::refspec;

namespace {

// Grid-scan oracle for the first zero of J_0: sign change on a step-1e-3 grid
// refined by bisection on the series-evaluated function.
double j01_grid_oracle() {
  auto f = [](double x) { return rs::bessel_j(0, x); };
  double a = 1.0;
  while (f(a) * f(a + 1e-3) > 0.0) a += 1e-3;
  double b = a + 1e-3;
  for (int i = 0; i < 80; ++i) {
    const double m = 0.5 * (a + b);
    (f(a) * f(m) <= 0.0 ? b : a) = m;
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("bessel zeros: j01 frozen value and grid oracle") {
  CHECK(rs::bessel_zero(0, 1) == doctest::Approx(2.404825557695773).epsilon(1e-12));
  CHECK(rs::bessel_zero(0, 1) == doctest::Approx(j01_grid_oracle()).epsilon(1e-10));
  CHECK(rs::bessel_zero(1, 1) > rs::bessel_zero(0, 1));  // interlacing
  CHECK(std::abs(rs::bessel_zero(0, 2) - rs::bessel_zero(0, 1) - kPi) < 0.35);
  CHECK_THROWS_AS(rs::bessel_zero(-1, 1), ValidationError);
}

TEST_CASE("bessel evaluation agrees with the standard library") {
  for (int nu : {0, 1, 2, 5, 9}) {
    for (double x = 0.5; x < 30.0; x += 0.7) {
      const double mine = rs::bessel_j(nu, x);
      const double ref = std::cyl_bessel_j(static_cast<double>(nu), x);
      CHECK(mine == doctest::Approx(ref).epsilon(1e-9));
    }
  }
}

TEST_CASE("zeros satisfy the defining equations to 1e-10") {
  for (int nu : {0, 1, 3, 7, 20}) {
    for (int m : {1, 2, 5, 12}) {
      const double z = rs::bessel_zero(nu, m);
      CHECK(std::abs(rs::bessel_j(nu, z)) < 1e-10);
      const double zd = rs::bessel_derivative_zero(nu, m);
      CHECK(std::abs(rs::bessel_j_derivative(nu, zd)) < 1e-10);
    }
  }
}

TEST_CASE("disk spectra: Dirichlet and Neumann basics") {
  const auto d1 = rs::disk_spectrum(rs::DiskBC::Dirichlet, 1.0, 6);
  const double j01 = rs::bessel_zero(0, 1);
  CHECK(d1.spectrum.values[0] == doctest::Approx(j01 * j01));
  // nu = 1 pair comes with multiplicity two and matching labels.
  CHECK(d1.spectrum.values[1] == d1.spectrum.values[2]);
  CHECK(d1.labels[1].nu == 1);
  CHECK(d1.labels[2].nu == 1);
  CHECK(d1.labels[1].branch != d1.labels[2].branch);

  const auto n1 = rs::disk_spectrum(rs::DiskBC::Neumann, 1.0, 4);
  CHECK(n1.spectrum.values[0] == 0.0);
  const double jp11 = rs::bessel_derivative_zero(1, 1);
  CHECK(n1.spectrum.values[1] == doctest::Approx(jp11 * jp11));
  CHECK(n1.spectrum.values[2] == doctest::Approx(jp11 * jp11));
}

TEST_CASE("unit-area disk Neumann satisfies the planar Polya bound") {
  const double r = 1.0 / std::sqrt(kPi);  // |B| = 1
  const auto spec = rs::disk_spectrum(rs::DiskBC::Neumann, r, 201);
  for (std::int64_t k = 1; k <= 200; ++k)
    CHECK(spec.spectrum.values[static_cast<std::size_t>(k)] <=
          4.0 * kPi * static_cast<double>(k));
}

TEST_CASE("disk Dirichlet Weyl ratio at k = 5000") {
  const auto spec = rs::disk_spectrum(rs::DiskBC::Dirichlet, 1.0, 5000);
  const double weyl = 4.0 * kPi * 5000.0 / kPi;  // W_2 k / |B_1|
  CHECK(spec.spectrum.values.back() / weyl == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("Faber-Krahn sanity: unit-area disk beats the unit square") {
  const double r = 1.0 / std::sqrt(kPi);
  const auto disk = rs::disk_spectrum(rs::DiskBC::Dirichlet, r, 1);
  CHECK(disk.spectrum.values[0] <= 2.0 * kPi * kPi);
}

TEST_CASE("merge: identity, disjoint balls, mixed radii, associativity") {
  const auto one = rs::disk_spectrum(rs::DiskBC::Dirichlet, 1.0, 5).spectrum;
  const auto same = rs::merge_spectra({one});
  CHECK(same.values == one.values);

  // k+1 Neumann balls: the first k+1 merged eigenvalues are all zero.
  const std::int64_t k = 40;
  const auto ball = rs::disk_spectrum(rs::DiskBC::Neumann, 1.0, 2).spectrum;
  const auto merged = rs::merge_copies(ball, k + 1, k + 1);
  CHECK(merged.values.back() == 0.0);

  const auto big = rs::disk_spectrum(rs::DiskBC::Dirichlet, 1.0, 8).spectrum;
  const auto small = rs::disk_spectrum(rs::DiskBC::Dirichlet, 0.5, 8).spectrum;
  const auto two = rs::merge_spectra({big, small});
  const double j01 = rs::bessel_zero(0, 1);
  const double j11 = rs::bessel_zero(1, 1);
  CHECK(two.values[0] == doctest::Approx(j01 * j01));
  CHECK(two.values[1] ==
        doctest::Approx(std::min(j11 * j11, 4.0 * j01 * j01)));

  const auto ab = rs::merge_spectra({rs::merge_spectra({big, small}), one});
  const auto ba = rs::merge_spectra({one, rs::merge_spectra({small, big})});
  CHECK(ab.values == ba.values);

  const auto neumann = rs::disk_spectrum(rs::DiskBC::Neumann, 1.0, 3).spectrum;
  CHECK_THROWS_AS(rs::merge_spectra({big, neumann}), ValidationError);
}

TEST_CASE("zero cache is safe for concurrent readers") {
  std::vector<std::thread> workers;
  std::array<double, 4> results{};
  for (int t = 0; t < 4; ++t)
    workers.emplace_back([t, &results] {
      const auto spec = rs::disk_spectrum(rs::DiskBC::Dirichlet, 1.0, 120);
      results[static_cast<std::size_t>(t)] = spec.spectrum.values.back();
    });
  for (auto& w : workers) w.join();
  for (int t = 1; t < 4; ++t)
    CHECK(results[static_cast<std::size_t>(t)] == results[0]);
}

TEST_CASE("merged cuboid and disk spectra share family detection") {
  const auto square = cuboid::spectrum_prefix(
      geom::Cuboid::uniform_bc({1.0, 1.0}, geom::AxisBC::DirichletBoth), 6);
  const auto disk = rs::disk_spectrum(rs::DiskBC::Dirichlet, 1.0, 6).spectrum;
  const auto merged = rs::merge_spectra({square, disk});
  CHECK(merged.values.size() == 12);
  CHECK(std::is_sorted(merged.values.begin(), merged.values.end()));
}
