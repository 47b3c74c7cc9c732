#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "spectra/errors.hpp"
#include "spectra/fem.hpp"
#include "spectra/reference_spectra.hpp"

using namespace spectra;
using geom::kPi;

namespace {

const double kPi2 = kPi * kPi;

geom::ConvexPolygon unit_square() { return geom::ConvexPolygon::rectangle(1.0, 1.0); }

geom::ProfileDomain symmetric_lens(int m = 32) {
  std::vector<double> xs, hp, hm;
  const double w = 0.45, a = 0.4 / w;
  for (int i = 0; i <= m; ++i) {
    const double x = w * i / m;
    xs.push_back(x);
    hp.push_back(a * x * (w - x));
    hm.push_back(-a * x * (w - x));
  }
  return geom::ProfileDomain(xs, hp, hm, 0.5);
}

}  // namespace

TEST_CASE("mesh bookkeeping on the unit square") {
  const auto mesh = fem::triangulate(unit_square(), 0.1, fem::FemBC::Dirichlet);
  CHECK_NOTHROW(mesh.validate());
  CHECK(mesh.min_angle_deg() >= 20.0);
  CHECK(mesh.boundary_length() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(mesh.h <= 0.1 * 1.9);  // boundary spacing <= h; interior lattice ~ h

  CHECK_THROWS_AS(fem::triangulate(unit_square(), 1.0, fem::FemBC::Dirichlet),
                  ValidationError);  // h > diameter/4
}

TEST_CASE("profile meshes tag the two boundary profiles") {
  const auto lens = symmetric_lens();
  const auto mesh = fem::triangulate(lens, 0.015, fem::FemBC::Zaremba);
  CHECK_NOTHROW(mesh.validate());
  const int nd = mesh.count_tag(fem::EdgeTag::DirichletPart);
  const int nn = mesh.count_tag(fem::EdgeTag::NeumannPart);
  CHECK(std::abs(nd - nn) <= 1);  // symmetric lens
  CHECK(mesh.boundary_length() == doctest::Approx(lens.perimeter()).epsilon(1e-12));
}

TEST_CASE("refinement roughly quadruples the node count") {
  const auto hex = geom::ConvexPolygon::regular(6, 1.0);
  const auto coarse = fem::triangulate(hex, 0.12, fem::FemBC::Dirichlet);
  const auto fine = fem::triangulate(hex, 0.06, fem::FemBC::Dirichlet);
  const double ratio = static_cast<double>(fine.nodes.size()) /
                       static_cast<double>(coarse.nodes.size());
  CHECK(ratio > 4.0 / 1.5);
  CHECK(ratio < 4.0 * 1.5);
}

TEST_CASE("mass matrix row sums aggregate element areas by thirds") {
  const auto mesh = fem::triangulate(unit_square(), 0.15, fem::FemBC::Neumann);
  const auto sys = fem::assemble(mesh, fem::FemBC::Neumann);
  std::vector<double> thirds(mesh.nodes.size(), 0.0);
  for (const auto& t : mesh.triangles) {
    const auto a = mesh.nodes[static_cast<std::size_t>(t[0])];
    const auto b = mesh.nodes[static_cast<std::size_t>(t[1])];
    const auto c = mesh.nodes[static_cast<std::size_t>(t[2])];
    const double area = 0.5 * geom::cross(b - a, c - a);
    for (int v : t) thirds[static_cast<std::size_t>(v)] += area / 3.0;
  }
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(sys.mass.cols());
  Eigen::VectorXd rows = sys.mass * ones;
  double total = 0.0;
  for (int i = 0; i < rows.size(); ++i) {
    CHECK(rows(i) == doctest::Approx(thirds[static_cast<std::size_t>(i)]).epsilon(1e-12));
    total += rows(i);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("square eigenvalues: Dirichlet, Neumann, Zaremba tags") {
  const auto spec_d = fem::solve_eigs(unit_square(), fem::FemBC::Dirichlet, 1, 1.0 / 32);
  CHECK(spec_d.values[0] == doctest::Approx(2.0 * kPi2).epsilon(0.005));

  const auto spec_n = fem::solve_eigs(unit_square(), fem::FemBC::Neumann, 2, 1.0 / 32);
  CHECK(std::abs(spec_n.values[0]) <= 1e-8 * kPi2);
  CHECK(spec_n.values[1] == doctest::Approx(kPi2).epsilon(0.005));

  // (0,1,1) tagging: Dirichlet bottom edge, Neumann elsewhere.
  const std::vector<fem::EdgeTag> tags = {
      fem::EdgeTag::DirichletPart, fem::EdgeTag::NeumannPart,
      fem::EdgeTag::NeumannPart, fem::EdgeTag::NeumannPart};
  const auto mesh = fem::triangulate(unit_square(), 1.0 / 32, tags);
  const auto spec_z = fem::solve_eigs_mesh(mesh, fem::FemBC::Zaremba, 1);
  CHECK(spec_z.values[0] == doctest::Approx(kPi2 / 4.0).epsilon(0.01));
}

TEST_CASE("conforming FEM eigenvalues bound the exact ones from above") {
  const auto exact = cuboid::spectrum_prefix(
      geom::Cuboid::uniform_bc({1.0, 1.0}, geom::AxisBC::DirichletBoth), 20);
  for (double h : {1.0 / 16, 1.0 / 32}) {
    const auto spec = fem::solve_eigs(unit_square(), fem::FemBC::Dirichlet, 20, h);
    for (std::size_t i = 0; i < 20; ++i)
      CHECK(spec.values[i] >= exact.values[i]);
  }
}

TEST_CASE("Dirichlet-Neumann bracketing holds on meshes") {
  const std::vector<fem::EdgeTag> tags = {
      fem::EdgeTag::DirichletPart, fem::EdgeTag::NeumannPart,
      fem::EdgeTag::DirichletPart, fem::EdgeTag::NeumannPart};
  const auto mesh = fem::triangulate(unit_square(), 1.0 / 24, tags);
  const auto mu = fem::solve_eigs_mesh(mesh, fem::FemBC::Neumann, 10);
  const auto zeta = fem::solve_eigs_mesh(mesh, fem::FemBC::Zaremba, 10);
  const auto lambda = fem::solve_eigs_mesh(mesh, fem::FemBC::Dirichlet, 10);
  for (std::size_t i = 0; i < 10; ++i) {
    const double err_margin = 2.0 * 0.05 * lambda.values[i] * (1.0 / 24) * (1.0 / 24) *
                                  lambda.values[i] / lambda.values[0] +
                              1e-9;
    CHECK(mu.values[i] <= zeta.values[i] + err_margin);
    CHECK(zeta.values[i] <= lambda.values[i] + err_margin);
  }
}

TEST_CASE("Dirichlet domain monotonicity on nested squares") {
  const auto big = geom::ConvexPolygon::rectangle(1.2, 1.2);
  const auto small = unit_square();
  const auto spec_big = fem::solve_eigs(big, fem::FemBC::Dirichlet, 8, 1.0 / 24);
  const auto spec_small = fem::solve_eigs(small, fem::FemBC::Dirichlet, 8, 1.0 / 24);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(spec_big.values[i] <= spec_small.values[i] * (1.0 + 0.01));
}

TEST_CASE("assembly is isometry invariant on the same mesh") {
  auto mesh = fem::triangulate(unit_square(), 1.0 / 16, fem::FemBC::Dirichlet);
  auto moved = mesh;
  const double c = std::cos(0.7), s = std::sin(0.7);
  for (auto& p : moved.nodes)
    p = {c * p.x - s * p.y + 3.0, s * p.x + c * p.y - 1.0};
  const auto spec = fem::solve_eigs_mesh(mesh, fem::FemBC::Dirichlet, 6);
  const auto spec2 = fem::solve_eigs_mesh(moved, fem::FemBC::Dirichlet, 6);
  for (std::size_t i = 0; i < 6; ++i)
    CHECK(spec2.values[i] == doctest::Approx(spec.values[i]).epsilon(1e-8));
}

TEST_CASE("zaremba positivity on random profile domains") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const auto dom = oracles::random_profile(rng, 0.5 + 0.3 * trial, 20);
    const double h = std::max(dom.area() / dom.width() * 0.25, dom.diameter() / 40.0);
    const auto spec = fem::solve_eigs(dom, fem::FemBC::Zaremba, 1, h);
    CHECK(spec.values[0] > 0.0);
  }
}

TEST_CASE("richardson ladder on the square") {
  const fem::FemDomain dom = unit_square();
  const auto rr =
      fem::refine_extrapolate(dom, fem::FemBC::Dirichlet, 1, {1.0 / 8, 1.0 / 16, 1.0 / 32});
  CHECK(rr.observed_order[0] > 1.7);
  CHECK(rr.observed_order[0] < 2.3);
  CHECK(rr.extrapolated[0] == doctest::Approx(2.0 * kPi2).epsilon(0.001));
  CHECK_FALSE(rr.suspect);

  CHECK_THROWS_AS(
      fem::refine_extrapolate(dom, fem::FemBC::Dirichlet, 1, {0.1, 0.05}),
      ValidationError);
  CHECK_THROWS_AS(
      fem::refine_extrapolate(dom, fem::FemBC::Dirichlet, 1, {0.1, 0.07, 0.065}),
      ValidationError);
}

TEST_CASE("solver preconditions") {
  const auto mesh = fem::triangulate(unit_square(), 0.2, fem::FemBC::Dirichlet);
  const auto sys = fem::assemble(mesh, fem::FemBC::Dirichlet);
  CHECK_THROWS_AS(
      fem::solve_generalized(sys, static_cast<int>(sys.free_dofs.size()), fem::FemBC::Dirichlet),
      ValidationError);
}

TEST_CASE("dense and sparse eigensolver paths agree") {
  const auto mesh = fem::triangulate(unit_square(), 1.0 / 24, fem::FemBC::Dirichlet);
  fem::SolveOptions dense;
  dense.dense_threshold = 100000;
  fem::SolveOptions sparse;
  sparse.dense_threshold = 0;
  const auto a = fem::solve_eigs_mesh(mesh, fem::FemBC::Dirichlet, 8, dense);
  const auto b = fem::solve_eigs_mesh(mesh, fem::FemBC::Dirichlet, 8, sparse);
  for (std::size_t i = 0; i < 8; ++i)
    CHECK(a.values[i] == doctest::Approx(b.values[i]).epsilon(1e-9));
}

TEST_CASE("rectilinear pixel meshes") {
  fem::RectilinearDomain dom;
  dom.rects.push_back({0.0, 0.0, 1.0, 0.5});
  dom.rects.push_back({0.25, 0.5, 0.75, 1.0});
  const auto mesh = fem::triangulate_rectilinear(dom, 0.25 / 4, fem::EdgeTag::DirichletPart);
  CHECK_NOTHROW(mesh.validate());
  CHECK(mesh.min_angle_deg() == doctest::Approx(45.0));
  double area = 0.0;
  for (const auto& t : mesh.triangles) {
    const auto a = mesh.nodes[static_cast<std::size_t>(t[0])];
    const auto b = mesh.nodes[static_cast<std::size_t>(t[1])];
    const auto c = mesh.nodes[static_cast<std::size_t>(t[2])];
    area += 0.5 * geom::cross(b - a, c - a);
  }
  CHECK(area == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_THROWS_AS(fem::triangulate_rectilinear(dom, 0.3, fem::EdgeTag::DirichletPart),
                  ValidationError);  // coordinates not multiples of the cell
}
