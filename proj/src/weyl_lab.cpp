#include "spectra/weyl_lab.hpp"

#include <algorithm>
#include <cmath>

#include "spectra/errors.hpp"
#include "spectra/fem.hpp"
#include "spectra/reference_spectra.hpp"

namespace spectra::weyl {

namespace {

double weyl_value(int d, std::int64_t k, double volume) {
  return cuboid::weyl_constant(d) * std::pow(static_cast<double>(k), 2.0 / d) *
         std::pow(volume, -2.0 / d);
}

}  // namespace

RatioTable shrinking_squares_ratio(cuboid::IntervalBC bc,
                                   const std::vector<std::int64_t>& ks) {
  RatioTable table;
  table.family = "shrinking_squares";
  table.bc = bc == cuboid::IntervalBC::Dirichlet ? "dirichlet" : "neumann";
  const geom::AxisBC axis_bc = bc == cuboid::IntervalBC::Dirichlet
                                   ? geom::AxisBC::DirichletBoth
                                   : geom::AxisBC::NeumannBoth;
  for (std::int64_t k : ks) {
    const double side = 1.0 + 1.0 / static_cast<double>(k);
    const geom::Cuboid sq = geom::Cuboid::uniform_bc({side, side}, axis_bc);
    const double ev = cuboid::kth_eigenvalue(sq, k);
    const double w = weyl_value(2, k, sq.volume());
    table.rows.push_back({k, ev, w, ev / w, "exact_cuboid"});
  }
  return table;
}

geom::Cuboid degenerate_cuboid(int d, std::int64_t k, geom::AxisBC bc) {
  if (d < 2) throw ValidationError("degenerate_cuboid: d must be >= 2");
  const double ak = 3.0 * std::pow(static_cast<double>(k), 1.0 / d) *
                    std::pow(geom::unit_ball_volume(d), -1.0 / d);
  std::vector<double> sides(static_cast<std::size_t>(d),
                            std::pow(ak, 1.0 / (d - 1)));
  sides.back() = 1.0 / ak;
  return geom::Cuboid::uniform_bc(sides, bc);
}

std::vector<DegenerateCuboidRow> degenerate_cuboid_check(
    int d, const std::vector<std::int64_t>& ks) {
  std::vector<DegenerateCuboidRow> rows;
  const double omega_pow = std::pow(geom::unit_ball_volume(d), -2.0 / d);
  for (std::int64_t k : ks) {
    DegenerateCuboidRow row;
    row.k = k;
    const double kd = static_cast<double>(k);
    const double ak = 3.0 * std::pow(kd, 1.0 / d) *
                      std::pow(geom::unit_ball_volume(d), -1.0 / d);

    const geom::Cuboid rd = degenerate_cuboid(d, k, geom::AxisBC::DirichletBoth);
    const geom::Cuboid rn = degenerate_cuboid(d, k, geom::AxisBC::NeumannBoth);
    row.lambda_k = cuboid::kth_eigenvalue(rd, k);
    row.mu_k = cuboid::kth_eigenvalue(rn, k);
    row.dirichlet_threshold =
        9.0 * geom::kPi * geom::kPi * omega_pow * std::pow(kd, 2.0 / d);
    row.weyl = weyl_value(d, k, 1.0);

    // Cross-section comparison: mu_k(R_k)^{(d-1)/2} <= a_k^{-1} mu~_k^{(d-1)/2},
    // with mu~_k the k-th Neumann eigenvalue of the (d-1)-unit cube.
    const geom::Cuboid cross = geom::Cuboid::uniform_bc(
        std::vector<double>(static_cast<std::size_t>(d - 1), 1.0),
        geom::AxisBC::NeumannBoth);
    const double mu_tilde = cuboid::kth_eigenvalue(cross, k);
    row.mu_chain_mid = std::pow(mu_tilde, 0.5 * (d - 1)) / ak;

    row.dirichlet_above = row.lambda_k > row.dirichlet_threshold &&
                          row.dirichlet_threshold > row.weyl;
    const double mu_pow = std::pow(row.mu_k, 0.5 * (d - 1));
    row.neumann_below = mu_pow <= row.mu_chain_mid * (1.0 + 1e-12) &&
                        row.mu_k < row.weyl;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DisjointBallsRow> disjoint_balls_check(
    const std::vector<std::int64_t>& ks) {
  std::vector<DisjointBallsRow> rows;
  for (std::int64_t k : ks) {
    DisjointBallsRow row;
    row.k = k;
    const double r = 1.0 / std::sqrt(static_cast<double>(k));
    const double area = static_cast<double>(k + 1) * geom::kPi * r * r;

    const auto ball_d = refspec::disk_spectrum(refspec::DiskBC::Dirichlet, r, 1);
    const auto merged_d = refspec::merge_copies(ball_d.spectrum, k + 1, k);
    row.lambda_k = merged_d.values.back();

    const auto ball_n = refspec::disk_spectrum(refspec::DiskBC::Neumann, r, 1);
    const auto merged_n = refspec::merge_copies(ball_n.spectrum, k + 1, k + 1);
    row.mu_kplus1 = merged_n.values.back();
    row.zero_block = row.mu_kplus1 == 0.0;

    const double j01 = refspec::bessel_zero(0, 1);
    row.lambda1_ball_k = j01 * j01 * static_cast<double>(k);
    row.weyl_value = weyl_value(2, k, area);
    row.dirichlet_above_weyl = row.lambda_k > row.weyl_value;
    rows.push_back(row);
  }
  return rows;
}

std::vector<DisjointUnionRow> disjoint_union_family(
    const std::vector<std::int64_t>& ks) {
  std::vector<DisjointUnionRow> rows;
  const geom::Cuboid square =
      geom::Cuboid::uniform_bc({2.0, 2.0}, geom::AxisBC::NeumannBoth);
  for (std::int64_t k : ks) {
    DisjointUnionRow row;
    row.k = k;
    const auto nk = static_cast<std::int64_t>(
        static_cast<double>(k) / std::log(static_cast<double>(k) + 1.0));
    row.components = nk;
    const double r = 1.0 / std::sqrt(static_cast<double>(nk));
    row.area = nk * geom::kPi * r * r;
    const std::int64_t per_ball = (k + nk - 1) / nk + 1;
    const auto ball_n = refspec::disk_spectrum(refspec::DiskBC::Neumann, r, per_ball);
    row.mu_union = refspec::merge_copies(ball_n.spectrum, nk, k).values.back();
    const auto ball_d = refspec::disk_spectrum(refspec::DiskBC::Dirichlet, r, per_ball);
    row.lambda_union = refspec::merge_copies(ball_d.spectrum, nk, k).values.back();
    row.mu_square = cuboid::kth_eigenvalue(square, k);
    row.ratio = row.mu_union / row.mu_square;
    row.dirichlet_ratio = row.lambda_union / row.mu_square;
    rows.push_back(row);
  }
  return rows;
}

TwoSquaresRow two_equal_squares(cuboid::IntervalBC bc, std::int64_t k) {
  const geom::AxisBC axis_bc = bc == cuboid::IntervalBC::Dirichlet
                                   ? geom::AxisBC::DirichletBoth
                                   : geom::AxisBC::NeumannBoth;
  const geom::Cuboid sq = geom::Cuboid::uniform_bc({1.0, 1.0}, axis_bc);
  const auto part = cuboid::spectrum_prefix(sq, (k + 1) / 2 + 1);
  const auto merged = refspec::merge_copies(part, 2, k);
  TwoSquaresRow row;
  row.k = k;
  row.eigenvalue = merged.values.back();
  row.weyl_value = weyl_value(2, k, 2.0);
  row.ratio = row.eigenvalue / row.weyl_value;
  return row;
}

RadiatorReport radiator_experiment(int k, int rectangles,
                                   const std::vector<double>& eps_list,
                                   double cell) {
  if (k < 1 || k > 8)
    throw CostGate("radiator_experiment: k must be in [1,8] (FEM cost gate)");
  if (rectangles < 2) throw ValidationError("radiator_experiment: need >= 2 rectangles");
  if (eps_list.empty()) throw ValidationError("radiator_experiment: empty eps list");

  // Rectangle geometry snaps to the coarsest ladder cell (4x) so the same
  // domain can be re-meshed on the refinement ladder; tube heights snap to
  // the base cell per eps.
  const double coarse = 4.0 * cell;
  auto snap = [&](double v) {
    const double s = std::round(v / coarse) * coarse;
    return std::max(s, coarse);
  };
  if (std::abs(std::round(1.0 / coarse) * coarse - 1.0) > 1e-9)
    throw ValidationError("radiator_experiment: 4*cell must divide the unit height");
  RadiatorReport report;
  report.k = k;
  report.rectangles = rectangles;
  report.rect_width = snap(1.0 / rectangles);
  report.tube_length = snap(1.0 / (rectangles * rectangles));

  auto build = [&](double eps) {
    fem::RectilinearDomain dom;
    const double half = std::round(0.5 * eps / cell) * cell;
    if (!(half > 0.0) || std::abs(2.0 * half - eps) > 1e-9)
      throw ValidationError(
          "radiator_experiment: eps/2 must be a positive multiple of the cell");
    for (int i = 0; i < rectangles; ++i) {
      const double x0 = i * (report.rect_width + report.tube_length);
      dom.rects.push_back({x0, 0.0, x0 + report.rect_width, 1.0});
      if (i + 1 < rectangles)
        dom.rects.push_back({x0 + report.rect_width, 0.5 - half,
                             x0 + report.rect_width + report.tube_length,
                             0.5 + half});
    }
    return dom;
  };

  for (double eps : eps_list) {
    const auto dom = build(eps);
    const fem::Mesh mesh_d =
        fem::triangulate_rectilinear(dom, cell, fem::EdgeTag::DirichletPart);
    const fem::Mesh mesh_n =
        fem::triangulate_rectilinear(dom, cell, fem::EdgeTag::NeumannPart);
    RadiatorRow row;
    row.eps = eps;
    row.dirichlet = fem::solve_eigs_mesh(mesh_d, fem::FemBC::Dirichlet, k).values;
    row.neumann = fem::solve_eigs_mesh(mesh_n, fem::FemBC::Neumann, k).values;
    report.rows.push_back(row);
  }

  // Decoupled limit: the disjoint union of the rectangles.
  const geom::Cuboid rect = geom::Cuboid::uniform_bc(
      {report.rect_width, 1.0}, geom::AxisBC::DirichletBoth);
  const auto part =
      cuboid::spectrum_prefix(rect, (k + rectangles - 1) / rectangles + 1);
  report.decoupled = refspec::merge_copies(part, rectangles, k).values;

  // Mesh-refinement order at the largest eps (cheapest ladder).
  const double eps0 = *std::max_element(eps_list.begin(), eps_list.end());
  const auto dom0 = build(eps0);
  std::vector<std::vector<double>> ladder;
  const std::vector<double> cells = {4.0 * cell, 2.0 * cell, cell};
  for (double c : cells) {
    const fem::Mesh mesh =
        fem::triangulate_rectilinear(dom0, c, fem::EdgeTag::DirichletPart);
    ladder.push_back(fem::solve_eigs_mesh(mesh, fem::FemBC::Dirichlet, k).values);
  }
  for (int j = 0; j < k; ++j) {
    const double d12 = ladder[0][static_cast<std::size_t>(j)] -
                       ladder[1][static_cast<std::size_t>(j)];
    const double d23 = ladder[1][static_cast<std::size_t>(j)] -
                       ladder[2][static_cast<std::size_t>(j)];
    report.richardson_order.push_back(
        d12 > 0.0 && d23 > 0.0 ? std::log(d12 / d23) / std::log(2.0)
                               : std::numeric_limits<double>::quiet_NaN());
  }
  return report;
}

double scaled_copy_max_mismatch(const geom::Cuboid& box, double alpha,
                                std::int64_t k_max) {
  const auto base = cuboid::spectrum_prefix(box, k_max);
  const auto scaled = cuboid::spectrum_prefix(box.scaled(alpha), k_max);
  double worst = 0.0;
  for (std::int64_t k = 0; k < k_max; ++k) {
    const double lhs = scaled.values[static_cast<std::size_t>(k)] * alpha * alpha;
    const double rhs = base.values[static_cast<std::size_t>(k)];
    if (rhs > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / rhs);
  }
  return worst;
}

}  // namespace spectra::weyl
