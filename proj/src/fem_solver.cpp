#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "spectra/errors.hpp"
#include "spectra/fem.hpp"

namespace spectra::fem {

using geom::Vec2;

AssembledSystem assemble(const Mesh& mesh, FemBC bc) {
  const int n = static_cast<int>(mesh.nodes.size());
  std::vector<Eigen::Triplet<double>> kt, mt;
  kt.reserve(mesh.triangles.size() * 9);
  mt.reserve(mesh.triangles.size() * 9);

  for (const auto& t : mesh.triangles) {
    const Vec2 p1 = mesh.nodes[static_cast<std::size_t>(t[0])];
    const Vec2 p2 = mesh.nodes[static_cast<std::size_t>(t[1])];
    const Vec2 p3 = mesh.nodes[static_cast<std::size_t>(t[2])];
    const double area = 0.5 * geom::cross(p2 - p1, p3 - p1);
    if (!(area > 0.0)) throw MeshFailure("assemble: non-positive triangle area");
    // P1 gradients: grad phi_i = (b_i, c_i) / (2 area), exact integration.
    const double b[3] = {p2.y - p3.y, p3.y - p1.y, p1.y - p2.y};
    const double c[3] = {p3.x - p2.x, p1.x - p3.x, p2.x - p1.x};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double kij = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
        const double mij = area / 12.0 * (i == j ? 2.0 : 1.0);
        kt.emplace_back(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)], kij);
        mt.emplace_back(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(j)], mij);
      }
  }

  AssembledSystem sys;
  sys.total_nodes = n;
  sys.stiffness.resize(n, n);
  sys.mass.resize(n, n);
  sys.stiffness.setFromTriplets(kt.begin(), kt.end());
  sys.mass.setFromTriplets(mt.begin(), mt.end());

  std::set<int> constrained;
  if (bc != FemBC::Neumann) {
    for (const auto& e : mesh.boundary_edges) {
      const bool dirichlet =
          bc == FemBC::Dirichlet || e.tag == EdgeTag::DirichletPart;
      if (dirichlet) {
        constrained.insert(e.nodes[0]);
        constrained.insert(e.nodes[1]);
      }
    }
  }
  sys.free_dofs.reserve(static_cast<std::size_t>(n) - constrained.size());
  for (int i = 0; i < n; ++i)
    if (constrained.find(i) == constrained.end()) sys.free_dofs.push_back(i);
  return sys;
}

namespace {

Eigen::SparseMatrix<double> restrict_to(const Eigen::SparseMatrix<double>& full,
                                        const std::vector<int>& dofs) {
  const int n = full.rows();
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < dofs.size(); ++i)
    map[static_cast<std::size_t>(dofs[i])] = static_cast<int>(i);
  std::vector<Eigen::Triplet<double>> trips;
  for (int col = 0; col < full.outerSize(); ++col) {
    const int cm = map[static_cast<std::size_t>(col)];
    if (cm < 0) continue;
    for (Eigen::SparseMatrix<double>::InnerIterator it(full, col); it; ++it) {
      const int rm = map[static_cast<std::size_t>(it.row())];
      if (rm >= 0) trips.emplace_back(rm, cm, it.value());
    }
  }
  Eigen::SparseMatrix<double> out(static_cast<int>(dofs.size()),
                                  static_cast<int>(dofs.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

std::vector<double> dense_eigs(const Eigen::SparseMatrix<double>& K,
                               const Eigen::SparseMatrix<double>& M, int k) {
  const Eigen::MatrixXd Kd(K);
  const Eigen::MatrixXd Md(M);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(Kd, Md);
  if (solver.info() != Eigen::Success)
    throw NumericalFailure("fem eigensolver: dense solve failed");
  std::vector<double> out(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] =
      solver.eigenvalues()(i);
  return out;
}

// Shift-invert subspace iteration with Rayleigh-Ritz projection.
std::vector<double> sparse_eigs(const Eigen::SparseMatrix<double>& K,
                                const Eigen::SparseMatrix<double>& M, int k,
                                double shift, const SolveOptions& options) {
  const int n = K.rows();
  const int m = std::min(n, std::max(2 * k, k + 8));

  Eigen::SparseMatrix<double> A = K - shift * M;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
  ldlt.compute(A);
  if (ldlt.info() != Eigen::Success)
    throw NumericalFailure("fem eigensolver: factorization failed");

  // Deterministic start block.
  Eigen::MatrixXd X(n, m);
  std::uint64_t state = 0x2545f4914f6cdd1dull;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      X(i, j) = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
    }

  std::vector<double> prev(static_cast<std::size_t>(k),
                           std::numeric_limits<double>::infinity());
  int stable = 0;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    const Eigen::MatrixXd Y = ldlt.solve(M * X);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
    const Eigen::MatrixXd Q =
        qr.householderQ() * Eigen::MatrixXd::Identity(n, m);
    const Eigen::MatrixXd Kr = Q.transpose() * (K * Q).eval();
    const Eigen::MatrixXd Mr = Q.transpose() * (M * Q).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> rr(Kr, Mr);
    if (rr.info() != Eigen::Success)
      throw NumericalFailure("fem eigensolver: Rayleigh-Ritz solve failed");
    X = Q * rr.eigenvectors();

    const double scale =
        std::max(std::abs(rr.eigenvalues()(k - 1)), 1e-30);
    double change = 0.0;
    for (int i = 0; i < k; ++i) {
      const double v = rr.eigenvalues()(i);
      change = std::max(change, std::abs(v - prev[static_cast<std::size_t>(i)]) /
                                    std::max(std::abs(v), scale));
      prev[static_cast<std::size_t>(i)] = v;
    }
    stable = change < options.tol ? stable + 1 : 0;
    if (stable >= 2) {
      std::vector<double> out(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) out[static_cast<std::size_t>(i)] =
          rr.eigenvalues()(i);
      return out;
    }
  }
  throw NumericalFailure("fem eigensolver: shift-invert iteration did not converge");
}

std::string bc_name(FemBC bc) {
  switch (bc) {
    case FemBC::Dirichlet: return "dirichlet";
    case FemBC::Neumann: return "neumann";
    case FemBC::Zaremba: return "zaremba";
  }
  return "?";
}

}  // namespace

std::vector<double> solve_generalized(const AssembledSystem& sys, int k, FemBC bc,
                                      const SolveOptions& options) {
  const int nfree = static_cast<int>(sys.free_dofs.size());
  if (k < 1) throw ValidationError("solve_generalized: k must be >= 1");
  if (k > nfree / 5)
    throw ValidationError("solve_generalized: k exceeds free-dof count / 5");
  const Eigen::SparseMatrix<double> K = restrict_to(sys.stiffness, sys.free_dofs);
  const Eigen::SparseMatrix<double> M = restrict_to(sys.mass, sys.free_dofs);
  if (nfree <= options.dense_threshold) return dense_eigs(K, M, k);
  const double shift = bc == FemBC::Neumann ? -1.0 : 0.0;
  return sparse_eigs(K, M, k, shift, options);
}

cuboid::Spectrum solve_eigs_mesh(const Mesh& mesh, FemBC bc, int k,
                                 const SolveOptions& options) {
  const AssembledSystem sys = assemble(mesh, bc);
  cuboid::Spectrum spec;
  spec.values = solve_generalized(sys, k, bc, options);
  spec.bc_descriptor = bc_name(bc);
  spec.source = cuboid::SpectrumSource::Fem;
  spec.mesh_h = mesh.h;
  return spec;
}

cuboid::Spectrum solve_eigs(const geom::ConvexPolygon& poly, FemBC bc, int k,
                            double h, const SolveOptions& options) {
  return solve_eigs_mesh(triangulate(poly, h, bc), bc, k, options);
}

cuboid::Spectrum solve_eigs(const geom::ProfileDomain& dom, FemBC bc, int k,
                            double h, const SolveOptions& options) {
  return solve_eigs_mesh(triangulate(dom, h, bc), bc, k, options);
}

RichardsonResult refine_extrapolate(const FemDomain& domain, FemBC bc, int k,
                                    std::vector<double> h_list,
                                    const SolveOptions& options) {
  if (h_list.size() < 3)
    throw ValidationError("refine_extrapolate: need at least 3 mesh sizes");
  std::sort(h_list.begin(), h_list.end(), std::greater<>());
  const double r0 = h_list[0] / h_list[1];
  for (std::size_t i = 0; i + 1 < h_list.size(); ++i) {
    const double r = h_list[i] / h_list[i + 1];
    if (!(r > 1.0) || std::abs(r - r0) > 0.1 * r0)
      throw ValidationError("refine_extrapolate: h ladder must be geometric");
  }

  RichardsonResult result;
  result.h_list = h_list;
  for (double h : h_list) {
    const auto spec = std::visit(
        [&](const auto& dom) { return solve_eigs(dom, bc, k, h, options); },
        domain);
    result.raw.push_back(spec.values);
  }

  const std::size_t last = h_list.size() - 1;
  const double r = h_list[last - 1] / h_list[last];
  for (int j = 0; j < k; ++j) {
    const double l1 = result.raw[last - 2][static_cast<std::size_t>(j)];
    const double l2 = result.raw[last - 1][static_cast<std::size_t>(j)];
    const double l3 = result.raw[last][static_cast<std::size_t>(j)];
    const double d12 = l1 - l2;
    const double d23 = l2 - l3;
    if (d12 > 0.0 && d23 > 0.0) {
      const double p = std::log(d12 / d23) / std::log(r);
      result.observed_order.push_back(p);
      result.extrapolated.push_back(l3 - d23 / (std::pow(r, p) - 1.0));
      if (p < 1.5) result.suspect = true;
    } else {
      // Differences at rounding level; the finest value is the best guess.
      result.observed_order.push_back(std::numeric_limits<double>::quiet_NaN());
      result.extrapolated.push_back(l3);
    }
  }
  return result;
}

}  // namespace spectra::fem
