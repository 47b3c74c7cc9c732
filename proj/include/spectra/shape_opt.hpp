#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spectra/fem.hpp"
#include "spectra/geometry.hpp"

namespace spectra::opt {

enum class Constraint { Volume, Perimeter, Diameter };
enum class OptStatus { Converged, IterLimit, Degenerating };

std::string to_string(Constraint c);
std::string to_string(OptStatus s);

struct TracePoint {
  int step = 0;           // objective-evaluation index
  double objective = 0.0;  // best value so far
  double feasibility = 0.0;  // constraint residual of the incumbent
};

struct OptimizationResult {
  geom::Shape shape = geom::Ball{};
  double objective = 0.0;
  std::int64_t k = 0;  // 0 for the isoperimetric problem (objective = area)
  Constraint constraint = Constraint::Perimeter;
  std::vector<TracePoint> trace;
  OptStatus status = OptStatus::Converged;
};

// Scales a positive-side vector onto the constraint manifold (constraint
// value 1) by homothety; eigenvalues transform exactly as t^{-2}.
geom::Cuboid constrained_cuboid(const std::vector<double>& sides,
                                const geom::Signature& sig, Constraint c);

struct CuboidOptOptions {
  int starts = 5;
  int max_iter = 3000;
  unsigned seed = 0;
  double degeneracy_ratio = 1e-4;  // min side / max side
  double sweep_resolution = 1e-6;  // d=2 golden-section cross-check
  std::vector<std::vector<double>> extra_starts;  // side vectors to seed from
};

// Minimize zeta_k^{(a,b,c)} over cuboids of dimension d under the constraint;
// multi-start Nelder-Mead over log side ratios, plus (d = 2) an aspect-ratio
// sweep cross-check. Degeneration is a status, not an error.
OptimizationResult optimize_cuboid(const geom::Signature& sig, std::int64_t k,
                                   Constraint c, int d,
                                   const CuboidOptOptions& options = {});

// d = 2 one-dimensional oracle: optimal aspect ratio (short side / long side,
// in (0,1]) by coarse scan plus golden-section refinement.
double cuboid_aspect_sweep(const geom::Signature& sig, std::int64_t k,
                           Constraint c, double resolution = 1e-6);

// Objective of the 2-d aspect parametrization (constraint already applied).
double cuboid_aspect_objective(const geom::Signature& sig, std::int64_t k,
                               Constraint c, double aspect);

struct TrajectoryRow {
  std::int64_t k = 0;
  double objective = 0.0;
  double spread = 0.0;  // max side / min side
  OptStatus status = OptStatus::Converged;
  std::vector<double> sides;
};

std::vector<TrajectoryRow> minimizer_trajectory(const geom::Signature& sig,
                                                Constraint c,
                                                const std::vector<std::int64_t>& ks,
                                                int d,
                                                const CuboidOptOptions& options = {});

struct PolygonOptOptions {
  int starts = 5;
  int max_iter = 250;
  unsigned seed = 0;
  double target_rel_err = 0.002;  // FEM eigenvalue error target per candidate
  fem::SolveOptions solve;
};

// Minimize lambda_k / mu_k over convex n-gons of unit perimeter (n in [3,8],
// k <= 12); FEM objective, multi-start Nelder-Mead over vertices mod
// similarity.
OptimizationResult optimize_polygon(int n, fem::FemBC bc, int k,
                                    const PolygonOptOptions& options = {});

struct ProfileOptOptions {
  int max_iter = 20000;
  double initial_step = 0.05;
  int patience = 400;   // stagnation window
  double tol = 1e-13;
};

// Maximize area over O_{2,L} profile domains of unit perimeter (projected
// gradient ascent; output Steiner-symmetrized and renormalized).
OptimizationResult isoperimetric_profile(double L, int m,
                                         const ProfileOptOptions& options = {},
                                         const geom::ProfileDomain* warm_start = nullptr);

struct ZarembaProfileOptions {
  int max_iter = 30;
  unsigned seed = 0;
  double mesh_h_rel = 0.12;  // mesh size relative to the domain thickness
  double fd_step = 2e-3;
  fem::SolveOptions solve;
};

// Minimize the FEM Zaremba eigenvalue zeta_k over O_{2,L} profile domains of
// unit perimeter (k <= 6; qualitative, no closed-form oracle).
OptimizationResult optimize_profile_zaremba(double L, std::int64_t k, int m,
                                            const ZarembaProfileOptions& options = {});

struct ZarembaTrendRow {
  std::int64_t k = 0;
  double hausdorff_to_isoperimetric = 0.0;
  double objective = 0.0;
};

// Distances between the zeta_k minimizers and the isoperimetric optimum for
// increasing k; reported as a tolerance-free trend.
std::vector<ZarembaTrendRow> zaremba_isoperimetric_trend(
    double L, const std::vector<std::int64_t>& ks, int m,
    const ZarembaProfileOptions& options = {});

}  // namespace spectra::opt
