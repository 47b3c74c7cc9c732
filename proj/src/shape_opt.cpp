#include "spectra/shape_opt.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spectra/cuboid_spectra.hpp"
#include "spectra/errors.hpp"
#include "spectra/nelder_mead.hpp"

namespace spectra::opt {

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::Volume: return "volume";
    case Constraint::Perimeter: return "perimeter";
    case Constraint::Diameter: return "diameter";
  }
  return "?";
}

std::string to_string(OptStatus s) {
  switch (s) {
    case OptStatus::Converged: return "converged";
    case OptStatus::IterLimit: return "iter_limit";
    case OptStatus::Degenerating: return "degenerating";
  }
  return "?";
}

geom::Cuboid constrained_cuboid(const std::vector<double>& sides,
                                const geom::Signature& sig, Constraint c) {
  geom::Cuboid raw = geom::Cuboid::from_signature(sides, sig);
  double t = 1.0;
  const int d = raw.dim();
  switch (c) {
    case Constraint::Volume:
      t = std::pow(raw.volume(), -1.0 / d);
      break;
    case Constraint::Perimeter:
      t = std::pow(raw.surface(), -1.0 / (d - 1));
      break;
    case Constraint::Diameter:
      t = 1.0 / raw.diameter();
      break;
  }
  return raw.scaled(t);
}

namespace {

double constraint_value(const geom::Cuboid& box, Constraint c) {
  switch (c) {
    case Constraint::Volume: return box.volume();
    case Constraint::Perimeter: return box.surface();
    case Constraint::Diameter: return box.diameter();
  }
  return 0.0;
}

struct CuboidObjective {
  geom::Signature sig;
  std::int64_t k;
  Constraint c;
  int d;
  mutable std::vector<TracePoint> trace;
  mutable double best = std::numeric_limits<double>::infinity();
  mutable std::vector<double> best_sides;
  mutable int evals = 0;

  double operator()(const std::vector<double>& x) const {
    std::vector<double> sides(static_cast<std::size_t>(d), 1.0);
    for (int j = 0; j + 1 < d; ++j) {
      const double lx = std::clamp(x[static_cast<std::size_t>(j)], -60.0, 60.0);
      sides[static_cast<std::size_t>(j)] = std::exp(lx);
    }
    const geom::Cuboid box = constrained_cuboid(sides, sig, c);
    const double value = cuboid::kth_eigenvalue(box, k);
    ++evals;
    if (value < best) {
      best = value;
      best_sides = box.sides();
      trace.push_back({evals, value,
                       std::abs(constraint_value(box, c) - 1.0)});
    }
    return value;
  }
};

}  // namespace

double cuboid_aspect_objective(const geom::Signature& sig, std::int64_t k,
                               Constraint c, double aspect) {
  if (!(aspect > 0.0) || !std::isfinite(aspect))
    throw ValidationError("cuboid_aspect_objective: aspect must be positive");
  const geom::Cuboid box = constrained_cuboid({aspect, 1.0}, sig, c);
  return cuboid::kth_eigenvalue(box, k);
}

double cuboid_aspect_sweep(const geom::Signature& sig, std::int64_t k,
                           Constraint c, double resolution) {
  if (sig.dim() != 2) throw ValidationError("cuboid_aspect_sweep: d must be 2");
  // Sweep log-aspect over both orderings (the signature axes need not be
  // symmetric); eigenvalue crossings make this piecewise smooth, so refine
  // every grid-local minimum.
  auto f = [&](double la) {
    return cuboid_aspect_objective(sig, k, c, std::exp(la));
  };
  const double hi = std::log(1e4);
  const double la = scan_then_golden(f, -hi, hi, 4000, resolution * 0.5);
  return std::exp(la);
}

OptimizationResult optimize_cuboid(const geom::Signature& sig, std::int64_t k,
                                   Constraint c, int d,
                                   const CuboidOptOptions& options) {
  if (sig.dim() != d) throw ValidationError("optimize_cuboid: signature/d mismatch");
  if (d < 2) throw ValidationError("optimize_cuboid: d must be >= 2");
  if (k < 1) throw ValidationError("optimize_cuboid: k must be >= 1");

  CuboidObjective obj{sig, k, c, d, {}, std::numeric_limits<double>::infinity(), {}, 0};
  auto fn = [&obj](const std::vector<double>& x) { return obj(x); };

  NelderMeadOptions nm;
  nm.max_iter = options.max_iter;
  nm.initial_step = 0.5;

  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> offset(-1.5, 1.5);

  std::vector<std::vector<double>> starts;
  starts.emplace_back(static_cast<std::size_t>(d - 1), 0.0);
  for (int s = 1; s < options.starts; ++s) {
    std::vector<double> x0(static_cast<std::size_t>(d - 1));
    for (double& v : x0) v = offset(rng);
    starts.push_back(std::move(x0));
  }
  // Axis-extreme seeds reach degeneration valleys hidden behind barriers
  // (ill-posed regimes must be detected, not merely stumbled upon).
  for (int j = 0; j + 1 < d; ++j) {
    for (double v : {-4.0, 4.0}) {
      std::vector<double> x0(static_cast<std::size_t>(d - 1), 0.0);
      x0[static_cast<std::size_t>(j)] = v;
      starts.push_back(std::move(x0));
    }
  }
  starts.emplace_back(static_cast<std::size_t>(d - 1), -4.0);
  starts.emplace_back(static_cast<std::size_t>(d - 1), 4.0);
  for (const auto& sides : options.extra_starts) {
    if (static_cast<int>(sides.size()) != d)
      throw ValidationError("optimize_cuboid: extra start has wrong dimension");
    std::vector<double> x0(static_cast<std::size_t>(d - 1));
    for (int j = 0; j + 1 < d; ++j)
      x0[static_cast<std::size_t>(j)] =
          std::log(sides[static_cast<std::size_t>(j)] / sides.back());
    starts.push_back(std::move(x0));
  }

  bool nm_converged = false;
  for (const auto& x0 : starts) {
    const NelderMeadResult r = nelder_mead(fn, x0, nm);
    if (r.value <= obj.best + 1e-300) nm_converged = r.converged;
  }

  // d = 2 cross-check: one-dimensional sweep over the aspect ratio.
  if (d == 2) {
    const double aspect = cuboid_aspect_sweep(sig, k, c, options.sweep_resolution);
    const double value = cuboid_aspect_objective(sig, k, c, aspect);
    ++obj.evals;
    if (value < obj.best) {
      obj.best = value;
      obj.best_sides = constrained_cuboid({aspect, 1.0}, sig, c).sides();
      obj.trace.push_back({obj.evals, value, 0.0});
      nm_converged = true;
    }
  }

  const geom::Cuboid shape = geom::Cuboid::from_signature(obj.best_sides, sig);

  OptimizationResult result;
  result.shape = shape;
  result.objective = obj.best;
  result.k = k;
  result.constraint = c;
  result.trace = std::move(obj.trace);

  const auto [mn, mx] =
      std::minmax_element(obj.best_sides.begin(), obj.best_sides.end());
  const bool still_improving =
      result.trace.size() >= 2 &&
      result.trace.back().objective <
          0.999 * result.trace[result.trace.size() - 2].objective;
  if (*mn < options.degeneracy_ratio * *mx && (still_improving || obj.best == 0.0 ||
                                               result.trace.size() >= 4))
    result.status = OptStatus::Degenerating;
  else
    result.status = nm_converged ? OptStatus::Converged : OptStatus::IterLimit;
  return result;
}

std::vector<TrajectoryRow> minimizer_trajectory(const geom::Signature& sig,
                                                Constraint c,
                                                const std::vector<std::int64_t>& ks,
                                                int d,
                                                const CuboidOptOptions& options) {
  for (std::size_t i = 0; i + 1 < ks.size(); ++i)
    if (ks[i] >= ks[i + 1])
      throw ValidationError("minimizer_trajectory: k list must be increasing");
  std::vector<TrajectoryRow> rows;
  for (std::int64_t k : ks) {
    const OptimizationResult r = optimize_cuboid(sig, k, c, d, options);
    const auto& box = std::get<geom::Cuboid>(r.shape);
    const auto [mn, mx] = std::minmax_element(box.sides().begin(), box.sides().end());
    rows.push_back({k, r.objective, *mx / *mn, r.status, box.sides()});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Polygon optimizer

namespace {

struct PolygonCandidate {
  bool valid = false;
  geom::ConvexPolygon polygon = geom::ConvexPolygon(
      {{0.0, 0.0}, {1.0, 0.0}, {0.5, 1.0}});
  double violation = 0.0;
};

// Vertices mod similarity: v0 = (0,0), v1 = (1,0) fixed, the rest free.
PolygonCandidate build_polygon(int n, const std::vector<double>& x) {
  PolygonCandidate cand;
  std::vector<geom::Vec2> pts;
  pts.push_back({0.0, 0.0});
  pts.push_back({1.0, 0.0});
  for (std::size_t j = 0; j + 1 < x.size(); j += 2)
    pts.push_back({x[j], x[j + 1]});
  if (static_cast<int>(pts.size()) != n) {
    cand.violation = 1.0;
    return cand;
  }
  double violation = 0.0;
  const std::size_t nn = pts.size();
  for (std::size_t i = 0; i < nn; ++i) {
    const geom::Vec2 a = pts[i];
    const geom::Vec2 b = pts[(i + 1) % nn];
    const geom::Vec2 c = pts[(i + 2) % nn];
    const double cr = geom::cross(b - a, c - b);
    if (cr <= 0.0) violation += 1.0 - cr;
  }
  cand.violation = violation;
  if (violation > 0.0) return cand;
  try {
    cand.polygon = geom::ConvexPolygon(pts);
    cand.valid = true;
  } catch (const ValidationError&) {
    cand.violation = 1.0;
  }
  return cand;
}

}  // namespace

OptimizationResult optimize_polygon(int n, fem::FemBC bc, int k,
                                    const PolygonOptOptions& options) {
  if (n < 3 || n > 8) throw ValidationError("optimize_polygon: n must be in [3,8]");
  if (bc == fem::FemBC::Zaremba)
    throw ValidationError("optimize_polygon: Dirichlet or Neumann only");
  if (k < 1) throw ValidationError("optimize_polygon: k must be >= 1");
  if (k > 12) throw CostGate("optimize_polygon: k > 12 exceeds the FEM cost gate");

  std::vector<TracePoint> trace;
  double best = std::numeric_limits<double>::infinity();
  PolygonCandidate best_cand;
  int evals = 0;

  auto objective = [&](const std::vector<double>& x) {
    PolygonCandidate cand = build_polygon(n, x);
    ++evals;
    if (!cand.valid) return 1e8 * (1.0 + cand.violation);
    // Normalize to unit perimeter; eigenvalues scale exactly.
    const geom::ConvexPolygon poly =
        cand.polygon.scaled(1.0 / cand.polygon.perimeter());
    // Mesh size from the P1 error model err_rel ~ 0.05 h^2 lambda.
    const double lambda_est =
        (k + 1) * 4.0 * geom::kPi / poly.area() *
        (bc == fem::FemBC::Dirichlet ? 1.3 : 1.0);
    double h = std::sqrt(options.target_rel_err / (0.05 * lambda_est));
    h = std::min(h, poly.diameter() / 4.2);
    fem::SolveOptions solve = options.solve;
    solve.dense_threshold = std::min(solve.dense_threshold, 700);
    double value;
    try {
      const auto spec = fem::solve_eigs(poly, bc, k, h, solve);
      value = spec.values.back();
    } catch (const MeshFailure&) {
      return 5e7;  // unmeshable candidate, steer away
    }
    if (value < best) {
      best = value;
      best_cand = cand;
      best_cand.polygon = poly;
      trace.push_back({evals, value, std::abs(poly.perimeter() - 1.0)});
    }
    return value;
  };

  // Regular n-gon seed plus seeded perturbations.
  std::mt19937 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-0.15, 0.15);

  NelderMeadOptions nm;
  nm.max_iter = options.max_iter;
  nm.initial_step = 0.12;
  nm.restarts = 1;
  nm.f_tol = 1e-7;

  bool converged = false;
  for (int s = 0; s < options.starts; ++s) {
    const geom::ConvexPolygon reg = geom::ConvexPolygon::regular(n, 1.0);
    // Map the regular polygon into the gauge v0=(0,0), v1=(1,0).
    const auto& rv = reg.vertices();
    const geom::Vec2 e = rv[1] - rv[0];
    const double scale = 1.0 / geom::norm(e);
    const double ca = e.x * scale, sa = e.y * scale;
    std::vector<double> x0;
    for (int i = 2; i < n; ++i) {
      const geom::Vec2 d = rv[static_cast<std::size_t>(i)] - rv[0];
      geom::Vec2 p{(ca * d.x + sa * d.y) * scale, (-sa * d.x + ca * d.y) * scale};
      if (s > 0) {
        p.x += jitter(rng);
        p.y += jitter(rng);
      }
      x0.push_back(p.x);
      x0.push_back(p.y);
    }
    const NelderMeadResult r = nelder_mead(objective, x0, nm);
    if (r.value <= best + 1e-300) converged = r.converged;
  }

  if (!best_cand.valid)
    throw NumericalFailure("optimize_polygon: no feasible candidate found");

  OptimizationResult result;
  result.shape = best_cand.polygon;
  result.objective = best;
  result.k = k;
  result.constraint = Constraint::Perimeter;
  result.trace = std::move(trace);
  result.status = converged ? OptStatus::Converged : OptStatus::IterLimit;
  return result;
}

}  // namespace spectra::opt
