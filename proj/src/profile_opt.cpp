#include <algorithm>
#include <cmath>
#include <random>

#include "spectra/errors.hpp"
#include "spectra/shape_opt.hpp"

namespace spectra::opt {

namespace {

// Nondecreasing pool-adjacent-violators fit (equal weights).
std::vector<double> pav_nondecreasing(const std::vector<double>& y) {
  std::vector<double> sum, cnt;
  for (double v : y) {
    sum.push_back(v);
    cnt.push_back(1.0);
    while (sum.size() >= 2) {
      const std::size_t n = sum.size();
      if (sum[n - 2] / cnt[n - 2] <= sum[n - 1] / cnt[n - 1]) break;
      sum[n - 2] += sum[n - 1];
      cnt[n - 2] += cnt[n - 1];
      sum.pop_back();
      cnt.pop_back();
    }
  }
  std::vector<double> out;
  out.reserve(y.size());
  for (std::size_t b = 0; b < sum.size(); ++b)
    out.insert(out.end(), static_cast<std::size_t>(cnt[b]), sum[b] / cnt[b]);
  return out;
}

std::vector<double> pav_nonincreasing(std::vector<double> y) {
  for (double& v : y) v = -v;
  auto out = pav_nondecreasing(y);
  for (double& v : out) v = -v;
  return out;
}

// Projects a slope vector onto {monotone} x {|s| <= L} x {mean = 0}:
// monotone fit, then a scalar shift chosen so the clipped vector has zero
// mean (clipping a shifted monotone vector stays monotone).
std::vector<double> project_slopes(std::vector<double> s, double L,
                                   bool nonincreasing) {
  s = nonincreasing ? pav_nonincreasing(s) : pav_nondecreasing(s);
  auto clipped_mean = [&](double t) {
    double acc = 0.0;
    for (double v : s) acc += std::clamp(v - t, -L, L);
    return acc / static_cast<double>(s.size());
  };
  double lo = -2.0 * L, hi = 2.0 * L;
  for (double v : s) {
    lo = std::min(lo, v - 2.0 * L);
    hi = std::max(hi, v + 2.0 * L);
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (clipped_mean(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double t = 0.5 * (lo + hi);
  for (double& v : s) v = std::clamp(v - t, -L, L);
  return s;
}

// Feasible iterate of the profile solvers: uniform grid of m segments over
// [0, w], interior heights for both profiles, endpoints pinned at 0.
struct ProfileState {
  double w = 0.4;
  std::vector<double> hp;  // size m+1, hp[0] = hp[m] = 0
  std::vector<double> hm;

  int m() const { return static_cast<int>(hp.size()) - 1; }

  double area() const {
    const double dx = w / m();
    double a = 0.0;
    for (int i = 1; i < m(); ++i)
      a += hp[static_cast<std::size_t>(i)] - hm[static_cast<std::size_t>(i)];
    return a * dx;
  }

  double perimeter() const {
    const double dx = w / m();
    double p = 0.0;
    for (int i = 0; i < m(); ++i) {
      p += std::hypot(dx, hp[static_cast<std::size_t>(i) + 1] - hp[static_cast<std::size_t>(i)]);
      p += std::hypot(dx, hm[static_cast<std::size_t>(i) + 1] - hm[static_cast<std::size_t>(i)]);
    }
    return p;
  }

  void rescale(double t) {
    w *= t;
    for (double& v : hp) v *= t;
    for (double& v : hm) v *= t;
  }

  geom::ProfileDomain domain(double L) const {
    std::vector<double> xs(hp.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      xs[i] = w * static_cast<double>(i) / m();
    return geom::ProfileDomain(xs, hp, hm, L);
  }
};

void project_state(ProfileState& s, double L) {
  const int m = s.m();
  s.w = std::max(s.w, 1e-3);
  const double dx = s.w / m;
  auto to_slopes = [&](const std::vector<double>& h) {
    std::vector<double> sl(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
      sl[static_cast<std::size_t>(i)] =
          (h[static_cast<std::size_t>(i) + 1] - h[static_cast<std::size_t>(i)]) / dx;
    return sl;
  };
  auto to_heights = [&](const std::vector<double>& sl) {
    std::vector<double> h(static_cast<std::size_t>(m) + 1, 0.0);
    for (int i = 0; i < m; ++i)
      h[static_cast<std::size_t>(i) + 1] =
          h[static_cast<std::size_t>(i)] + sl[static_cast<std::size_t>(i)] * dx;
    const double closure = h.back();  // ~1e-16 after the mean-zero projection
    for (int i = 0; i <= m; ++i)
      h[static_cast<std::size_t>(i)] -= closure * static_cast<double>(i) / m;
    return h;
  };
  s.hp = to_heights(project_slopes(to_slopes(s.hp), L, /*nonincreasing=*/true));
  s.hm = to_heights(project_slopes(to_slopes(s.hm), L, /*nonincreasing=*/false));
}

// Two circular arcs through common chord endpoints with tip slope tan(theta).
ProfileState arc_lens_state(double L, int m) {
  const double theta = std::min(std::atan(L), 0.999 * geom::kPi / 2.0);
  const double R = 1.0 / (4.0 * theta);  // two arcs of length 2 R theta each
  const double w = 2.0 * R * std::sin(theta);
  ProfileState s;
  s.w = w;
  s.hp.assign(static_cast<std::size_t>(m) + 1, 0.0);
  s.hm.assign(static_cast<std::size_t>(m) + 1, 0.0);
  for (int i = 1; i < m; ++i) {
    const double x = w * static_cast<double>(i) / m - 0.5 * w;
    const double y = std::sqrt(std::max(R * R - x * x, 0.0)) - R * std::cos(theta);
    s.hp[static_cast<std::size_t>(i)] = y;
    s.hm[static_cast<std::size_t>(i)] = -y;
  }
  project_state(s, L);
  s.rescale(1.0 / s.perimeter());
  return s;
}

ProfileState resample_state(const geom::ProfileDomain& dom, int m) {
  ProfileState s;
  s.w = dom.width();
  s.hp.assign(static_cast<std::size_t>(m) + 1, 0.0);
  s.hm.assign(static_cast<std::size_t>(m) + 1, 0.0);
  auto interp = [&](const std::vector<double>& h, double x) {
    const auto& xs = dom.xs();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t j = static_cast<std::size_t>(
        std::clamp<std::ptrdiff_t>(it - xs.begin() - 1, 0,
                                   static_cast<std::ptrdiff_t>(xs.size()) - 2));
    const double t = (x - xs[j]) / (xs[j + 1] - xs[j]);
    return h[j] + t * (h[j + 1] - h[j]);
  };
  const double x0 = dom.xs().front();
  for (int i = 1; i < m; ++i) {
    const double x = x0 + s.w * static_cast<double>(i) / m;
    s.hp[static_cast<std::size_t>(i)] = interp(dom.h_plus(), x);
    s.hm[static_cast<std::size_t>(i)] = interp(dom.h_minus(), x);
  }
  return s;
}

}  // namespace

OptimizationResult isoperimetric_profile(double L, int m,
                                         const ProfileOptOptions& options,
                                         const geom::ProfileDomain* warm_start) {
  if (!(L > 0.0)) throw ValidationError("isoperimetric_profile: L must be positive");
  if (m < 16) throw ValidationError("isoperimetric_profile: m must be >= 16");

  std::vector<ProfileState> starts;
  starts.push_back(arc_lens_state(L, m));
  if (warm_start != nullptr) {
    ProfileState s = resample_state(*warm_start, m);
    project_state(s, L);
    s.rescale(1.0 / s.perimeter());
    starts.push_back(s);
  }

  auto score = [](const ProfileState& s) {
    const double p = s.perimeter();
    return s.area() / (p * p);
  };

  ProfileState best = starts.front();
  double best_f = score(best);
  for (const auto& s : starts)
    if (score(s) > best_f) {
      best = s;
      best_f = score(s);
    }

  std::vector<TracePoint> trace;
  OptStatus status = OptStatus::Converged;

  for (std::size_t si = 0; si < starts.size(); ++si) {
    ProfileState state = starts[si];
    double f = score(state);
    double eta = options.initial_step;
    int stall = 0;
    int iter = 0;
    for (; iter < options.max_iter; ++iter) {
      const int mm = state.m();
      const double dx = state.w / mm;
      const double area = state.area();
      const double perim = state.perimeter();

      // d(area), d(perimeter) w.r.t. interior heights and the width.
      std::vector<double> gp(static_cast<std::size_t>(mm) + 1, 0.0);
      std::vector<double> gm(static_cast<std::size_t>(mm) + 1, 0.0);
      double gw_area = area / state.w;
      double gw_perim = 0.0;
      std::vector<double> lp(static_cast<std::size_t>(mm)), lm(static_cast<std::size_t>(mm));
      for (int i = 0; i < mm; ++i) {
        lp[static_cast<std::size_t>(i)] = std::hypot(
            dx, state.hp[static_cast<std::size_t>(i) + 1] - state.hp[static_cast<std::size_t>(i)]);
        lm[static_cast<std::size_t>(i)] = std::hypot(
            dx, state.hm[static_cast<std::size_t>(i) + 1] - state.hm[static_cast<std::size_t>(i)]);
        gw_perim += (dx / lp[static_cast<std::size_t>(i)] + dx / lm[static_cast<std::size_t>(i)]) / mm;
      }
      for (int i = 1; i < mm; ++i) {
        const double sp_l = state.hp[static_cast<std::size_t>(i)] -
                            state.hp[static_cast<std::size_t>(i) - 1];
        const double sp_r = state.hp[static_cast<std::size_t>(i) + 1] -
                            state.hp[static_cast<std::size_t>(i)];
        const double sm_l = state.hm[static_cast<std::size_t>(i)] -
                            state.hm[static_cast<std::size_t>(i) - 1];
        const double sm_r = state.hm[static_cast<std::size_t>(i) + 1] -
                            state.hm[static_cast<std::size_t>(i)];
        const double dP_dhp = sp_l / lp[static_cast<std::size_t>(i) - 1] -
                              sp_r / lp[static_cast<std::size_t>(i)];
        const double dP_dhm = sm_l / lm[static_cast<std::size_t>(i) - 1] -
                              sm_r / lm[static_cast<std::size_t>(i)];
        // F = A / P^2: dF = dA / P^2 - 2 A dP / P^3.
        gp[static_cast<std::size_t>(i)] =
            dx / (perim * perim) - 2.0 * area * dP_dhp / (perim * perim * perim);
        gm[static_cast<std::size_t>(i)] =
            -dx / (perim * perim) - 2.0 * area * dP_dhm / (perim * perim * perim);
      }
      const double gw = gw_area / (perim * perim) -
                        2.0 * area * gw_perim / (perim * perim * perim);

      bool improved = false;
      for (int bt = 0; bt < 40; ++bt) {
        ProfileState cand = state;
        cand.w += eta * gw;
        for (int i = 1; i < mm; ++i) {
          cand.hp[static_cast<std::size_t>(i)] += eta * gp[static_cast<std::size_t>(i)];
          cand.hm[static_cast<std::size_t>(i)] += eta * gm[static_cast<std::size_t>(i)];
        }
        project_state(cand, L);
        const double fc = score(cand);
        if (fc > f) {
          cand.rescale(1.0 / cand.perimeter());
          state = std::move(cand);
          f = fc;
          improved = true;
          eta *= 1.2;
          break;
        }
        eta *= 0.5;
        if (eta < 1e-15) break;
      }
      if (f > best_f) {
        best_f = f;
        best = state;
        trace.push_back({iter, f, std::abs(state.perimeter() - 1.0)});
        stall = 0;
      } else if (++stall > options.patience) {
        break;
      }
      if (!improved && eta < 1e-15) break;
    }
    if (iter >= options.max_iter) status = OptStatus::IterLimit;
  }

  // Final polish: Steiner symmetrization preserves area and cannot increase
  // perimeter, then renormalize exactly.
  best.rescale(1.0 / best.perimeter());
  geom::ProfileDomain dom = best.domain(L).steiner_symmetrized();
  dom = dom.scaled(1.0 / dom.perimeter());

  OptimizationResult result;
  result.shape = dom;
  result.objective = dom.area();
  result.k = 0;
  result.constraint = Constraint::Perimeter;
  result.trace = std::move(trace);
  result.status = status;
  return result;
}

// ---------------------------------------------------------------------------
// Zaremba eigenvalue minimization over profile domains (FEM objective).

namespace {

double zaremba_objective(const ProfileState& state, double L, std::int64_t k,
                         const ZarembaProfileOptions& options,
                         std::vector<TracePoint>* trace, int* evals) {
  ProfileState s = state;
  s.rescale(1.0 / s.perimeter());
  const geom::ProfileDomain dom = s.domain(L);
  double gap = 0.0;
  for (int i = 1; i < s.m(); ++i)
    gap = std::max(gap, s.hp[static_cast<std::size_t>(i)] - s.hm[static_cast<std::size_t>(i)]);
  double h = std::min(options.mesh_h_rel * gap, dom.diameter() / 4.2);
  fem::SolveOptions solve = options.solve;
  solve.dense_threshold = std::min(solve.dense_threshold, 900);
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      const auto spec =
          fem::solve_eigs(dom, fem::FemBC::Zaremba, static_cast<int>(k), h, solve);
      if (evals != nullptr) ++*evals;
      const double value = spec.values.back();
      if (trace != nullptr)
        trace->push_back({evals != nullptr ? *evals : 0, value,
                          std::abs(dom.perimeter() - 1.0)});
      return value;
    } catch (const ValidationError&) {
      h *= 0.7;  // not enough free dofs for k yet
    }
  }
  throw MeshFailure("optimize_profile_zaremba: could not mesh candidate");
}

}  // namespace

OptimizationResult optimize_profile_zaremba(double L, std::int64_t k, int m,
                                            const ZarembaProfileOptions& options) {
  if (!(L > 0.0)) throw ValidationError("optimize_profile_zaremba: L must be positive");
  if (k < 1) throw ValidationError("optimize_profile_zaremba: k must be >= 1");
  if (k > 6) throw CostGate("optimize_profile_zaremba: k > 6 exceeds the FEM cost gate");
  if (m < 6) throw ValidationError("optimize_profile_zaremba: m too small");

  std::vector<TracePoint> trace;
  int evals = 0;

  ProfileState state = arc_lens_state(L, m);
  double f = zaremba_objective(state, L, k, options, &trace, &evals);
  ProfileState best = state;
  double best_f = f;

  double eta = 0.05;
  OptStatus status = OptStatus::Converged;
  const int nvar = 2 * (m - 1) + 1;
  for (int iter = 0; iter < options.max_iter; ++iter) {
    // Forward-difference gradient through the projection.
    std::vector<double> grad(static_cast<std::size_t>(nvar), 0.0);
    const double delta = options.fd_step;
    for (int v = 0; v < nvar; ++v) {
      ProfileState pert = state;
      if (v == 0)
        pert.w += delta;
      else if (v <= m - 1)
        pert.hp[static_cast<std::size_t>(v)] += delta;
      else
        pert.hm[static_cast<std::size_t>(v - (m - 1))] += delta;
      project_state(pert, L);
      const double fp = zaremba_objective(pert, L, k, options, &trace, &evals);
      grad[static_cast<std::size_t>(v)] = (fp - f) / delta;
      if (fp < best_f) {
        best_f = fp;
        best = pert;
      }
    }
    double gnorm = 0.0;
    for (double g : grad) gnorm = std::max(gnorm, std::abs(g));
    if (gnorm == 0.0) break;

    bool improved = false;
    for (int bt = 0; bt < 8; ++bt) {
      ProfileState cand = state;
      cand.w -= eta * grad[0] / gnorm;
      for (int i = 1; i < m; ++i) {
        cand.hp[static_cast<std::size_t>(i)] -= eta * grad[static_cast<std::size_t>(i)] / gnorm;
        cand.hm[static_cast<std::size_t>(i)] -=
            eta * grad[static_cast<std::size_t>(i + m - 1)] / gnorm;
      }
      project_state(cand, L);
      double fc;
      try {
        fc = zaremba_objective(cand, L, k, options, &trace, &evals);
      } catch (const MeshFailure&) {
        eta *= 0.5;
        continue;
      }
      if (fc < f) {
        state = std::move(cand);
        f = fc;
        improved = true;
        eta *= 1.3;
        break;
      }
      eta *= 0.5;
    }
    if (f < best_f) {
      best_f = f;
      best = state;
    }
    if (!improved && eta < 1e-10) break;
    if (iter + 1 >= options.max_iter) status = OptStatus::IterLimit;
  }

  best.rescale(1.0 / best.perimeter());
  OptimizationResult result;
  result.shape = best.domain(L);
  result.objective = best_f;
  result.k = k;
  result.constraint = Constraint::Perimeter;
  result.trace = std::move(trace);
  result.status = status;
  return result;
}

std::vector<ZarembaTrendRow> zaremba_isoperimetric_trend(
    double L, const std::vector<std::int64_t>& ks, int m,
    const ZarembaProfileOptions& options) {
  const OptimizationResult iso = isoperimetric_profile(L, std::max(m, 16));
  const auto& iso_dom = std::get<geom::ProfileDomain>(iso.shape);
  const geom::ConvexPolygon iso_poly = iso_dom.boundary_polygon();
  const geom::Vec2 iso_c = iso_poly.centroid();

  std::vector<ZarembaTrendRow> rows;
  for (std::int64_t k : ks) {
    const OptimizationResult r = optimize_profile_zaremba(L, k, m, options);
    const auto& dom = std::get<geom::ProfileDomain>(r.shape);
    const geom::ConvexPolygon poly = dom.boundary_polygon();
    const geom::Vec2 c = poly.centroid();
    const double d = geom::hausdorff_distance(
        poly.translated({-c.x, -c.y}), iso_poly.translated({-iso_c.x, -iso_c.y}));
    rows.push_back({k, d, r.objective});
  }
  return rows;
}

}  // namespace spectra::opt
