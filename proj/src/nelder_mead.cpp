#include "spectra/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spectra/errors.hpp"

namespace spectra::opt {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

Simplex make_simplex(const std::function<double(const std::vector<double>&)>& fn,
                     const std::vector<double>& x0, double step) {
  const std::size_t n = x0.size();
  Simplex s;
  s.x.assign(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) s.x[i + 1][i] += step;
  s.f.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s.f[i] = fn(s.x[i]);
  return s;
}

void sort_simplex(Simplex& s) {
  std::vector<std::size_t> idx(s.f.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return s.f[a] < s.f[b]; });
  Simplex t;
  t.x.reserve(s.x.size());
  t.f.reserve(s.f.size());
  for (std::size_t i : idx) {
    t.x.push_back(std::move(s.x[i]));
    t.f.push_back(s.f[i]);
  }
  s = std::move(t);
}

double simplex_extent(const Simplex& s) {
  double ext = 0.0;
  for (std::size_t i = 1; i < s.x.size(); ++i)
    for (std::size_t j = 0; j < s.x[i].size(); ++j)
      ext = std::max(ext, std::abs(s.x[i][j] - s.x[0][j]));
  return ext;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                             std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw ValidationError("nelder_mead: empty parameter vector");

  NelderMeadResult best;
  best.x = x0;
  best.value = fn(x0);

  double step = options.initial_step;
  int total_iter = 0;
  for (int restart = 0; restart <= options.restarts; ++restart) {
    Simplex s = make_simplex(fn, best.x, step);
    for (int iter = 0; iter < options.max_iter; ++iter, ++total_iter) {
      sort_simplex(s);
      if (s.f[0] < best.value) {
        best.value = s.f[0];
        best.x = s.x[0];
      }
      if (s.f[n] - s.f[0] <= options.f_tol * (std::abs(s.f[0]) + 1e-30) ||
          simplex_extent(s) <= options.x_tol) {
        best.converged = true;
        break;
      }

      std::vector<double> centroid(n, 0.0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += s.x[i][j] / n;

      auto blend = [&](double t) {
        std::vector<double> p(n);
        for (std::size_t j = 0; j < n; ++j)
          p[j] = centroid[j] + t * (s.x[n][j] - centroid[j]);
        return p;
      };

      const auto xr = blend(-1.0);
      const double fr = fn(xr);
      if (fr < s.f[0]) {
        const auto xe = blend(-2.0);
        const double fe = fn(xe);
        if (fe < fr) {
          s.x[n] = xe;
          s.f[n] = fe;
        } else {
          s.x[n] = xr;
          s.f[n] = fr;
        }
      } else if (fr < s.f[n - 1]) {
        s.x[n] = xr;
        s.f[n] = fr;
      } else {
        const auto xc = blend(fr < s.f[n] ? -0.5 : 0.5);
        const double fc = fn(xc);
        if (fc < std::min(fr, s.f[n])) {
          s.x[n] = xc;
          s.f[n] = fc;
        } else {
          for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j)
              s.x[i][j] = 0.5 * (s.x[i][j] + s.x[0][j]);
            s.f[i] = fn(s.x[i]);
          }
        }
      }
    }
    sort_simplex(s);
    if (s.f[0] < best.value) {
      best.value = s.f[0];
      best.x = s.x[0];
    }
    step *= 0.25;  // restart with a tighter simplex around the incumbent
  }
  best.iterations = total_iter;
  return best;
}

double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

double scan_then_golden(const std::function<double(double)>& f, double a,
                        double b, int grid, double tol) {
  if (grid < 3) throw ValidationError("scan_then_golden: grid too small");
  std::vector<double> xs(static_cast<std::size_t>(grid));
  std::vector<double> fs(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) {
    xs[static_cast<std::size_t>(i)] = a + (b - a) * i / (grid - 1);
    fs[static_cast<std::size_t>(i)] = f(xs[static_cast<std::size_t>(i)]);
  }
  double best_x = xs[0];
  double best_f = fs[0];
  for (int i = 0; i < grid; ++i) {
    const bool local_min =
        (i == 0 || fs[static_cast<std::size_t>(i)] <= fs[static_cast<std::size_t>(i - 1)]) &&
        (i == grid - 1 || fs[static_cast<std::size_t>(i)] <= fs[static_cast<std::size_t>(i + 1)]);
    if (!local_min) continue;
    const double lo = xs[static_cast<std::size_t>(std::max(0, i - 1))];
    const double hi = xs[static_cast<std::size_t>(std::min(grid - 1, i + 1))];
    const double x = golden_section(f, lo, hi, tol);
    const double v = f(x);
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace spectra::opt
