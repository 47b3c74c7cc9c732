#pragma once

// Test-only oracles, kept independent of the library code paths they check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "spectra/cuboid_spectra.hpp"
#include "spectra/geometry.hpp"

namespace oracles {

namespace sg = spectra::geom;

// ---------------------------------------------------------------------------
// Brute-force tensor-sum enumeration in the same fixed ascending-axis
// summation order as the production enumerator.

inline void collect_sums(const sg::Cuboid& box, int axis, double partial,
                         double cap, std::vector<double>& out) {
  const auto bc = spectra::cuboid::to_interval_bc(box.axis_bc()[static_cast<std::size_t>(axis)]);
  const double len = box.sides()[static_cast<std::size_t>(axis)];
  for (std::int64_t i = 1;; ++i) {
    const double s = partial + spectra::cuboid::interval_eigenvalue(bc, i, len);
    if (!(s < cap)) break;
    if (axis + 1 == box.dim())
      out.push_back(s);
    else
      collect_sums(box, axis + 1, s, cap, out);
  }
}

inline std::vector<double> brute_force_prefix(const sg::Cuboid& box,
                                              std::int64_t k) {
  double cap = 2.0 * spectra::cuboid::weyl_constant(box.dim()) *
                   std::pow(static_cast<double>(k) + 1.0, 2.0 / box.dim()) *
                   std::pow(box.volume(), -2.0 / box.dim()) +
               100.0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<double> sums;
    collect_sums(box, 0, 0.0, cap, sums);
    if (static_cast<std::int64_t>(sums.size()) >= k) {
      std::sort(sums.begin(), sums.end());
      sums.resize(static_cast<std::size_t>(k));
      return sums;
    }
    cap *= 2.0;
  }
  throw std::runtime_error("brute_force_prefix: cap growth failed");
}

inline std::int64_t brute_force_count(const sg::Cuboid& box, double alpha) {
  std::vector<double> sums;
  collect_sums(box, 0, 0.0, alpha, sums);
  return static_cast<std::int64_t>(sums.size());
}

// ---------------------------------------------------------------------------
// Dense boundary-sampling Hausdorff distance (10^4 points per boundary).

inline std::vector<sg::Vec2> sample_boundary(const sg::ConvexPolygon& poly,
                                             int total) {
  std::vector<sg::Vec2> pts;
  const auto& v = poly.vertices();
  const double per = poly.perimeter();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const sg::Vec2 a = v[i];
    const sg::Vec2 b = v[(i + 1) % v.size()];
    const int n = std::max(1, static_cast<int>(std::round(
                                  total * sg::norm(b - a) / per)));
    for (int j = 0; j < n; ++j) pts.push_back(a + (static_cast<double>(j) / n) * (b - a));
  }
  return pts;
}

inline double sampled_hausdorff(const sg::ConvexPolygon& a,
                                const sg::ConvexPolygon& b, int samples = 10000) {
  auto directed = [&](const sg::ConvexPolygon& from, const sg::ConvexPolygon& to) {
    double worst = 0.0;
    for (const auto& p : sample_boundary(from, samples))
      worst = std::max(worst, to.distance(p));
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

// ---------------------------------------------------------------------------
// Monte-Carlo volume of Omega + delta * Ball for boxes and balls.

inline double mc_inflated_box_volume(const std::vector<double>& sides,
                                     double delta, std::int64_t samples,
                                     unsigned seed) {
  const int d = static_cast<int>(sides.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double bbox = 1.0;
  for (double a : sides) bbox *= a + 2.0 * delta;
  std::int64_t hits = 0;
  std::vector<double> x(static_cast<std::size_t>(d));
  for (std::int64_t s = 0; s < samples; ++s) {
    double dist2 = 0.0;
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] =
          -delta + u(rng) * (sides[static_cast<std::size_t>(j)] + 2.0 * delta);
      const double over = std::max({0.0, -x[static_cast<std::size_t>(j)],
                                    x[static_cast<std::size_t>(j)] -
                                        sides[static_cast<std::size_t>(j)]});
      dist2 += over * over;
    }
    if (dist2 <= delta * delta) ++hits;
  }
  return bbox * static_cast<double>(hits) / static_cast<double>(samples);
}

inline double mc_inflated_ball_volume(double r, int d, double delta,
                                      std::int64_t samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-r - delta, r + delta);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    double n2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double xi = u(rng);
      n2 += xi * xi;
    }
    if (n2 <= (r + delta) * (r + delta)) ++hits;
  }
  const double bbox = std::pow(2.0 * (r + delta), d);
  return bbox * static_cast<double>(hits) / static_cast<double>(samples);
}

// ---------------------------------------------------------------------------
// Circular-arc lens family: two arcs through common chord endpoints, tip
// slope tan(theta) <= L, perimeter 1. Area maximized by golden section.

inline double arc_lens_area(double theta) {
  const double r = 1.0 / (4.0 * theta);
  return r * r * (2.0 * theta - std::sin(2.0 * theta));
}

inline double arc_lens_best_area(double L) {
  const double hi = std::min(std::atan(L), spectra::geom::kPi / 2.0);
  double a = 1e-3, b = hi;
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  double fc = arc_lens_area(c), fd = arc_lens_area(d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d; d = c; fd = fc; c = b - phi * (b - a); fc = arc_lens_area(c);
    } else {
      a = c; c = d; fc = fd; d = a + phi * (b - a); fd = arc_lens_area(d);
    }
  }
  return std::max(fc, fd);
}

// ---------------------------------------------------------------------------
// Deterministic random shapes.

inline sg::Cuboid random_box(std::mt19937& rng, int d, const sg::Signature& sig) {
  std::uniform_real_distribution<double> u(std::log(0.2), std::log(5.0));
  std::vector<double> sides(static_cast<std::size_t>(d));
  for (double& s : sides) s = std::exp(u(rng));
  return sg::Cuboid::from_signature(sides, sig);
}

// Convex hull (Andrew monotone chain) of random points in an annulus; the
// annulus keeps the hulls fat enough to mesh at the 20-degree gate.
inline sg::ConvexPolygon random_convex_polygon(std::mt19937& rng, int points = 10) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * spectra::geom::kPi);
  std::uniform_real_distribution<double> rad(0.55, 1.0);
  std::vector<sg::Vec2> pts;
  for (int i = 0; i < points; ++i) {
    const double t = ang(rng);
    const double r = rad(rng);
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  std::sort(pts.begin(), pts.end(), [](sg::Vec2 a, sg::Vec2 b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  auto half = [&](bool upper) {
    std::vector<sg::Vec2> h;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const sg::Vec2 p = upper ? pts[pts.size() - 1 - i] : pts[i];
      while (h.size() >= 2 &&
             sg::cross(h[h.size() - 1] - h[h.size() - 2], p - h[h.size() - 1]) <= 0.0)
        h.pop_back();
      h.push_back(p);
    }
    h.pop_back();
    return h;
  };
  std::vector<sg::Vec2> hull = half(false);
  const auto upper = half(true);
  hull.insert(hull.end(), upper.begin(), upper.end());
  return sg::ConvexPolygon(hull);
}

// Random profile domain: parabolic-cap profiles with endpoint slopes close
// to +-L (keeps the tip angles meshable), optional shear.
inline sg::ProfileDomain random_profile(std::mt19937& rng, double L, int m = 24) {
  std::uniform_real_distribution<double> u(0.6, 1.0);
  std::uniform_real_distribution<double> shear(-0.15, 0.15);
  const double w = 0.3 + 0.4 * u(rng);
  const double a_up = 0.9 * L * u(rng) / w;
  const double a_dn = 0.9 * L * u(rng) / w;
  const double c = shear(rng) * std::min(1.0, L / 2.0);
  std::vector<double> xs, hp, hm;
  for (int i = 0; i <= m; ++i) {
    const double x = w * i / m;
    xs.push_back(x);
    hp.push_back(a_up * x * (w - x) + c * x);
    hm.push_back(-a_dn * x * (w - x) + c * x);
  }
  return sg::ProfileDomain(xs, hp, hm, L);
}

}  // namespace oracles
