#include "spectra/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace spectra::geom {

double unit_ball_volume(int d) {
  if (d < 0) throw ValidationError("unit_ball_volume: negative dimension");
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string to_string(AxisBC bc) {
  switch (bc) {
    case AxisBC::DirichletBoth: return "dirichlet_both";
    case AxisBC::NeumannBoth: return "neumann_both";
    case AxisBC::Mixed: return "mixed";
  }
  return "?";
}

std::string to_string(const Signature& sig) {
  return "(" + std::to_string(sig.a) + "," + std::to_string(sig.b) + "," +
         std::to_string(sig.c) + ")";
}

// ---------------------------------------------------------------------------
// Cuboid

Cuboid::Cuboid(std::vector<double> sides, std::vector<AxisBC> axis_bc)
    : sides_(std::move(sides)), bc_(std::move(axis_bc)) {
  if (sides_.empty()) throw ValidationError("Cuboid: needs at least one axis");
  if (sides_.size() != bc_.size())
    throw ValidationError("Cuboid: sides/axis_bc length mismatch");
  for (double a : sides_)
    if (!(a > 0.0) || !std::isfinite(a))
      throw ValidationError("Cuboid: sides must be positive and finite");
}

Cuboid Cuboid::uniform_bc(std::vector<double> sides, AxisBC bc) {
  std::vector<AxisBC> bcs(sides.size(), bc);
  return Cuboid(std::move(sides), std::move(bcs));
}

Cuboid Cuboid::from_signature(std::vector<double> sides, const Signature& sig) {
  if (sig.a < 0 || sig.b < 0 || sig.c < 0 ||
      sig.dim() != static_cast<int>(sides.size()))
    throw ValidationError("Cuboid: signature does not match dimension");
  std::vector<AxisBC> bcs;
  bcs.insert(bcs.end(), sig.a, AxisBC::DirichletBoth);
  bcs.insert(bcs.end(), sig.b, AxisBC::NeumannBoth);
  bcs.insert(bcs.end(), sig.c, AxisBC::Mixed);
  return Cuboid(std::move(sides), std::move(bcs));
}

Signature Cuboid::signature() const {
  Signature s;
  for (AxisBC bc : bc_) {
    if (bc == AxisBC::DirichletBoth) ++s.a;
    else if (bc == AxisBC::NeumannBoth) ++s.b;
    else ++s.c;
  }
  return s;
}

double Cuboid::volume() const {
  double v = 1.0;
  for (double a : sides_) v *= a;
  return v;
}

double Cuboid::surface() const {
  // 2 * sum_i prod_{j != i} a_j
  double total = 0.0;
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < sides_.size(); ++j)
      if (j != i) p *= sides_[j];
    total += p;
  }
  return 2.0 * total;
}

double Cuboid::diameter() const {
  double s = 0.0;
  for (double a : sides_) s += a * a;
  return std::sqrt(s);
}

Cuboid Cuboid::scaled(double t) const {
  if (!(t > 0.0)) throw ValidationError("Cuboid::scaled: t must be positive");
  std::vector<double> s = sides_;
  for (double& a : s) a *= t;
  return Cuboid(std::move(s), bc_);
}

// ---------------------------------------------------------------------------
// ConvexPolygon

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return norm(p - a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return norm(p - (a + t * ab));
}

namespace {

double raw_diameter(const std::vector<Vec2>& pts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d2 = std::max(d2, dot(pts[i] - pts[j], pts[i] - pts[j]));
  return std::sqrt(d2);
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
  if (v_.size() < 3) throw ValidationError("ConvexPolygon: fewer than 3 vertices");
  const double diam = raw_diameter(v_);
  if (!(diam > 0.0)) throw ValidationError("ConvexPolygon: degenerate vertex set");
  const double tol = 1e-12 * diam;

  // Prune collinear (and repeated) vertices before the convexity check.
  for (bool pruned = true; pruned && v_.size() > 3;) {
    pruned = false;
    for (std::size_t i = 0; i < v_.size() && v_.size() > 3; ++i) {
      const Vec2 prev = v_[(i + v_.size() - 1) % v_.size()];
      const Vec2 next = v_[(i + 1) % v_.size()];
      const Vec2 base = next - prev;
      const double blen = norm(base);
      const double dev = blen > 0.0
                             ? std::abs(cross(base, v_[i] - prev)) / blen
                             : 0.0;
      if (dev <= tol) {
        v_.erase(v_.begin() + static_cast<std::ptrdiff_t>(i));
        pruned = true;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Vec2 a = v_[i];
    const Vec2 b = v_[(i + 1) % v_.size()];
    const Vec2 c = v_[(i + 2) % v_.size()];
    if (cross(b - a, c - b) <= 0.0)
      throw ValidationError(
          "ConvexPolygon: not strictly convex CCW after pruning");
  }
}

ConvexPolygon ConvexPolygon::regular(int n, double circumradius, Vec2 center) {
  if (n < 3 || !(circumradius > 0.0))
    throw ValidationError("ConvexPolygon::regular: bad arguments");
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    pts.push_back({center.x + circumradius * std::cos(t),
                   center.y + circumradius * std::sin(t)});
  }
  return ConvexPolygon(std::move(pts));
}

ConvexPolygon ConvexPolygon::rectangle(double a, double b, Vec2 corner) {
  if (!(a > 0.0) || !(b > 0.0))
    throw ValidationError("ConvexPolygon::rectangle: sides must be positive");
  return ConvexPolygon({{corner.x, corner.y},
                        {corner.x + a, corner.y},
                        {corner.x + a, corner.y + b},
                        {corner.x, corner.y + b}});
}

double ConvexPolygon::area() const {
  double s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Vec2 a = v_[i];
    const Vec2 b = v_[(i + 1) % v_.size()];
    s += cross(a, b);
  }
  return 0.5 * s;
}

double ConvexPolygon::perimeter() const {
  double s = 0.0;
  for (std::size_t i = 0; i < v_.size(); ++i)
    s += norm(v_[(i + 1) % v_.size()] - v_[i]);
  return s;
}

double ConvexPolygon::diameter() const { return raw_diameter(v_); }

Vec2 ConvexPolygon::centroid() const {
  double a6 = 0.0;
  Vec2 c{0.0, 0.0};
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Vec2 p = v_[i];
    const Vec2 q = v_[(i + 1) % v_.size()];
    const double w = cross(p, q);
    a6 += w;
    c.x += (p.x + q.x) * w;
    c.y += (p.y + q.y) * w;
  }
  return {c.x / (3.0 * a6), c.y / (3.0 * a6)};
}

bool ConvexPolygon::contains(Vec2 p) const {
  for (std::size_t i = 0; i < v_.size(); ++i) {
    const Vec2 a = v_[i];
    const Vec2 b = v_[(i + 1) % v_.size()];
    if (cross(b - a, p - a) < 0.0) return false;
  }
  return true;
}

double ConvexPolygon::distance(Vec2 p) const {
  if (contains(p)) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v_.size(); ++i)
    d = std::min(d, point_segment_distance(p, v_[i], v_[(i + 1) % v_.size()]));
  return d;
}

ConvexPolygon ConvexPolygon::scaled(double t) const {
  if (!(t > 0.0)) throw ValidationError("ConvexPolygon::scaled: t must be positive");
  std::vector<Vec2> pts = v_;
  for (Vec2& p : pts) p = t * p;
  return ConvexPolygon(std::move(pts));
}

ConvexPolygon ConvexPolygon::translated(Vec2 d) const {
  std::vector<Vec2> pts = v_;
  for (Vec2& p : pts) p = p + d;
  return ConvexPolygon(std::move(pts));
}

bool polygon_contained(const ConvexPolygon& inner, const ConvexPolygon& outer) {
  return std::all_of(inner.vertices().begin(), inner.vertices().end(),
                     [&](Vec2 p) { return outer.contains(p); });
}

double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b) {
  auto directed = [](const ConvexPolygon& from, const ConvexPolygon& to) {
    double d = 0.0;
    for (Vec2 p : from.vertices()) d = std::max(d, to.distance(p));
    return d;
  };
  return std::max(directed(a, b), directed(b, a));
}

// ---------------------------------------------------------------------------
// ProfileDomain

ProfileDomain::ProfileDomain(std::vector<double> xs, std::vector<double> h_plus,
                             std::vector<double> h_minus, double lipschitz)
    : xs_(std::move(xs)), hp_(std::move(h_plus)), hm_(std::move(h_minus)),
      lip_(lipschitz) {
  const std::size_t m = xs_.size();
  if (m < 2 || hp_.size() != m || hm_.size() != m)
    throw ValidationError("ProfileDomain: grid/profile size mismatch");
  if (!(lip_ > 0.0)) throw ValidationError("ProfileDomain: Lipschitz bound must be positive");
  for (std::size_t i = 0; i + 1 < m; ++i)
    if (!(xs_[i + 1] > xs_[i]))
      throw ValidationError("ProfileDomain: grid must be strictly increasing");

  double scale = std::max(xs_.back() - xs_.front(), 1e-300);
  for (std::size_t i = 0; i < m; ++i)
    scale = std::max({scale, std::abs(hp_[i]), std::abs(hm_[i])});
  const double tol = 1e-9 * scale;

  // Profiles agree on the boundary of the projection interval.
  if (std::abs(hp_.front() - hm_.front()) > tol ||
      std::abs(hp_.back() - hm_.back()) > tol)
    throw ValidationError("ProfileDomain: profiles must agree at the endpoints");
  hm_.front() = hp_.front();
  hm_.back() = hp_.back();

  for (std::size_t i = 1; i + 1 < m; ++i)
    if (!(hp_[i] > hm_[i]))
      throw ValidationError("ProfileDomain: h+ must exceed h- on interior nodes");

  auto slope = [&](const std::vector<double>& h, std::size_t i) {
    return (h[i + 1] - h[i]) / (xs_[i + 1] - xs_[i]);
  };
  const double slope_tol = 1e-9 * (1.0 + lip_);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    if (std::abs(slope(hp_, i)) > lip_ + slope_tol ||
        std::abs(slope(hm_, i)) > lip_ + slope_tol)
      throw ValidationError("ProfileDomain: profile slope exceeds Lipschitz bound");
  }
  // Discrete convexity of the region: h+ concave, h- convex.
  for (std::size_t i = 0; i + 2 < m; ++i) {
    if (slope(hp_, i + 1) > slope(hp_, i) + slope_tol)
      throw ValidationError("ProfileDomain: h+ must be concave");
    if (slope(hm_, i + 1) < slope(hm_, i) - slope_tol)
      throw ValidationError("ProfileDomain: h- must be convex");
  }
}

double ProfileDomain::area() const {
  double a = 0.0;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    const double gap_l = hp_[i] - hm_[i];
    const double gap_r = hp_[i + 1] - hm_[i + 1];
    a += 0.5 * (gap_l + gap_r) * (xs_[i + 1] - xs_[i]);
  }
  return a;
}

double ProfileDomain::upper_length() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
    s += std::hypot(xs_[i + 1] - xs_[i], hp_[i + 1] - hp_[i]);
  return s;
}

double ProfileDomain::lower_length() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i)
    s += std::hypot(xs_[i + 1] - xs_[i], hm_[i + 1] - hm_[i]);
  return s;
}

double ProfileDomain::perimeter() const { return upper_length() + lower_length(); }

double ProfileDomain::diameter() const {
  std::vector<Vec2> pts;
  pts.reserve(2 * xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) pts.push_back({xs_[i], hp_[i]});
  for (std::size_t i = 0; i < xs_.size(); ++i) pts.push_back({xs_[i], hm_[i]});
  return raw_diameter(pts);
}

ProfileDomain ProfileDomain::steiner_symmetrized() const {
  std::vector<double> h(xs_.size());
  for (std::size_t i = 0; i < xs_.size(); ++i) h[i] = 0.5 * (hp_[i] - hm_[i]);
  std::vector<double> neg(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) neg[i] = -h[i];
  return ProfileDomain(xs_, std::move(h), std::move(neg), lip_);
}

ProfileDomain ProfileDomain::scaled(double t) const {
  if (!(t > 0.0)) throw ValidationError("ProfileDomain::scaled: t must be positive");
  std::vector<double> xs = xs_, hp = hp_, hm = hm_;
  for (double& v : xs) v *= t;
  for (double& v : hp) v *= t;
  for (double& v : hm) v *= t;
  return ProfileDomain(std::move(xs), std::move(hp), std::move(hm), lip_);
}

ConvexPolygon ProfileDomain::boundary_polygon() const {
  std::vector<Vec2> pts;
  const std::size_t m = xs_.size();
  for (std::size_t i = 0; i < m; ++i) pts.push_back({xs_[i], hm_[i]});
  for (std::size_t i = m - 1; i-- > 1;) pts.push_back({xs_[i], hp_[i]});
  return ConvexPolygon(std::move(pts));
}

// ---------------------------------------------------------------------------
// Ball and quermassintegrals

double Ball::volume() const { return unit_ball_volume(d) * std::pow(radius, d); }

double Ball::surface() const {
  return d * unit_ball_volume(d) * std::pow(radius, d - 1);
}

QuermassData quermass(const Cuboid& box) {
  const int d = box.dim();
  QuermassData q;
  q.d = d;
  q.volume = box.volume();
  q.surface = box.surface();
  q.omega_d = unit_ball_volume(d);
  if (d >= 3) {
    // Steiner polynomial of a box: |R + delta B| =
    //   sum_{j=0}^{d} e_{d-j}(sides) * omega_j * delta^j,
    // so C(d,j) s_j = e_{d-j}(sides) * omega_j.
    const auto& a = box.sides();
    std::vector<double> e(static_cast<std::size_t>(d) + 1, 0.0);
    e[0] = 1.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j >= 1; --j) e[j] += e[j - 1] * a[static_cast<std::size_t>(i)];
    for (int j = 2; j <= d - 1; ++j)
      q.s.push_back(e[static_cast<std::size_t>(d - j)] * unit_ball_volume(j) /
                    binomial(d, j));
  }
  return q;
}

QuermassData quermass(const Ball& ball) {
  const int d = ball.d;
  if (d < 1) throw ValidationError("quermass: ball dimension must be >= 1");
  QuermassData q;
  q.d = d;
  q.volume = ball.volume();
  q.surface = ball.surface();
  q.omega_d = unit_ball_volume(d);
  // |B_r + delta B| = omega_d (r+delta)^d gives s_j = omega_d r^{d-j}.
  for (int j = 2; j <= d - 1; ++j)
    q.s.push_back(q.omega_d * std::pow(ball.radius, d - j));
  return q;
}

QuermassData quermass(const ConvexPolygon& poly) {
  QuermassData q;
  q.d = 2;
  q.volume = poly.area();
  q.surface = poly.perimeter();
  q.omega_d = kPi;
  return q;
}

QuermassData quermass(const ProfileDomain& dom) {
  QuermassData q;
  q.d = 2;
  q.volume = dom.area();
  q.surface = dom.perimeter();
  q.omega_d = kPi;
  return q;
}

QuermassData quermass(const Shape& shape) {
  return std::visit([](const auto& s) { return quermass(s); }, shape);
}

double steiner_inflate_volume(const QuermassData& q, double delta) {
  if (!(delta > 0.0))
    throw ValidationError("steiner_inflate_volume: delta must be positive");
  double v = q.volume + q.surface * delta;
  double dj = delta;
  for (int j = 2; j <= q.d - 1; ++j) {
    dj *= delta;
    v += binomial(q.d, j) * q.s[static_cast<std::size_t>(j - 2)] * dj;
  }
  v += q.omega_d * std::pow(delta, q.d);
  return v;
}

double area_volume(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexPolygon> ||
                      std::is_same_v<T, ProfileDomain>)
          return s.area();
        else
          return s.volume();
      },
      shape);
}

double perimeter_surface(const Shape& shape) {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ConvexPolygon> ||
                      std::is_same_v<T, ProfileDomain>)
          return s.perimeter();
        else
          return s.surface();
      },
      shape);
}

double diameter(const Shape& shape) {
  return std::visit([](const auto& s) -> double { return s.diameter(); }, shape);
}

}  // namespace spectra::geom
