#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "spectra/errors.hpp"

namespace spectra::geom {

inline constexpr double kPi = 3.14159265358979323846;

// Volume of the unit ball in R^d (omega_d); omega_0 = 1, omega_1 = 2.
double unit_ball_volume(int d);

// Boundary condition on the two opposite faces attached to one axis.
enum class AxisBC { DirichletBoth, NeumannBoth, Mixed };

// (a,b,c) = (#DirichletBoth, #NeumannBoth, #Mixed), a+b+c = d.
struct Signature {
  int a = 0;
  int b = 0;
  int c = 0;
  int dim() const { return a + b + c; }
  bool operator==(const Signature&) const = default;
};

std::string to_string(AxisBC bc);
std::string to_string(const Signature& sig);

// Axis-aligned box (0,a_1) x ... x (0,a_d) with a per-axis boundary condition.
class Cuboid {
 public:
  Cuboid(std::vector<double> sides, std::vector<AxisBC> axis_bc);
  static Cuboid uniform_bc(std::vector<double> sides, AxisBC bc);
  // Canonical axis order: first `a` Dirichlet axes, then `b` Neumann, then
  // `c` mixed, with the given sides in order.
  static Cuboid from_signature(std::vector<double> sides, const Signature& sig);

  int dim() const { return static_cast<int>(sides_.size()); }
  const std::vector<double>& sides() const { return sides_; }
  const std::vector<AxisBC>& axis_bc() const { return bc_; }
  Signature signature() const;

  double volume() const;
  double surface() const;  // (d-1)-measure of the boundary
  double diameter() const;
  Cuboid scaled(double t) const;

 private:
  std::vector<double> sides_;
  std::vector<AxisBC> bc_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Strictly convex CCW polygon. Collinear vertices are pruned on construction
// with tolerance 1e-12 * diameter; anything non-convex after pruning throws.
class ConvexPolygon {
 public:
  explicit ConvexPolygon(std::vector<Vec2> vertices);
  static ConvexPolygon regular(int n, double circumradius, Vec2 center = {});
  static ConvexPolygon rectangle(double a, double b, Vec2 corner = {});

  const std::vector<Vec2>& vertices() const { return v_; }
  int size() const { return static_cast<int>(v_.size()); }

  double area() const;
  double perimeter() const;
  double diameter() const;  // all-pairs over vertices (exact for polygons)
  Vec2 centroid() const;
  bool contains(Vec2 p) const;       // closed region
  double distance(Vec2 p) const;     // 0 inside, else distance to boundary
  ConvexPolygon scaled(double t) const;
  ConvexPolygon translated(Vec2 d) const;

 private:
  std::vector<Vec2> v_;
};

// Vertex-containment test: every vertex of `inner` inside `outer`.
bool polygon_contained(const ConvexPolygon& inner, const ConvexPolygon& outer);

// Exact Hausdorff distance between convex polygons: the supremum of the
// directed distance over a convex set is attained at a vertex, so it reduces
// to vertex-to-polygon distances in both directions.
double hausdorff_distance(const ConvexPolygon& a, const ConvexPolygon& b);

// Element of O_{2,L}: the convex region between a piecewise-linear concave
// upper profile h+ and convex lower profile h- over a projection interval,
// agreeing at the interval's endpoints, both L-Lipschitz.
class ProfileDomain {
 public:
  ProfileDomain(std::vector<double> xs, std::vector<double> h_plus,
                std::vector<double> h_minus, double lipschitz);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& h_plus() const { return hp_; }
  const std::vector<double>& h_minus() const { return hm_; }
  double lipschitz() const { return lip_; }
  int segments() const { return static_cast<int>(xs_.size()) - 1; }

  double width() const { return xs_.back() - xs_.front(); }  // |projection|
  double area() const;
  double perimeter() const;
  double upper_length() const;  // |Gamma+|
  double lower_length() const;  // |Gamma-|
  double diameter() const;

  ProfileDomain steiner_symmetrized() const;
  ProfileDomain scaled(double t) const;
  // CCW boundary polygon: lower profile left->right, then upper right->left.
  ConvexPolygon boundary_polygon() const;

 private:
  std::vector<double> xs_, hp_, hm_;
  double lip_;
};

struct Ball {
  double radius = 1.0;
  int d = 2;
  double volume() const;
  double surface() const;
  double diameter() const { return 2.0 * radius; }
};

// Coefficients of the Steiner polynomial
//   |Omega + delta B| = volume + surface*delta
//                     + sum_{j=2}^{d-1} C(d,j) s_j delta^j + omega_d delta^d.
struct QuermassData {
  int d = 2;
  double volume = 0.0;
  double surface = 0.0;
  std::vector<double> s;  // s_2 .. s_{d-1}; empty for d = 2
  double omega_d = 0.0;
};

QuermassData quermass(const Cuboid& box);
QuermassData quermass(const Ball& ball);
QuermassData quermass(const ConvexPolygon& poly);
QuermassData quermass(const ProfileDomain& dom);

double steiner_inflate_volume(const QuermassData& q, double delta);

using Shape = std::variant<Cuboid, Ball, ConvexPolygon, ProfileDomain>;

QuermassData quermass(const Shape& shape);
double area_volume(const Shape& shape);
double perimeter_surface(const Shape& shape);
double diameter(const Shape& shape);

double binomial(int n, int k);

}  // namespace spectra::geom
