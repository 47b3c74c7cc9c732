#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>

#include "spectra/errors.hpp"
#include "spectra/fem.hpp"

namespace spectra::fem {

using geom::Vec2;

namespace {

double tri_area(Vec2 a, Vec2 b, Vec2 c) { return 0.5 * geom::cross(b - a, c - a); }

double tri_min_angle(Vec2 a, Vec2 b, Vec2 c) {
  const double la = geom::norm(b - c);
  const double lb = geom::norm(a - c);
  const double lc = geom::norm(a - b);
  auto angle = [](double opp, double s1, double s2) {
    const double cosv = (s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2);
    return std::acos(std::clamp(cosv, -1.0, 1.0));
  };
  return std::min({angle(la, lb, lc), angle(lb, la, lc), angle(lc, la, lb)});
}

}  // namespace

double Mesh::min_angle_deg() const {
  double m = geom::kPi;
  for (const auto& t : triangles)
    m = std::min(m, tri_min_angle(nodes[static_cast<std::size_t>(t[0])],
                                  nodes[static_cast<std::size_t>(t[1])],
                                  nodes[static_cast<std::size_t>(t[2])]));
  return m * 180.0 / geom::kPi;
}

double Mesh::boundary_length() const {
  double s = 0.0;
  for (const auto& e : boundary_edges)
    s += geom::norm(nodes[static_cast<std::size_t>(e.nodes[0])] -
                    nodes[static_cast<std::size_t>(e.nodes[1])]);
  return s;
}

int Mesh::count_tag(EdgeTag tag) const {
  int n = 0;
  for (const auto& e : boundary_edges)
    if (e.tag == tag) ++n;
  return n;
}

void Mesh::validate() const {
  const int nn = static_cast<int>(nodes.size());
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& t : triangles) {
    for (int v : t)
      if (v < 0 || v >= nn) throw MeshFailure("mesh: triangle index out of range");
    if (tri_area(nodes[static_cast<std::size_t>(t[0])],
                 nodes[static_cast<std::size_t>(t[1])],
                 nodes[static_cast<std::size_t>(t[2])]) <= 0.0)
      throw MeshFailure("mesh: non-positive triangle area");
    for (int e = 0; e < 3; ++e) {
      const int u = t[static_cast<std::size_t>(e)];
      const int v = t[static_cast<std::size_t>((e + 1) % 3)];
      ++edge_use[{std::min(u, v), std::max(u, v)}];
    }
  }
  std::set<std::pair<int, int>> tagged;
  for (const auto& e : boundary_edges) {
    const auto key = std::make_pair(std::min(e.nodes[0], e.nodes[1]),
                                    std::max(e.nodes[0], e.nodes[1]));
    if (!tagged.insert(key).second)
      throw MeshFailure("mesh: boundary edge tagged twice");
    const auto it = edge_use.find(key);
    if (it == edge_use.end() || it->second != 1)
      throw MeshFailure("mesh: tagged edge is not a boundary edge");
  }
  for (const auto& [key, count] : edge_use) {
    if (count > 2) throw MeshFailure("mesh: non-conforming edge");
    if (count == 1 && tagged.find(key) == tagged.end())
      throw MeshFailure("mesh: untagged boundary edge");
  }
}

namespace {

// Closed boundary chain (may contain collinear vertices) with per-edge tags.
struct Chain {
  std::vector<Vec2> pts;
  std::vector<EdgeTag> tags;  // tags[i] is the edge pts[i] -> pts[i+1 mod n]

  double diameter() const {
    double d2 = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        d2 = std::max(d2, geom::dot(pts[i] - pts[j], pts[i] - pts[j]));
    return std::sqrt(d2);
  }

  // Convex (possibly with collinear vertices) CCW containment.
  bool contains(Vec2 p, double tol) const {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Vec2 a = pts[i];
      const Vec2 b = pts[(i + 1) % pts.size()];
      if (geom::cross(b - a, p - a) < -tol * geom::norm(b - a)) return false;
    }
    return true;
  }

  double boundary_distance(Vec2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pts.size(); ++i)
      d = std::min(d, geom::point_segment_distance(p, pts[i],
                                                   pts[(i + 1) % pts.size()]));
    return d;
  }
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

double unit_jitter(std::uint64_t key) {
  return (static_cast<double>(splitmix64(key) >> 11) / 9007199254740992.0) - 0.5;
}

// ---------------------------------------------------------------------------
// Bowyer-Watson Delaunay triangulation.

struct DelaunayTri {
  int a, b, c;
  double cx, cy, r2;
  bool alive = true;
};

void circumcircle(Vec2 pa, Vec2 pb, Vec2 pc, double& cx, double& cy, double& r2) {
  const long double ax = pa.x, ay = pa.y;
  const long double bx = pb.x, by = pb.y;
  const long double cxx = pc.x, cyy = pc.y;
  const long double d = 2.0L * (ax * (by - cyy) + bx * (cyy - ay) + cxx * (ay - by));
  if (d == 0.0L) {
    cx = cy = 0.0;
    r2 = std::numeric_limits<double>::infinity();
    return;
  }
  const long double a2 = ax * ax + ay * ay;
  const long double b2 = bx * bx + by * by;
  const long double c2 = cxx * cxx + cyy * cyy;
  const long double ux = (a2 * (by - cyy) + b2 * (cyy - ay) + c2 * (ay - by)) / d;
  const long double uy = (a2 * (cxx - bx) + b2 * (ax - cxx) + c2 * (bx - ax)) / d;
  cx = static_cast<double>(ux);
  cy = static_cast<double>(uy);
  const long double dx = ux - ax;
  const long double dy = uy - ay;
  r2 = static_cast<double>(dx * dx + dy * dy);
}

std::vector<std::array<int, 3>> bowyer_watson(const std::vector<Vec2>& pts) {
  const std::size_t n = pts.size();
  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Vec2& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double cx0 = 0.5 * (xmin + xmax);
  const double cy0 = 0.5 * (ymin + ymax);
  const double ext = std::max({xmax - xmin, ymax - ymin, 1e-12});

  std::vector<Vec2> all(pts);
  const double R = 64.0 * ext;
  const int s0 = static_cast<int>(n);
  all.push_back({cx0 - 2.0 * R, cy0 - R});
  all.push_back({cx0 + 2.0 * R, cy0 - R});
  all.push_back({cx0, cy0 + 2.0 * R});

  std::vector<DelaunayTri> tris;
  auto add_tri = [&](int a, int b, int c) {
    if (tri_area(all[static_cast<std::size_t>(a)], all[static_cast<std::size_t>(b)],
                 all[static_cast<std::size_t>(c)]) < 0.0)
      std::swap(b, c);
    DelaunayTri t{a, b, c, 0.0, 0.0, 0.0, true};
    circumcircle(all[static_cast<std::size_t>(a)], all[static_cast<std::size_t>(b)],
                 all[static_cast<std::size_t>(c)], t.cx, t.cy, t.r2);
    tris.push_back(t);
  };
  add_tri(s0, s0 + 1, s0 + 2);

  std::vector<std::size_t> bad;
  std::size_t dead = 0;
  std::map<std::pair<int, int>, std::pair<int, int>> cavity;  // edge -> (count, orient-from)
  for (std::size_t ip = 0; ip < n; ++ip) {
    const Vec2 p = all[ip];
    bad.clear();
    for (std::size_t it = 0; it < tris.size(); ++it) {
      const DelaunayTri& t = tris[it];
      if (!t.alive) continue;
      const double dx = p.x - t.cx;
      const double dy = p.y - t.cy;
      if (dx * dx + dy * dy < t.r2) bad.push_back(it);
    }
    cavity.clear();
    auto touch_edge = [&](int u, int v) {
      const auto key = std::make_pair(std::min(u, v), std::max(u, v));
      auto [it, inserted] = cavity.emplace(key, std::make_pair(1, u));
      if (!inserted) ++it->second.first;
    };
    for (std::size_t it : bad) {
      const DelaunayTri& t = tris[it];
      touch_edge(t.a, t.b);
      touch_edge(t.b, t.c);
      touch_edge(t.c, t.a);
      tris[it].alive = false;
    }
    dead += bad.size();
    for (const auto& [key, info] : cavity) {
      if (info.first != 1) continue;
      // Preserve the orientation the bad triangle used for this edge.
      const int u = info.second;
      const int v = (key.first == u) ? key.second : key.first;
      add_tri(u, v, static_cast<int>(ip));
    }
    if (dead > tris.size() / 2 && tris.size() > 4096) {
      std::vector<DelaunayTri> live;
      live.reserve(tris.size() - dead);
      for (const auto& t : tris)
        if (t.alive) live.push_back(t);
      tris.swap(live);
      dead = 0;
    }
  }

  std::vector<std::array<int, 3>> out;
  for (const auto& t : tris) {
    if (!t.alive) continue;
    if (t.a >= s0 || t.b >= s0 || t.c >= s0) continue;
    out.push_back({t.a, t.b, t.c});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Chain mesher: subdivided boundary ring + hex interior lattice + Delaunay +
// guarded Laplacian smoothing.

Mesh mesh_chain_once(const Chain& chain, double h, double phase_x, double phase_y,
                     double clearance) {
  std::vector<Vec2> pts;
  const std::size_t ne = chain.pts.size();
  for (std::size_t i = 0; i < ne; ++i) {
    const Vec2 a = chain.pts[i];
    const Vec2 b = chain.pts[(i + 1) % ne];
    const int div = std::max(1, static_cast<int>(std::ceil(geom::norm(b - a) / h)));
    for (int j = 0; j < div; ++j) {
      const double t = static_cast<double>(j) / div;
      pts.push_back(a + t * (b - a));
    }
  }
  const std::size_t n_boundary = pts.size();

  double xmin = pts[0].x, xmax = pts[0].x, ymin = pts[0].y, ymax = pts[0].y;
  for (const Vec2& p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double dy = h * std::sqrt(3.0) / 2.0;
  const double diam = chain.diameter();
  int row = 0;
  for (double y = ymin + (0.5 + phase_y) * dy; y < ymax; y += dy, ++row) {
    const double x0 = xmin + (0.5 * (row % 2) + phase_x) * h;
    int col = 0;
    for (double x = x0; x < xmax; x += h, ++col) {
      Vec2 p{x, y};
      const std::uint64_t key =
          (static_cast<std::uint64_t>(row) << 32) ^ static_cast<std::uint64_t>(col);
      p.x += 1e-4 * h * unit_jitter(key);
      p.y += 1e-4 * h * unit_jitter(key ^ 0x5bf03635ull);
      if (!chain.contains(p, 0.0)) continue;
      if (chain.boundary_distance(p) < clearance * h) continue;
      pts.push_back(p);
    }
  }

  Mesh mesh;
  // Interior points first: boundary points then see a well-populated
  // triangulation, which keeps collinear boundary insertions safe.
  std::vector<Vec2> ordered;
  std::vector<int> order_map(pts.size());
  for (std::size_t i = n_boundary; i < pts.size(); ++i) {
    order_map[i] = static_cast<int>(ordered.size());
    ordered.push_back(pts[i]);
  }
  for (std::size_t i = 0; i < n_boundary; ++i) {
    order_map[i] = static_cast<int>(ordered.size());
    ordered.push_back(pts[i]);
  }

  auto tris = bowyer_watson(ordered);

  // Keep triangles whose centroid lies inside the domain.
  const double tol = 1e-9 * diam;
  std::vector<std::array<int, 3>> kept;
  for (const auto& t : tris) {
    const Vec2 g = (1.0 / 3.0) * (ordered[static_cast<std::size_t>(t[0])] +
                                  ordered[static_cast<std::size_t>(t[1])] +
                                  ordered[static_cast<std::size_t>(t[2])]);
    if (chain.contains(g, tol)) kept.push_back(t);
  }

  mesh.nodes = ordered;
  mesh.triangles = std::move(kept);

  // Boundary edges = edges used exactly once.
  std::map<std::pair<int, int>, int> edge_use;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e) {
      const int u = t[static_cast<std::size_t>(e)];
      const int v = t[static_cast<std::size_t>((e + 1) % 3)];
      ++edge_use[{std::min(u, v), std::max(u, v)}];
    }
  std::set<int> boundary_nodes;
  mesh.boundary_edges.clear();
  for (const auto& [key, count] : edge_use) {
    if (count != 1) continue;
    boundary_nodes.insert(key.first);
    boundary_nodes.insert(key.second);
    BoundaryEdge be;
    be.nodes = {key.first, key.second};
    const Vec2 mid = 0.5 * (mesh.nodes[static_cast<std::size_t>(key.first)] +
                            mesh.nodes[static_cast<std::size_t>(key.second)]);
    double best = std::numeric_limits<double>::infinity();
    int best_edge = 0;
    for (std::size_t i = 0; i < ne; ++i) {
      const double d = geom::point_segment_distance(mid, chain.pts[i],
                                                    chain.pts[(i + 1) % ne]);
      if (d < best) {
        best = d;
        best_edge = static_cast<int>(i);
      }
    }
    if (best > 1e-6 * diam)
      throw MeshFailure("triangulate: boundary edge far from domain boundary");
    be.tag = chain.tags[static_cast<std::size_t>(best_edge)];
    mesh.boundary_edges.push_back(be);
  }

  // Guarded Laplacian smoothing of interior nodes.
  std::vector<std::vector<int>> nbrs(mesh.nodes.size());
  for (const auto& [key, count] : edge_use) {
    nbrs[static_cast<std::size_t>(key.first)].push_back(key.second);
    nbrs[static_cast<std::size_t>(key.second)].push_back(key.first);
  }
  std::vector<std::vector<int>> node_tris(mesh.nodes.size());
  for (std::size_t it = 0; it < mesh.triangles.size(); ++it)
    for (int v : mesh.triangles[it])
      node_tris[static_cast<std::size_t>(v)].push_back(static_cast<int>(it));

  auto local_quality = [&](int node) {
    double q = geom::kPi;
    for (int it : node_tris[static_cast<std::size_t>(node)]) {
      const auto& t = mesh.triangles[static_cast<std::size_t>(it)];
      q = std::min(q, tri_min_angle(mesh.nodes[static_cast<std::size_t>(t[0])],
                                    mesh.nodes[static_cast<std::size_t>(t[1])],
                                    mesh.nodes[static_cast<std::size_t>(t[2])]));
    }
    return q;
  };
  auto local_ok = [&](int node) {
    for (int it : node_tris[static_cast<std::size_t>(node)]) {
      const auto& t = mesh.triangles[static_cast<std::size_t>(it)];
      if (tri_area(mesh.nodes[static_cast<std::size_t>(t[0])],
                   mesh.nodes[static_cast<std::size_t>(t[1])],
                   mesh.nodes[static_cast<std::size_t>(t[2])]) <= 0.0)
        return false;
    }
    return true;
  };

  for (int round = 0; round < 6; ++round) {
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i) {
      if (boundary_nodes.count(static_cast<int>(i))) continue;
      if (nbrs[i].empty()) continue;
      Vec2 avg{0.0, 0.0};
      for (int j : nbrs[i]) avg = avg + mesh.nodes[static_cast<std::size_t>(j)];
      avg = (1.0 / static_cast<double>(nbrs[i].size())) * avg;
      const Vec2 old = mesh.nodes[i];
      const double before = local_quality(static_cast<int>(i));
      mesh.nodes[i] = old + 0.7 * (avg - old);
      if (!local_ok(static_cast<int>(i)) ||
          local_quality(static_cast<int>(i)) < before - 1e-12)
        mesh.nodes[i] = old;
    }
  }

  double hmax = 0.0;
  for (const auto& t : mesh.triangles)
    for (int e = 0; e < 3; ++e)
      hmax = std::max(hmax, geom::norm(mesh.nodes[static_cast<std::size_t>(
                                           t[static_cast<std::size_t>(e)])] -
                                       mesh.nodes[static_cast<std::size_t>(
                                           t[static_cast<std::size_t>((e + 1) % 3)])]));
  mesh.h = hmax;
  return mesh;
}

Mesh mesh_chain(const Chain& chain, double h, const MeshOptions& options) {
  if (!(h > 0.0)) throw ValidationError("triangulate: h must be positive");
  const double diam = chain.diameter();
  if (h > diam / 4.0 * (1.0 + 1e-12))
    throw ValidationError("triangulate: h must be at most diameter/4");

  static constexpr std::array<std::array<double, 3>, 4> configs = {{
      {0.0, 0.0, 0.55},
      {0.5, 0.25, 0.55},
      {0.23, 0.61, 0.5},
      {0.77, 0.4, 0.6},
  }};
  Mesh best;
  double best_angle = -1.0;
  std::string last_error;
  const int tries = std::min<int>(options.retry_configs, configs.size());
  for (int c = 0; c < tries; ++c) {
    try {
      Mesh m = mesh_chain_once(chain, h, configs[static_cast<std::size_t>(c)][0],
                               configs[static_cast<std::size_t>(c)][1],
                               configs[static_cast<std::size_t>(c)][2]);
      m.validate();
      const double ang = m.min_angle_deg();
      if (ang > best_angle) {
        best_angle = ang;
        best = std::move(m);
      }
      if (best_angle >= options.min_angle_deg) return best;
    } catch (const MeshFailure& e) {
      last_error = e.what();
    }
  }
  if (best_angle < 0.0)
    throw MeshFailure("triangulate: no valid mesh produced (" + last_error + ")");
  if (best_angle < options.min_angle_deg)
    throw MeshFailure("triangulate: min angle " + std::to_string(best_angle) +
                      " deg below quality gate");
  return best;
}

}  // namespace

Mesh triangulate(const geom::ConvexPolygon& poly, double h,
                 const std::vector<EdgeTag>& edge_tags, const MeshOptions& options) {
  if (edge_tags.size() != poly.vertices().size())
    throw ValidationError("triangulate: one tag per polygon edge required");
  Chain chain{poly.vertices(), edge_tags};
  return mesh_chain(chain, h, options);
}

Mesh triangulate(const geom::ConvexPolygon& poly, double h, FemBC bc,
                 const MeshOptions& options) {
  if (bc == FemBC::Zaremba)
    throw ValidationError(
        "triangulate: Zaremba on a polygon needs explicit edge tags");
  const EdgeTag tag =
      bc == FemBC::Dirichlet ? EdgeTag::DirichletPart : EdgeTag::NeumannPart;
  return triangulate(poly, h, std::vector<EdgeTag>(poly.vertices().size(), tag),
                     options);
}

Mesh triangulate(const geom::ProfileDomain& dom, double h, FemBC bc,
                 const MeshOptions& options) {
  // Boundary chain without collinear pruning, so tags track profile sides:
  // lower profile left->right (Gamma-), then upper right->left (Gamma+).
  const auto& xs = dom.xs();
  const auto& hp = dom.h_plus();
  const auto& hm = dom.h_minus();
  const std::size_t m = xs.size();
  Chain chain;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    chain.pts.push_back({xs[i], hm[i]});
    chain.tags.push_back(bc == FemBC::Zaremba ? EdgeTag::DirichletPart
                         : bc == FemBC::Dirichlet ? EdgeTag::DirichletPart
                                                  : EdgeTag::NeumannPart);
  }
  chain.pts.push_back({xs[m - 1], hm[m - 1]});
  chain.tags.push_back(bc == FemBC::Dirichlet ? EdgeTag::DirichletPart
                                              : EdgeTag::NeumannPart);
  for (std::size_t i = m - 1; i-- > 1;) {
    chain.pts.push_back({xs[i], hp[i]});
    chain.tags.push_back(bc == FemBC::Dirichlet ? EdgeTag::DirichletPart
                                                : EdgeTag::NeumannPart);
  }
  return mesh_chain(chain, h, options);
}

Mesh triangulate_rectilinear(const RectilinearDomain& dom, double cell,
                             EdgeTag tag) {
  if (!(cell > 0.0)) throw ValidationError("triangulate_rectilinear: bad cell size");
  if (dom.rects.empty())
    throw ValidationError("triangulate_rectilinear: empty domain");
  double xmin = dom.rects[0].x0, xmax = dom.rects[0].x1;
  double ymin = dom.rects[0].y0, ymax = dom.rects[0].y1;
  for (const auto& r : dom.rects) {
    if (!(r.x1 > r.x0) || !(r.y1 > r.y0))
      throw ValidationError("triangulate_rectilinear: degenerate rectangle");
    xmin = std::min(xmin, r.x0);
    xmax = std::max(xmax, r.x1);
    ymin = std::min(ymin, r.y0);
    ymax = std::max(ymax, r.y1);
  }
  auto snap = [&](double v, double origin) {
    const double t = (v - origin) / cell;
    const double r = std::round(t);
    if (std::abs(t - r) > 1e-6)
      throw ValidationError(
          "triangulate_rectilinear: coordinates must be multiples of the cell size");
    return static_cast<int>(r);
  };
  const int nx = snap(xmax, xmin);
  const int ny = snap(ymax, ymin);

  std::vector<std::uint8_t> filled(static_cast<std::size_t>(nx) * ny, 0);
  auto cell_at = [&](int i, int j) -> std::uint8_t& {
    return filled[static_cast<std::size_t>(j) * nx + i];
  };
  for (const auto& r : dom.rects) {
    const int i0 = snap(r.x0, xmin), i1 = snap(r.x1, xmin);
    const int j0 = snap(r.y0, ymin), j1 = snap(r.y1, ymin);
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i) cell_at(i, j) = 1;
  }

  Mesh mesh;
  std::vector<int> node_id(static_cast<std::size_t>(nx + 1) * (ny + 1), -1);
  auto node = [&](int i, int j) {
    int& id = node_id[static_cast<std::size_t>(j) * (nx + 1) + i];
    if (id < 0) {
      id = static_cast<int>(mesh.nodes.size());
      mesh.nodes.push_back({xmin + i * cell, ymin + j * cell});
    }
    return id;
  };
  auto is_filled = [&](int i, int j) {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return false;
    return cell_at(i, j) != 0;
  };

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      if (!is_filled(i, j)) continue;
      const int n00 = node(i, j), n10 = node(i + 1, j);
      const int n11 = node(i + 1, j + 1), n01 = node(i, j + 1);
      if ((i + j) % 2 == 0) {
        mesh.triangles.push_back({n00, n10, n11});
        mesh.triangles.push_back({n00, n11, n01});
      } else {
        mesh.triangles.push_back({n00, n10, n01});
        mesh.triangles.push_back({n10, n11, n01});
      }
      if (!is_filled(i, j - 1)) mesh.boundary_edges.push_back({{n00, n10}, tag});
      if (!is_filled(i, j + 1)) mesh.boundary_edges.push_back({{n01, n11}, tag});
      if (!is_filled(i - 1, j)) mesh.boundary_edges.push_back({{n00, n01}, tag});
      if (!is_filled(i + 1, j)) mesh.boundary_edges.push_back({{n10, n11}, tag});
    }

  mesh.h = cell * std::sqrt(2.0);
  mesh.validate();
  return mesh;
}

}  // namespace spectra::fem
