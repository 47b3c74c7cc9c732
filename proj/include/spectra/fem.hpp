#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Sparse>

#include "spectra/cuboid_spectra.hpp"
#include "spectra/geometry.hpp"

namespace spectra::fem {

enum class EdgeTag { DirichletPart, NeumannPart };
enum class FemBC { Dirichlet, Neumann, Zaremba };

struct BoundaryEdge {
  std::array<int, 2> nodes;
  EdgeTag tag = EdgeTag::DirichletPart;
};

struct Mesh {
  std::vector<geom::Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;  // CCW
  std::vector<BoundaryEdge> boundary_edges;
  double h = 0.0;  // max edge length

  double min_angle_deg() const;
  double boundary_length() const;
  int count_tag(EdgeTag tag) const;
  // Conformity, orientation, and boundary bookkeeping; throws MeshFailure.
  void validate() const;
};

struct MeshOptions {
  double min_angle_deg = 20.0;
  int retry_configs = 4;
};

// Quality-gated unstructured mesh of a convex polygon. `edge_tags` has one
// tag per polygon edge (edge i runs vertex i -> i+1).
Mesh triangulate(const geom::ConvexPolygon& poly, double h,
                 const std::vector<EdgeTag>& edge_tags,
                 const MeshOptions& options = {});
Mesh triangulate(const geom::ConvexPolygon& poly, double h, FemBC bc,
                 const MeshOptions& options = {});

// ProfileDomain mesh; under Zaremba the lower profile Gamma- is tagged
// Dirichlet and the upper profile Gamma+ Neumann (the junction nodes over
// the projection endpoints end up constrained, matching the closure
// convention for H^1_{0,Gamma-}).
Mesh triangulate(const geom::ProfileDomain& dom, double h, FemBC bc,
                 const MeshOptions& options = {});

// Axis-aligned rectilinear domains (unions of rectangles) meshed on a
// uniform grid of cell size `cell`; all rectangle coordinates must be
// integer multiples of `cell`. Used for the radiator experiments.
struct RectilinearDomain {
  struct Rect {
    double x0, y0, x1, y1;
  };
  std::vector<Rect> rects;
};

Mesh triangulate_rectilinear(const RectilinearDomain& dom, double cell,
                             EdgeTag tag);

struct AssembledSystem {
  Eigen::SparseMatrix<double> stiffness;  // full node set
  Eigen::SparseMatrix<double> mass;
  std::vector<int> free_dofs;
  int total_nodes = 0;
};

AssembledSystem assemble(const Mesh& mesh, FemBC bc);

struct SolveOptions {
  int dense_threshold = 3000;
  double tol = 1e-10;
  int max_iter = 500;
};

// First k generalized eigenvalues of (stiffness, mass) on the free dofs,
// ascending: dense solve below the threshold, otherwise shift-invert
// subspace iteration (shift 0, or -1 for the singular Neumann stiffness).
std::vector<double> solve_generalized(const AssembledSystem& sys, int k,
                                      FemBC bc, const SolveOptions& options = {});

cuboid::Spectrum solve_eigs_mesh(const Mesh& mesh, FemBC bc, int k,
                                 const SolveOptions& options = {});
cuboid::Spectrum solve_eigs(const geom::ConvexPolygon& poly, FemBC bc, int k,
                            double h, const SolveOptions& options = {});
cuboid::Spectrum solve_eigs(const geom::ProfileDomain& dom, FemBC bc, int k,
                            double h, const SolveOptions& options = {});

using FemDomain = std::variant<geom::ConvexPolygon, geom::ProfileDomain>;

struct RichardsonResult {
  std::vector<double> extrapolated;     // per eigenvalue index
  std::vector<double> observed_order;   // fitted p per index
  bool suspect = false;                 // any p < 1.5
  std::vector<std::vector<double>> raw; // one spectrum per mesh size
  std::vector<double> h_list;
};

// Richardson extrapolation over a geometric mesh ladder (>= 3 sizes).
RichardsonResult refine_extrapolate(const FemDomain& domain, FemBC bc, int k,
                                    std::vector<double> h_list,
                                    const SolveOptions& options = {});

}  // namespace spectra::fem
