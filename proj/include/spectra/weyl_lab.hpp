#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectra/cuboid_spectra.hpp"
#include "spectra/geometry.hpp"

namespace spectra::weyl {

struct RatioRow {
  std::int64_t k = 0;
  double eigenvalue = 0.0;
  double weyl_value = 0.0;  // W_d k^{2/d} |Omega_k|^{-2/d}
  double ratio = 0.0;
  std::string source;
};

struct RatioTable {
  std::string family;
  std::string bc;
  std::vector<RatioRow> rows;
};

// Squares with sides 1 + 1/k shrinking to the unit square.
RatioTable shrinking_squares_ratio(cuboid::IntervalBC bc,
                                   const std::vector<std::int64_t>& ks);

// Degenerate unit-volume cuboids R_k with a_k = 3 k^{1/d} omega_d^{-1/d}:
// d-1 sides a_k^{1/(d-1)} and one side a_k^{-1}.
geom::Cuboid degenerate_cuboid(int d, std::int64_t k, geom::AxisBC bc);

struct DegenerateCuboidRow {
  std::int64_t k = 0;
  double lambda_k = 0.0;
  double mu_k = 0.0;
  double dirichlet_threshold = 0.0;  // 9 pi^2 omega_d^{-2/d} k^{2/d}
  double weyl = 0.0;                 // W_d k^{2/d} (unit volume)
  double mu_chain_mid = 0.0;         // a_k^{-2/(d-1)} mu~_k evaluated exactly
  bool dirichlet_above = false;      // lambda_k > 9 pi^2 ... > W_d k^{2/d}
  bool neumann_below = false;        // mu_k <= chain mid and mu_k < W_d k^{2/d}
};

std::vector<DegenerateCuboidRow> degenerate_cuboid_check(
    int d, const std::vector<std::int64_t>& ks);

struct DisjointBallsRow {
  std::int64_t k = 0;
  double mu_kplus1 = 0.0;      // merged Neumann spectrum, index k+1
  double lambda_k = 0.0;       // merged Dirichlet spectrum, index k
  double lambda1_ball_k = 0.0; // lambda_1(B_2) * k at radius k^{-1/2}
  double weyl_value = 0.0;     // W_2 k / |Omega_k|
  bool zero_block = false;
  bool dirichlet_above_weyl = false;
};

// k+1 planar balls of radius k^{-1/2} (total area -> pi).
std::vector<DisjointBallsRow> disjoint_balls_check(
    const std::vector<std::int64_t>& ks);

struct DisjointUnionRow {
  std::int64_t k = 0;
  std::int64_t components = 0;   // N_k = floor(k / log(k+1))
  double mu_union = 0.0;
  double lambda_union = 0.0;
  double mu_square = 0.0;        // square of side 2
  double ratio = 0.0;            // mu_union / mu_square
  double dirichlet_ratio = 0.0;  // lambda_union / mu_square
  double area = 0.0;             // total area, tends to pi
};

// N_k balls of radius N_k^{-1/2} versus the area-4 square. The Dirichlet
// ratio exceeds one at desk scale; the Neumann ratio approaches its limit
// only as the per-ball index log(k+1) leaves the pre-asymptotic regime, so
// it is reported rather than compared against 1.
std::vector<DisjointUnionRow> disjoint_union_family(
    const std::vector<std::int64_t>& ks);

struct TwoSquaresRow {
  std::int64_t k = 0;
  double eigenvalue = 0.0;
  double weyl_value = 0.0;  // 4 pi k / (2 |square|)
  double ratio = 0.0;
};

TwoSquaresRow two_equal_squares(cuboid::IntervalBC bc, std::int64_t k);

struct RadiatorRow {
  double eps = 0.0;
  std::vector<double> dirichlet;  // lambda_1..lambda_k
  std::vector<double> neumann;    // mu_1..mu_k
};

struct RadiatorReport {
  int k = 0;
  int rectangles = 0;
  double rect_width = 0.0;
  double tube_length = 0.0;
  std::vector<RadiatorRow> rows;
  std::vector<double> decoupled;  // merged exact spectrum of the rectangles
  std::vector<double> richardson_order;  // at the smallest eps
  std::string note = "qualitative: small k, pixel meshes";
};

// Radiator domains: `rectangles` congruent vertical rectangles
// joined by thin tubes of height eps; eps values must be multiples of the
// base cell returned by radiator geometry construction.
RadiatorReport radiator_experiment(int k, int rectangles,
                                   const std::vector<double>& eps_list,
                                   double cell);

// lambda_k(alpha Omega) = alpha^{-2} lambda_k(Omega): largest relative
// mismatch over k <= k_max for a cuboid family (exact identity check).
double scaled_copy_max_mismatch(const geom::Cuboid& box, double alpha,
                                std::int64_t k_max);

}  // namespace spectra::weyl
