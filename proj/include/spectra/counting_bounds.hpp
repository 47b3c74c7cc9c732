#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectra/cuboid_spectra.hpp"
#include "spectra/geometry.hpp"

namespace spectra::bounds {

enum class CertificateKind {
  NeumannCountUpper,
  DirichletCountLower,
  NeumannEigLower,
  DirichletEigUpper,
  ZarembaCuboidLower,
  N2Certificate,
};

std::string to_string(CertificateKind kind);

// A certified inequality together with every constant it used.
struct BoundCertificate {
  CertificateKind kind = CertificateKind::NeumannCountUpper;
  double alpha_or_k = 0.0;
  double value = 0.0;
  int n = 0;               // refinement parameter of the cube packing
  int d = 0;
  double mu_star = 0.0;    // mu*_{n+1} of the unit cube (Neumann family)
  double lambda_star = 0.0;  // lambda*_n of the unit cube (Dirichlet family)
  long kappa_n = 0;        // ceil(pi^{-1} sqrt(d mu*_{n+1}))
  geom::QuermassData quermass;
  std::string note;
};

// Neumann counting upper bound:
//   N^N(alpha) <= n|Omega| alpha^{d/2} / (mu*_{n+1})^{d/2} + r_n(Omega;alpha),
// with the surface, quermassintegral and constant terms of the remainder
// exactly as displayed (coefficients (2 kappa_n + 3) d^{1/2}, (4d)^{j/2},
// (4d)^{d/2} omega_d).
BoundCertificate neumann_count_upper(const geom::QuermassData& q, double alpha,
                                     int n);

// Dirichlet counting lower bound, clamped below at zero:
//   N^D(alpha) >= n|Omega| alpha^{d/2} / (lambda*_n + 1/n)^{d/2}
//               - 2 n d^{1/2} |dOmega| alpha^{(d-1)/2} / (lambda*_n + 1/n)^{(d-1)/2}.
BoundCertificate dirichlet_count_lower(const geom::QuermassData& q, double alpha,
                                       int n);

// Certified eigenvalue bounds by bisecting the counting bounds:
// mu_k >= alpha* where alpha* is the largest alpha with the upper count <= k.
BoundCertificate neumann_eig_lower(const geom::QuermassData& q, std::int64_t k,
                                   int n);
// lambda_k <= alpha* where alpha* is the smallest alpha with the lower
// count >= k.
BoundCertificate dirichlet_eig_upper(const geom::QuermassData& q, std::int64_t k,
                                     int n);

// Default refinement heuristic n = clamp(floor(sqrt(k)/4), 1, 64).
int default_refinement(std::int64_t k);

// Zaremba cuboid lower bounds (b = 0 required):
//   reflection bound 2^{-c} W_d k^{2/d} |R|^{-2/d}, and for d = 2 with
//   signature (0,0,2) additionally 4 pi (k - 1/4) / (|R| + |dR|) whenever
//   k >= 1/4 + (|R| + |dR|) / (4 pi). Returns the max of the applicable
//   bounds.
BoundCertificate zaremba_cuboid_lower(const geom::Cuboid& box, std::int64_t k);

struct N2ScanRow {
  std::int64_t k = 0;
  double lhs = 0.0;  // 56 sqrt(2k) + 8 pi
  bool holds = false;
};

struct N2Result {
  BoundCertificate certificate;
  std::int64_t threshold = 0;
  std::vector<N2ScanRow> table;  // rows around the threshold
};

// Smallest k with 56 sqrt(2k) + 8 pi < k, by direct integer scan. The
// certificate note records the full inequality chain and the deviation from
// the printed value in the source material for this bound family.
N2Result n2_certificate();

// Abstract Zaremba lower bound over O_{d,L} with the (non-computable)
// constant C_{d,L} supplied by the caller:
//   zeta_k >= C_{d,L} k^{2/d} / (|Omega| + k^{-a})^{2/d}
//             - |proj(Omega)|^2 k^{2a} - 1 - (d-1) L^2,  0 < a < 1/d.
double zaremba_profile_lower(double volume, double projection_measure, double L,
                             int d, std::int64_t k, double c_dl,
                             double a_exponent);

// (n+1)-th Neumann / n-th Dirichlet eigenvalue of the d-dimensional unit
// cube; exposed for cross-module consistency tests.
double unit_cube_neumann(int d, std::int64_t index);
double unit_cube_dirichlet(int d, std::int64_t index);

}  // namespace spectra::bounds
