#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectra/geometry.hpp"

namespace spectra::cuboid {

enum class IntervalBC { Dirichlet, Neumann, Mixed };

IntervalBC to_interval_bc(geom::AxisBC bc);

// k-th eigenvalue of -u'' on an interval of the given length:
//   Dirichlet pi^2 k^2 / l^2, Neumann pi^2 (k-1)^2 / l^2,
//   Mixed pi^2 (k-1/2)^2 / l^2.
double interval_eigenvalue(IntervalBC bc, std::int64_t k, double length);

enum class SpectrumSource { ExactCuboid, ExactInterval, ExactDisk, Fem };

struct Spectrum {
  std::vector<double> values;  // nondecreasing
  std::string bc_descriptor;
  SpectrumSource source = SpectrumSource::ExactCuboid;
  double mesh_h = 0.0;  // only meaningful for Fem
};

struct EnumerationLimits {
  std::size_t max_bytes = std::size_t{2} << 30;  // 2 GiB
};

// Weyl constant W_d = 4 pi^2 omega_d^{-2/d}.
double weyl_constant(int d);

// k-th smallest tensor-sum eigenvalue (with multiplicity), by best-first
// lattice expansion. Sums are evaluated in fixed ascending-axis order so the
// result is bit-reproducible.
double kth_eigenvalue(const geom::Cuboid& box, std::int64_t k,
                      const EnumerationLimits& limits = {});

Spectrum spectrum_prefix(const geom::Cuboid& box, std::int64_t k,
                         const EnumerationLimits& limits = {});

// Number of eigenvalues strictly below alpha, by nested lattice truncation
// in the same summation order as kth_eigenvalue.
std::int64_t counting(const geom::Cuboid& box, double alpha);

struct PolyaReport {
  bool violated = false;
  std::int64_t first_violation_k = 0;
  std::string side;  // "neumann" or "dirichlet" if violated
  std::int64_t checked_k_max = 0;
};

// Checks mu_{k+1} <= W_d k^{2/d} |R|^{-2/d} <= lambda_k for k <= k_max.
PolyaReport polya_check(const geom::Cuboid& box, std::int64_t k_max);

}  // namespace spectra::cuboid
