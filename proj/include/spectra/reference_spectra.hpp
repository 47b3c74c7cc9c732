#pragma once

#include <cstdint>
#include <vector>

#include "spectra/cuboid_spectra.hpp"

namespace spectra::refspec {

// J_nu(x) for integer nu >= 0: ascending series for small x, Miller's
// backward recurrence above. Accurate to ~1e-13 relative in the oscillatory
// region x >~ nu, which is where all zeros live.
double bessel_j(int nu, double x);
double bessel_j_derivative(int nu, double x);

// m-th positive zero of J_nu (Dirichlet) to 1e-10 absolute.
double bessel_zero(int nu, int m);
// m-th positive zero of J_nu' (Neumann); for nu = 0 these are the zeros of J_1.
double bessel_derivative_zero(int nu, int m);

enum class DiskBC { Dirichlet, Neumann };

struct DiskModeLabel {
  int nu = 0;      // angular order
  int m = 0;       // radial index (m = 0 marks the Neumann zero mode)
  int branch = 0;  // 0 = cos branch, 1 = sin branch (nu >= 1 comes in pairs)
};

struct DiskSpectrum {
  cuboid::Spectrum spectrum;
  std::vector<DiskModeLabel> labels;  // one per eigenvalue
};

// First k disk eigenvalues: (j_{nu,m}/r)^2 with multiplicity 2 for nu >= 1,
// merged ascending; Neumann analogously from J_nu' zeros plus the 0 mode.
DiskSpectrum disk_spectrum(DiskBC bc, double radius, std::int64_t k);

// Multiset union of spectra of one boundary-condition family, sorted; models
// the spectrum of a disjoint union.
cuboid::Spectrum merge_spectra(const std::vector<cuboid::Spectrum>& parts);

// First k eigenvalues of `copies` disjoint copies of one domain.
cuboid::Spectrum merge_copies(const cuboid::Spectrum& part, std::int64_t copies,
                              std::int64_t k);

}  // namespace spectra::refspec
