#pragma once

#include <functional>
#include <vector>

namespace spectra::opt {

struct NelderMeadOptions {
  int max_iter = 2000;
  double f_tol = 1e-12;   // stop when the simplex value spread falls below
  double x_tol = 1e-10;   // ... or the simplex collapses geometrically
  double initial_step = 0.5;
  int restarts = 2;       // re-seed a fresh simplex at the incumbent best
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> x0,
                             const NelderMeadOptions& options = {});

// Golden-section minimization of a unimodal function on [a, b].
double golden_section(const std::function<double(double)>& f, double a, double b,
                      double tol);

// Coarse grid scan followed by golden-section refinement around every local
// minimum of the grid; robust to the piecewise-smooth objectives eigenvalue
// crossings produce.
double scan_then_golden(const std::function<double(double)>& f, double a,
                        double b, int grid, double tol);

}  // namespace spectra::opt
