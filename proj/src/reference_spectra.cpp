#include "spectra/reference_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <shared_mutex>

#include "spectra/errors.hpp"

namespace spectra::refspec {

namespace {

constexpr double kSeriesCutoff = 9.0;

// Ascending power series; safe for x <= kSeriesCutoff (cancellation stays
// below ~1e3 there).
double bessel_j_series(int nu, double x) {
  const double half = 0.5 * x;
  double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  const double h2 = half * half;
  for (int m = 1; m <= 80; ++m) {
    term *= -h2 / (static_cast<double>(m) * (m + nu));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Miller's algorithm: downward recurrence from a safely high order,
// normalized with J_0 + 2 sum_{m>=1} J_{2m} = 1. Fills J_0..J_nmax.
std::vector<double> bessel_j_miller(int nmax, double x) {
  const int start = std::max(nmax, static_cast<int>(x)) + 16 +
                    static_cast<int>(2.0 * std::cbrt(std::max(x, 1.0)));
  const int M = start + (start % 2);  // even start simplifies normalization
  std::vector<double> f(static_cast<std::size_t>(M) + 2, 0.0);
  f[static_cast<std::size_t>(M) + 1] = 0.0;
  f[static_cast<std::size_t>(M)] = 1e-30;
  for (int n = M; n >= 1; --n) {
    const double next =
        (2.0 * n / x) * f[static_cast<std::size_t>(n)] - f[static_cast<std::size_t>(n) + 1];
    f[static_cast<std::size_t>(n) - 1] = next;
    if (std::abs(next) > 1e250) {
      for (int j = n - 1; j <= M + 1; ++j) f[static_cast<std::size_t>(j)] *= 1e-250;
    }
  }
  double s = f[0];
  for (int m = 2; m <= M; m += 2) s += 2.0 * f[static_cast<std::size_t>(m)];
  if (s == 0.0 || !std::isfinite(s))
    throw NumericalFailure("bessel_j: Miller normalization failed");
  f.resize(static_cast<std::size_t>(nmax) + 1);
  for (double& v : f) v /= s;
  return f;
}

}  // namespace

double bessel_j(int nu, double x) {
  if (nu < 0) throw ValidationError("bessel_j: order must be >= 0");
  if (x < 0.0) throw ValidationError("bessel_j: x must be >= 0");
  if (x == 0.0) return nu == 0 ? 1.0 : 0.0;
  if (x <= kSeriesCutoff) return bessel_j_series(nu, x);
  return bessel_j_miller(nu, x)[static_cast<std::size_t>(nu)];
}

double bessel_j_derivative(int nu, double x) {
  if (nu == 0) return -bessel_j(1, x);
  if (x <= kSeriesCutoff)
    return bessel_j_series(nu - 1, x) - (nu / x) * bessel_j_series(nu, x);
  const auto f = bessel_j_miller(nu, x);
  return f[static_cast<std::size_t>(nu) - 1] - (nu / x) * f[static_cast<std::size_t>(nu)];
}

namespace {

enum class ZeroKind { Function, Derivative };

struct Eval {
  double f;   // the function whose zero we seek
  double df;  // its derivative (for Newton)
};

Eval evaluate(ZeroKind kind, int nu, double x) {
  if (kind == ZeroKind::Function)
    return {bessel_j(nu, x), bessel_j_derivative(nu, x)};
  // f = J_nu'; f' = J_nu'' from the Bessel ODE.
  const double j = bessel_j(nu, x);
  const double jp = bessel_j_derivative(nu, x);
  const double jpp =
      ((static_cast<double>(nu) * nu - x * x) * j - x * jp) / (x * x);
  return {jp, jpp};
}

double refine_zero(ZeroKind kind, int nu, double lo, double hi) {
  double flo = evaluate(kind, nu, lo).f;
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = evaluate(kind, nu, mid).f;
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {  // Newton polish
    const Eval e = evaluate(kind, nu, x);
    if (e.df == 0.0) break;
    const double step = e.f / e.df;
    const double xn = x - step;
    if (!(xn > lo - 1.0 && xn < hi + 1.0) || !std::isfinite(xn)) break;
    x = xn;
    if (std::abs(step) < 1e-13 * x) break;
  }
  return x;
}

// Scans upward for the next sign change past `from` and refines it.
double next_zero_after(ZeroKind kind, int nu, double from) {
  const double step = 0.25;
  double a = from;
  double fa = evaluate(kind, nu, a).f;
  for (int it = 0; it < 20000; ++it) {
    const double b = a + step;
    const double fb = evaluate(kind, nu, b).f;
    if ((fa <= 0.0) != (fb <= 0.0)) return refine_zero(kind, nu, a, b);
    a = b;
    fa = fb;
  }
  throw NumericalFailure("bessel zero scan failed to find a sign change");
}

double first_scan_start(ZeroKind kind, int nu) {
  // J_nu > 0 and J_nu' > 0 below their first positive zeros, so starting
  // anywhere below cannot introduce spurious sign changes.
  if (nu == 0) return kind == ZeroKind::Function ? 1.0 : 2.0;
  return static_cast<double>(nu) + 0.01;
}

class ZeroCache {
 public:
  double get(ZeroKind kind, int nu, int m) {
    const auto key = std::make_pair(static_cast<int>(kind), nu);
    {
      std::shared_lock lock(mu_);
      const auto it = table_.find(key);
      if (it != table_.end() && static_cast<int>(it->second.size()) >= m)
        return it->second[static_cast<std::size_t>(m) - 1];
    }
    std::unique_lock lock(mu_);
    auto& zeros = table_[key];
    while (static_cast<int>(zeros.size()) < m) {
      const double from = zeros.empty() ? first_scan_start(kind, nu)
                                        : zeros.back() + 2.4;
      zeros.push_back(next_zero_after(kind, nu, from));
    }
    return zeros[static_cast<std::size_t>(m) - 1];
  }

 private:
  std::map<std::pair<int, int>, std::vector<double>> table_;
  std::shared_mutex mu_;
};

ZeroCache& zero_cache() {
  static ZeroCache cache;
  return cache;
}

}  // namespace

double bessel_zero(int nu, int m) {
  if (nu < 0 || m < 1) throw ValidationError("bessel_zero: need nu >= 0, m >= 1");
  return zero_cache().get(ZeroKind::Function, nu, m);
}

double bessel_derivative_zero(int nu, int m) {
  if (nu < 0 || m < 1)
    throw ValidationError("bessel_derivative_zero: need nu >= 0, m >= 1");
  if (nu == 0) return zero_cache().get(ZeroKind::Function, 1, m);  // J_0' = -J_1
  return zero_cache().get(ZeroKind::Derivative, nu, m);
}

DiskSpectrum disk_spectrum(DiskBC bc, double radius, std::int64_t k) {
  if (!(radius > 0.0)) throw ValidationError("disk_spectrum: radius must be positive");
  if (k < 1) throw ValidationError("disk_spectrum: k must be >= 1");

  DiskSpectrum out;
  out.spectrum.bc_descriptor = bc == DiskBC::Dirichlet ? "dirichlet" : "neumann";
  out.spectrum.source = cuboid::SpectrumSource::ExactDisk;
  out.spectrum.values.reserve(static_cast<std::size_t>(k));
  out.labels.reserve(static_cast<std::size_t>(k));

  if (bc == DiskBC::Neumann) {
    out.spectrum.values.push_back(0.0);
    out.labels.push_back({0, 0, 0});
  }

  auto zero_of = [&](int nu, int m) {
    return bc == DiskBC::Dirichlet ? bessel_zero(nu, m)
                                   : bessel_derivative_zero(nu, m);
  };

  struct Entry {
    double value;
    int nu;
    int m;
  };
  auto cmp = [](const Entry& a, const Entry& b) {
    if (a.value != b.value) return a.value > b.value;
    if (a.nu != b.nu) return a.nu > b.nu;
    return a.m > b.m;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> heap(cmp);

  auto push = [&](int nu, int m) {
    const double z = zero_of(nu, m) / radius;
    heap.push({z * z, nu, m});
  };
  // First zeros increase with nu >= 1 in both families, so streams can be
  // activated lazily; nu = 0 is the exception under Neumann (its first zero
  // j_{1,1} lies above j'_{1,1}), so both starting streams go in upfront.
  push(0, 1);
  int max_active_nu = 1;
  if (bc == DiskBC::Neumann)
    push(1, 1);
  else
    max_active_nu = 0;

  while (static_cast<std::int64_t>(out.spectrum.values.size()) < k) {
    const Entry e = heap.top();
    heap.pop();
    const int mult = e.nu == 0 ? 1 : 2;
    for (int b = 0; b < mult &&
                    static_cast<std::int64_t>(out.spectrum.values.size()) < k;
         ++b) {
      out.spectrum.values.push_back(e.value);
      out.labels.push_back({e.nu, e.m, b});
    }
    push(e.nu, e.m + 1);
    if (e.m == 1 && e.nu == max_active_nu) {
      ++max_active_nu;
      push(max_active_nu, 1);
    }
  }
  return out;
}

namespace {

// Boundary-condition family used for the merge precondition.
std::string bc_family(const cuboid::Spectrum& s) {
  if (s.bc_descriptor == "dirichlet" || s.bc_descriptor == "neumann")
    return s.bc_descriptor;
  if (!s.bc_descriptor.empty() && s.bc_descriptor.front() == '(') {
    // Cuboid signature "(a,b,c)": pure Dirichlet iff b=c=0, etc.
    int a = 0, b = 0, c = 0;
    if (std::sscanf(s.bc_descriptor.c_str(), "(%d,%d,%d)", &a, &b, &c) == 3) {
      if (b == 0 && c == 0) return "dirichlet";
      if (a == 0 && c == 0) return "neumann";
    }
  }
  return s.bc_descriptor;
}

}  // namespace

cuboid::Spectrum merge_spectra(const std::vector<cuboid::Spectrum>& parts) {
  if (parts.empty()) throw ValidationError("merge_spectra: no parts");
  const std::string family = bc_family(parts.front());
  cuboid::Spectrum out;
  out.bc_descriptor = family;
  out.source = parts.front().source;
  for (const auto& p : parts) {
    if (bc_family(p) != family)
      throw ValidationError("merge_spectra: mixed boundary-condition families");
    out.values.insert(out.values.end(), p.values.begin(), p.values.end());
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

cuboid::Spectrum merge_copies(const cuboid::Spectrum& part, std::int64_t copies,
                              std::int64_t k) {
  if (copies < 1 || k < 1) throw ValidationError("merge_copies: bad arguments");
  const std::int64_t needed = (k + copies - 1) / copies;
  if (static_cast<std::int64_t>(part.values.size()) < needed)
    throw ValidationError("merge_copies: part spectrum too short");
  cuboid::Spectrum out;
  out.bc_descriptor = part.bc_descriptor;
  out.source = part.source;
  out.values.reserve(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i)
    out.values.push_back(part.values[static_cast<std::size_t>(i / copies)]);
  return out;
}

}  // namespace spectra::refspec
