#include "spectra/counting_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "spectra/errors.hpp"

namespace spectra::bounds {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::NeumannCountUpper: return "neumann_count_upper";
    case CertificateKind::DirichletCountLower: return "dirichlet_count_lower";
    case CertificateKind::NeumannEigLower: return "neumann_eig_lower";
    case CertificateKind::DirichletEigUpper: return "dirichlet_eig_upper";
    case CertificateKind::ZarembaCuboidLower: return "zaremba_cuboid_lower";
    case CertificateKind::N2Certificate: return "n2_certificate";
  }
  return "?";
}

namespace {

double unit_cube_eigenvalue(int d, geom::AxisBC bc, std::int64_t index) {
  static std::map<std::tuple<int, int, std::int64_t>, double> cache;
  static std::mutex mu;
  const auto key = std::make_tuple(d, static_cast<int>(bc), index);
  std::lock_guard lock(mu);
  const auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const geom::Cuboid cube =
      geom::Cuboid::uniform_bc(std::vector<double>(static_cast<std::size_t>(d), 1.0), bc);
  const double v = cuboid::kth_eigenvalue(cube, index);
  cache.emplace(key, v);
  return v;
}

void require_quermass(const geom::QuermassData& q) {
  if (q.d < 2) throw ValidationError("counting bound: dimension must be >= 2");
  if (q.d >= 3 && static_cast<int>(q.s.size()) != q.d - 2)
    throw UnsupportedShape(
        "counting bound: quermassintegrals s_2..s_{d-1} required for d >= 3");
  if (!(q.volume > 0.0) || !(q.surface > 0.0))
    throw ValidationError("counting bound: degenerate quermass data");
}

}  // namespace

double unit_cube_neumann(int d, std::int64_t index) {
  return unit_cube_eigenvalue(d, geom::AxisBC::NeumannBoth, index);
}

double unit_cube_dirichlet(int d, std::int64_t index) {
  return unit_cube_eigenvalue(d, geom::AxisBC::DirichletBoth, index);
}

int default_refinement(std::int64_t k) {
  const auto n = static_cast<std::int64_t>(std::sqrt(static_cast<double>(k)) / 4.0);
  return static_cast<int>(std::clamp<std::int64_t>(n, 1, 64));
}

BoundCertificate neumann_count_upper(const geom::QuermassData& q, double alpha,
                                     int n) {
  if (!(alpha > 0.0)) throw ValidationError("neumann_count_upper: alpha must be > 0");
  if (n < 1) throw ValidationError("neumann_count_upper: n must be >= 1");
  require_quermass(q);

  const int d = q.d;
  const double mu_star = unit_cube_neumann(d, n + 1);
  const double kappa = std::ceil(std::sqrt(d * mu_star) / geom::kPi);
  const double kappa_over_root = kappa / std::sqrt(mu_star);

  double bound = n * q.volume * std::pow(alpha / mu_star, 0.5 * d);
  bound += std::pow(kappa_over_root, d - 1) * (2.0 * kappa + 3.0) *
           std::sqrt(static_cast<double>(d)) * q.surface *
           std::pow(alpha, 0.5 * (d - 1));
  for (int j = 2; j <= d - 1; ++j) {
    bound += geom::binomial(d, j) * std::pow(4.0 * d, 0.5 * j) *
             std::pow(kappa_over_root, d - j) * q.s[static_cast<std::size_t>(j - 2)] *
             std::pow(alpha, 0.5 * (d - j));
  }
  bound += std::pow(4.0 * d, 0.5 * d) * q.omega_d;

  BoundCertificate cert;
  cert.kind = CertificateKind::NeumannCountUpper;
  cert.alpha_or_k = alpha;
  cert.value = bound;
  cert.n = n;
  cert.d = d;
  cert.mu_star = mu_star;
  cert.kappa_n = static_cast<long>(kappa);
  cert.quermass = q;
  return cert;
}

BoundCertificate dirichlet_count_lower(const geom::QuermassData& q, double alpha,
                                       int n) {
  if (!(alpha > 0.0)) throw ValidationError("dirichlet_count_lower: alpha must be > 0");
  if (n < 1) throw ValidationError("dirichlet_count_lower: n must be >= 1");
  require_quermass(q);

  const int d = q.d;
  const double lambda_star = unit_cube_dirichlet(d, n);
  const double shifted = lambda_star + 1.0 / n;
  double bound = n * q.volume * std::pow(alpha / shifted, 0.5 * d) -
                 2.0 * n * std::sqrt(static_cast<double>(d)) * q.surface *
                     std::pow(alpha / shifted, 0.5 * (d - 1));
  bound = std::max(bound, 0.0);

  BoundCertificate cert;
  cert.kind = CertificateKind::DirichletCountLower;
  cert.alpha_or_k = alpha;
  cert.value = bound;
  cert.n = n;
  cert.d = d;
  cert.lambda_star = lambda_star;
  cert.quermass = q;
  return cert;
}

BoundCertificate neumann_eig_lower(const geom::QuermassData& q, std::int64_t k,
                                   int n) {
  if (k < 1) throw ValidationError("neumann_eig_lower: k must be >= 1");
  require_quermass(q);
  const double kd = static_cast<double>(k);

  BoundCertificate cert;
  cert.kind = CertificateKind::NeumannEigLower;
  cert.alpha_or_k = kd;
  cert.n = n;
  cert.d = q.d;
  cert.quermass = q;
  cert.mu_star = unit_cube_neumann(q.d, n + 1);
  cert.kappa_n = static_cast<long>(
      std::ceil(std::sqrt(q.d * cert.mu_star) / geom::kPi));

  // The bound is the constant (4d)^{d/2} omega_d at alpha -> 0+.
  const double at_zero = std::pow(4.0 * q.d, 0.5 * q.d) * q.omega_d;
  if (at_zero > kd) {
    cert.value = 0.0;
    return cert;
  }

  auto count_bound = [&](double alpha) {
    return neumann_count_upper(q, alpha, n).value;
  };
  double hi = 10.0 * cuboid::weyl_constant(q.d) * std::pow(kd, 2.0 / q.d) /
              std::pow(q.volume, 2.0 / q.d);
  for (int it = 0; it < 200 && count_bound(hi) <= kd; ++it) hi *= 2.0;
  double lo = 0.0;
  for (int it = 0; it < 300 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_bound(mid) <= kd)
      lo = mid;
    else
      hi = mid;
  }
  cert.value = lo;
  return cert;
}

BoundCertificate dirichlet_eig_upper(const geom::QuermassData& q, std::int64_t k,
                                     int n) {
  if (k < 1) throw ValidationError("dirichlet_eig_upper: k must be >= 1");
  require_quermass(q);
  if (!(q.volume > 0.0))
    throw Unbounded("dirichlet_eig_upper: leading coefficient nonpositive");
  const double kd = static_cast<double>(k);

  BoundCertificate cert;
  cert.kind = CertificateKind::DirichletEigUpper;
  cert.alpha_or_k = kd;
  cert.n = n;
  cert.d = q.d;
  cert.quermass = q;
  cert.lambda_star = unit_cube_dirichlet(q.d, n);

  auto count_bound = [&](double alpha) {
    return dirichlet_count_lower(q, alpha, n).value;
  };
  double hi = 10.0 * cuboid::weyl_constant(q.d) * std::pow(kd, 2.0 / q.d) /
              std::pow(q.volume, 2.0 / q.d);
  int grow = 0;
  for (; grow < 400 && count_bound(hi) < kd; ++grow) hi *= 2.0;
  if (grow == 400)
    throw Unbounded("dirichlet_eig_upper: counting lower bound cannot reach k");
  double lo = 0.0;
  for (int it = 0; it < 300 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (count_bound(mid) >= kd)
      hi = mid;
    else
      lo = mid;
  }
  cert.value = hi;
  return cert;
}

BoundCertificate zaremba_cuboid_lower(const geom::Cuboid& box, std::int64_t k) {
  if (k < 1) throw ValidationError("zaremba_cuboid_lower: k must be >= 1");
  const geom::Signature sig = box.signature();
  if (sig.b > 0)
    throw NotApplicable(
        "zaremba_cuboid_lower: reflection bound requires no Neumann-Neumann axis");
  const int d = box.dim();
  const double kd = static_cast<double>(k);

  // Reflection bound: reflect across the c mixed faces and apply the
  // Dirichlet Polya line on the doubled cuboid.
  const double reflection = std::pow(2.0, -sig.c) * cuboid::weyl_constant(d) *
                            std::pow(kd, 2.0 / d) *
                            std::pow(box.volume(), -2.0 / d);

  BoundCertificate cert;
  cert.kind = CertificateKind::ZarembaCuboidLower;
  cert.alpha_or_k = kd;
  cert.n = 0;
  cert.d = d;
  cert.quermass = quermass(box);
  cert.value = reflection;
  cert.note = "reflection";

  if (d == 2 && sig.c == 2) {
    const double measure = box.volume() + box.surface();
    if (kd >= 0.25 + measure / (4.0 * geom::kPi)) {
      const double counting = 4.0 * geom::kPi * (kd - 0.25) / measure;
      if (counting > cert.value) {
        cert.value = counting;
        cert.note = "counting";
      }
    }
  }
  return cert;
}

N2Result n2_certificate() {
  auto lhs = [](std::int64_t k) {
    return 56.0 * std::sqrt(2.0 * static_cast<double>(k)) + 8.0 * geom::kPi;
  };
  std::int64_t threshold = -1;
  for (std::int64_t k = 1; k <= 100000; ++k) {
    if (lhs(k) < static_cast<double>(k)) {
      threshold = k;
      break;
    }
  }
  if (threshold < 0)
    throw NumericalFailure("n2_certificate: scan found no threshold");

  N2Result result;
  result.threshold = threshold;
  for (std::int64_t k = threshold - 3; k <= threshold + 3; ++k) {
    if (k < 1) continue;
    result.table.push_back({k, lhs(k), lhs(k) < static_cast<double>(k)});
  }

  BoundCertificate& cert = result.certificate;
  cert.kind = CertificateKind::N2Certificate;
  cert.alpha_or_k = static_cast<double>(threshold);
  cert.value = static_cast<double>(threshold);
  cert.d = 2;
  cert.note =
      "chain: mu_k(B) <= 4 pi k / |B| = 16k for the unit-diameter disk "
      "(Polya holds for planar disk Neumann eigenvalues), so "
      "r(mu_k) <= 56 sqrt(2k) + 8 pi; minimizers exist once "
      "56 sqrt(2k) + 8 pi < k, first satisfied at k = " +
      std::to_string(threshold) +
      ". The commonly quoted value 6222 does not satisfy the inequality "
      "(LHS ~ 6272 > 6222); this scan is the certified value.";
  return result;
}

double zaremba_profile_lower(double volume, double projection_measure, double L,
                             int d, std::int64_t k, double c_dl,
                             double a_exponent) {
  if (!(volume > 0.0) || !(projection_measure > 0.0) || !(L > 0.0) || d < 2 ||
      k < 1 || !(c_dl > 0.0))
    throw ValidationError("zaremba_profile_lower: bad arguments");
  if (!(a_exponent > 0.0) || !(a_exponent < 1.0 / d))
    throw ValidationError("zaremba_profile_lower: exponent must lie in (0, 1/d)");
  const double kd = static_cast<double>(k);
  return c_dl * std::pow(kd, 2.0 / d) /
             std::pow(volume + std::pow(kd, -a_exponent), 2.0 / d) -
         projection_measure * projection_measure * std::pow(kd, 2.0 * a_exponent) -
         1.0 - (d - 1) * L * L;
}

}  // namespace spectra::bounds
