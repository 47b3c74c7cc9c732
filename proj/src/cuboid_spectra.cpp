#include "spectra/cuboid_spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <queue>
#include <unordered_set>

#include "spectra/errors.hpp"

namespace spectra::cuboid {

IntervalBC to_interval_bc(geom::AxisBC bc) {
  switch (bc) {
    case geom::AxisBC::DirichletBoth: return IntervalBC::Dirichlet;
    case geom::AxisBC::NeumannBoth: return IntervalBC::Neumann;
    case geom::AxisBC::Mixed: return IntervalBC::Mixed;
  }
  return IntervalBC::Dirichlet;
}

double interval_eigenvalue(IntervalBC bc, std::int64_t k, double length) {
  if (k < 1) throw ValidationError("interval_eigenvalue: k must be >= 1");
  if (!(length > 0.0)) throw ValidationError("interval_eigenvalue: length must be positive");
  double mode = 0.0;
  switch (bc) {
    case IntervalBC::Dirichlet: mode = static_cast<double>(k); break;
    case IntervalBC::Neumann: mode = static_cast<double>(k - 1); break;
    case IntervalBC::Mixed: mode = static_cast<double>(k) - 0.5; break;
  }
  const double f = geom::kPi * mode / length;
  return f * f;
}

double weyl_constant(int d) {
  return 4.0 * geom::kPi * geom::kPi *
         std::pow(geom::unit_ball_volume(d), -2.0 / d);
}

namespace {

constexpr int kMaxDim = 8;

using Index = std::array<std::uint32_t, kMaxDim>;

struct IndexHash {
  std::size_t operator()(const Index& a) const {
    std::size_t h = 1469598103934665603ull;
    for (std::uint32_t v : a) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Per-axis eigenvalue tables, grown on demand so every use of sigma_j(i)
// sees the identical bit pattern.
class SigmaTable {
 public:
  explicit SigmaTable(const geom::Cuboid& box) : box_(box) {
    table_.resize(static_cast<std::size_t>(box.dim()));
  }

  double operator()(int axis, std::uint32_t i) {
    auto& col = table_[static_cast<std::size_t>(axis)];
    while (col.size() < i)
      col.push_back(interval_eigenvalue(
          to_interval_bc(box_.axis_bc()[static_cast<std::size_t>(axis)]),
          static_cast<std::int64_t>(col.size()) + 1,
          box_.sides()[static_cast<std::size_t>(axis)]));
    return col[i - 1];
  }

  std::size_t bytes() const {
    std::size_t n = 0;
    for (const auto& col : table_) n += col.size() * sizeof(double);
    return n;
  }

 private:
  const geom::Cuboid& box_;
  std::vector<std::vector<double>> table_;
};

struct HeapEntry {
  double value;
  Index idx;
};

struct HeapGreater {
  int d;
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    if (a.value != b.value) return a.value > b.value;
    // Ties broken lexicographically for deterministic pop order.
    for (int j = 0; j < d; ++j)
      if (a.idx[static_cast<std::size_t>(j)] != b.idx[static_cast<std::size_t>(j)])
        return a.idx[static_cast<std::size_t>(j)] > b.idx[static_cast<std::size_t>(j)];
    return false;
  }
};

}  // namespace

Spectrum spectrum_prefix(const geom::Cuboid& box, std::int64_t k,
                         const EnumerationLimits& limits) {
  if (k < 1) throw ValidationError("spectrum_prefix: k must be >= 1");
  const int d = box.dim();
  if (d > kMaxDim)
    throw ValidationError("spectrum_prefix: dimension exceeds supported maximum");

  SigmaTable sigma(box);
  auto value_of = [&](const Index& idx) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += sigma(j, idx[static_cast<std::size_t>(j)]);
    return s;
  };

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapGreater> heap(
      HeapGreater{d});
  std::unordered_set<Index, IndexHash> visited;

  Index start{};
  for (int j = 0; j < d; ++j) start[static_cast<std::size_t>(j)] = 1;
  heap.push({value_of(start), start});
  visited.insert(start);

  // Rough per-entry cost for the budget: heap entry + visited-set node.
  const std::size_t entry_bytes = sizeof(HeapEntry) + sizeof(Index) + 48;

  Spectrum out;
  out.values.reserve(static_cast<std::size_t>(k));
  out.bc_descriptor = geom::to_string(box.signature());
  out.source = d == 1 ? SpectrumSource::ExactInterval : SpectrumSource::ExactCuboid;

  while (static_cast<std::int64_t>(out.values.size()) < k) {
    if (heap.empty())
      throw NumericalFailure("spectrum_prefix: exhausted heap (internal error)");
    const HeapEntry top = heap.top();
    heap.pop();
    out.values.push_back(top.value);
    for (int j = 0; j < d; ++j) {
      Index next = top.idx;
      ++next[static_cast<std::size_t>(j)];
      if (visited.insert(next).second) heap.push({value_of(next), next});
    }
    if (visited.size() * entry_bytes + sigma.bytes() > limits.max_bytes)
      throw ResourceLimit("spectrum_prefix: memory budget exceeded");
  }
  return out;
}

double kth_eigenvalue(const geom::Cuboid& box, std::int64_t k,
                      const EnumerationLimits& limits) {
  return spectrum_prefix(box, k, limits).values.back();
}

std::int64_t counting(const geom::Cuboid& box, double alpha) {
  if (!(alpha >= 0.0)) throw ValidationError("counting: alpha must be >= 0");
  const int d = box.dim();
  SigmaTable sigma(box);

  // Depth-first truncation; partial sums accumulate in ascending-axis order,
  // matching the arithmetic of spectrum_prefix exactly.
  std::function<std::int64_t(int, double)> count_from = [&](int axis,
                                                            double partial) {
    std::int64_t total = 0;
    for (std::uint32_t i = 1;; ++i) {
      const double s = partial + sigma(axis, i);
      if (!(s < alpha)) break;  // remaining axes contribute >= 0
      if (axis + 1 == d)
        ++total;
      else
        total += count_from(axis + 1, s);
      // Neumann's first mode is 0; subsequent modes strictly increase, so
      // the loop always terminates once s >= alpha.
    }
    return total;
  };
  return count_from(0, 0.0);
}

PolyaReport polya_check(const geom::Cuboid& box, std::int64_t k_max) {
  if (k_max < 1) throw ValidationError("polya_check: k_max must be >= 1");
  const int d = box.dim();
  const double wd = weyl_constant(d);
  const double vol_pow = std::pow(box.volume(), -2.0 / d);

  const Spectrum mu = spectrum_prefix(
      geom::Cuboid::uniform_bc(box.sides(), geom::AxisBC::NeumannBoth), k_max + 1);
  const Spectrum lambda = spectrum_prefix(
      geom::Cuboid::uniform_bc(box.sides(), geom::AxisBC::DirichletBoth), k_max);

  PolyaReport report;
  report.checked_k_max = k_max;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    const double weyl = wd * std::pow(static_cast<double>(k), 2.0 / d) * vol_pow;
    if (mu.values[static_cast<std::size_t>(k)] > weyl) {
      report.violated = true;
      report.first_violation_k = k;
      report.side = "neumann";
      return report;
    }
    if (lambda.values[static_cast<std::size_t>(k - 1)] < weyl) {
      report.violated = true;
      report.first_violation_k = k;
      report.side = "dirichlet";
      return report;
    }
  }
  return report;
}

}  // namespace spectra::cuboid
