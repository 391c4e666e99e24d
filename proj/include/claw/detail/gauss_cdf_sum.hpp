#pragma once
// Fast evaluation of F(x) = (1/N) sum_j Phi((x - x_j) / sigma) and F'(x) for
// sorted centers x_j.
//
// Work happens in scaled coordinates xi = (x - x_0) / sigma on a grid of unit
// boxes. A nonempty source box b with center c_b stores the moments
//   a_b[k] = (1/N) sum_{j in b} (c_b - xi_j)^k / k!,
// and a target box d with center e_d receives the local Taylor coefficients
//   C_d[m] = sum_b sum_k a_b[k] Phi^{(k+m)}(e_d - c_b)  (+ mass of far-left boxes),
// so that F(xi) = sum_m C_d[m] (xi - e_d)^m / m! inside box d. Box-center
// offsets are integers, which makes Phi^{(n)}(l) a fixed table. Boxes farther
// than kReach apart contribute exactly 0 or their full mass (Phi(-9) < 2e-19).
// Sparse neighborhoods are summed directly instead.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <unordered_map>
#include <vector>

namespace claw::detail {

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z * std::numbers::sqrt2 / 2.0); }

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) * (std::numbers::inv_sqrtpi / std::numbers::sqrt2);
}

class GaussCdfSum {
 public:
  static constexpr int kOrder = 20;
  static constexpr std::int64_t kReach = 9;
  static constexpr std::size_t kDirectLimit = 64;

  struct Value {
    double cdf;
    double density;
  };

  GaussCdfSum(std::span<const double> sorted_centers, double sigma)
      : x_(sorted_centers), sigma_(sigma), origin_(sorted_centers.front()) {
    const double n = static_cast<double>(x_.size());
    // past ~2^52 boxes the integer grid loses meaning; stay on the direct path
    use_boxes_ = (x_.back() - origin_) / sigma_ < 1e12;
    if (!use_boxes_) return;
    for (std::size_t j = 0; j < x_.size(); ++j) {
      const double xi = (x_[j] - origin_) / sigma_;
      const auto b = static_cast<std::int64_t>(std::floor(xi));
      if (box_.empty() || box_.back() != b) {
        box_.push_back(b);
        first_.push_back(j);
        moments_.push_back({});
      }
      const double v = (static_cast<double>(b) + 0.5) - xi;
      double term = 1.0 / n;
      auto& a = moments_.back();
      for (int k = 0; k < kOrder; ++k) {
        a[k] += term;
        term *= v / (k + 1);
      }
    }
    first_.push_back(x_.size());
  }

  Value operator()(double x) const {
    if (!use_boxes_) return direct(x, 0, x_.size(), 0);
    const double xi = (x - origin_) / sigma_;
    if (!(std::abs(xi) < 1e15)) return direct(x, 0, x_.size(), 0);
    const auto d = static_cast<std::int64_t>(std::floor(xi));
    const Target& t = target(d);
    if (!t.expansion) return direct(x, first_[t.lo], first_[t.hi], first_[t.lo]);

    const auto& e = *t.expansion;
    const double y = xi - (static_cast<double>(d) + 0.5);
    double f = e.value[kOrder - 1];
    double df = e.slope[kOrder - 2];
    for (int m = kOrder - 2; m >= 0; --m) f = f * y + e.value[m];
    for (int m = kOrder - 3; m >= 0; --m) df = df * y + e.slope[m];
    return {f, df / sigma_};
  }

  /// Reference O(N) sum, independent of the box machinery.
  Value direct(double x) const { return direct(x, 0, x_.size(), 0); }

 private:
  using Coeffs = std::array<double, kOrder>;

  // Taylor coefficients divided by m!, for F and for dF/dxi.
  struct Expansion {
    Coeffs value;
    Coeffs slope;
  };

  struct Target {
    std::int64_t box = 0;
    std::size_t lo = 0;
    std::size_t hi = 0;
    const Expansion* expansion = nullptr;
  };

  static constexpr std::size_t kTableDerivs = 2 * kOrder - 1;
  using Table = std::array<std::array<double, kTableDerivs>, 2 * kReach + 1>;

  // Phi^{(n)}(l) for integer l in [-kReach, kReach], n < 2 kOrder - 1.
  static const Table& derivative_table() {
    static const Table table = [] {
      Table t{};
      for (std::int64_t l = -kReach; l <= kReach; ++l) {
        const double z = static_cast<double>(l);
        auto& row = t[static_cast<std::size_t>(l + kReach)];
        row[0] = normal_cdf(z);
        // Phi^{(n)} = (-1)^{n-1} He_{n-1} phi
        const double phi = normal_pdf(z);
        double he_prev = 0.0;
        double he = 1.0;
        for (std::size_t n = 1; n < kTableDerivs; ++n) {
          row[n] = ((n - 1) % 2 == 0 ? 1.0 : -1.0) * he * phi;
          const double he_next = z * he - static_cast<double>(n - 1) * he_prev;
          he_prev = he;
          he = he_next;
        }
      }
      return t;
    }();
    return table;
  }

  std::size_t lower_box(std::int64_t b) const {
    return static_cast<std::size_t>(std::lower_bound(box_.begin(), box_.end(), b) - box_.begin());
  }

  const Target& target(std::int64_t d) const {
    if (last_valid_ && last_.box == d) return last_;
    Target t;
    t.box = d;
    t.lo = lower_box(d - kReach);
    t.hi = lower_box(d + kReach + 1);
    if (first_[t.hi] - first_[t.lo] > kDirectLimit) t.expansion = &expansion(d, t.lo, t.hi);
    last_ = t;
    last_valid_ = true;
    return last_;
  }

  const Expansion& expansion(std::int64_t d, std::size_t lo, std::size_t hi) const {
    if (auto it = cache_.find(d); it != cache_.end()) return it->second;
    const auto& table = derivative_table();
    Coeffs c{};
    for (std::size_t b = lo; b < hi; ++b) {
      const auto& row = table[static_cast<std::size_t>(d - box_[b] + kReach)];
      const auto& a = moments_[b];
      for (int m = 0; m < kOrder; ++m) {
        double acc = 0.0;
        for (int k = 0; k < kOrder; ++k) acc += a[k] * row[k + m];
        c[m] += acc;
      }
    }
    c[0] += static_cast<double>(first_[lo]) / static_cast<double>(x_.size());
    Expansion e{};
    double fact = 1.0;
    for (int m = 0; m < kOrder; ++m) {
      e.value[m] = c[m] / fact;
      if (m + 1 < kOrder) e.slope[m] = c[m + 1] / fact;
      fact *= m + 1;
    }
    return cache_.emplace(d, e).first->second;
  }

  // Window [begin, end) summed term by term; everything before begin counts
  // as fully to the left.
  Value direct(double x, std::size_t begin, std::size_t end, std::size_t below) const {
    double f = static_cast<double>(below);
    double dens = 0.0;
    for (std::size_t j = begin; j < end; ++j) {
      const double z = (x - x_[j]) / sigma_;
      f += normal_cdf(z);
      dens += normal_pdf(z);
    }
    const double n = static_cast<double>(x_.size());
    return {f / n, dens / (n * sigma_)};
  }

  std::span<const double> x_;
  double sigma_;
  double origin_;
  bool use_boxes_ = false;
  std::vector<std::int64_t> box_;
  std::vector<std::size_t> first_;
  std::vector<Coeffs> moments_;
  // node-based map: references stay valid across inserts
  mutable std::unordered_map<std::int64_t, Expansion> cache_;
  mutable Target last_;
  mutable bool last_valid_ = false;
};

}  // namespace claw::detail
