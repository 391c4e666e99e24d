#pragma once
// Test-side reference computations. Each one is written from the defining
// formula and shares no code with the library beyond its value types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "claw/measure.hpp"

namespace oracle {

/// CDF value by linear scan: largest breakpoint <= x.
inline double cdf_scan(const claw::StepCdf& f, double x) {
  double v = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.breakpoints()[k] <= x) v = f.values()[k];
  }
  return v;
}

/// inf{x : F(x) > w} by scanning the breakpoints.
inline double quantile_scan(const claw::StepCdf& f, double w) {
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (f.values()[k] > w) return f.breakpoints()[k];
  }
  return std::numeric_limits<double>::infinity();
}

/// int_0^1 |F^{-1} - G^{-1}|^p dw, both quantiles constant between the union
/// of value levels; each piece evaluated at its midpoint.
inline double wp_levels(const claw::StepCdf& f, const claw::StepCdf& g, double p) {
  std::set<double> levels{0.0, 1.0};
  for (double v : f.values()) levels.insert(v);
  for (double v : g.values()) levels.insert(v);
  std::vector<double> l(levels.begin(), levels.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < l.size(); ++i) {
    const double mid = 0.5 * (l[i] + l[i + 1]);
    acc += (l[i + 1] - l[i]) * std::pow(std::abs(quantile_scan(f, mid) - quantile_scan(g, mid)), p);
  }
  return std::pow(acc, 1.0 / p);
}

/// int |F - G| dx over the union of breakpoints.
inline double l1_cdf(const claw::StepCdf& f, const claw::StepCdf& g) {
  std::set<double> xs(f.breakpoints().begin(), f.breakpoints().end());
  xs.insert(g.breakpoints().begin(), g.breakpoints().end());
  std::vector<double> x(xs.begin(), xs.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    acc += (x[i + 1] - x[i]) * std::abs(cdf_scan(f, x[i]) - cdf_scan(g, x[i]));
  }
  return acc;
}

/// min over all N! pairings of ((1/N) sum |a_i - b_pi(i)|^p)^(1/p).
inline double wp_brute_force(std::vector<double> a, std::vector<double> b, double p) {
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::pow(std::abs(a[i] - b[perm[i]]), p);
    best = std::min(best, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::pow(best / static_cast<double>(a.size()), 1.0 / p);
}

inline double phi(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Standard normal quantile by bisection on erfc; the upper half goes
/// through symmetry so both tails keep full relative accuracy.
inline double phi_inverse(double w) {
  if (w > 0.5) return -phi_inverse(1.0 - w);
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) < w ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Composite Simpson rule on [a, b] with n (even) panels.
template <class F>
double simpson(F f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

/// Simpson on each piece between consecutive breaks, for integrands that are
/// smooth only between known points.
template <class F>
double piecewise_simpson(F f, double a, double b, std::vector<double> breaks, int n = 200) {
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double lo = std::max(a, breaks[i]);
    const double hi = std::min(b, breaks[i + 1]);
    if (hi <= lo) continue;
    // evaluate strictly inside the piece: f may jump at the ends
    const double eps = 1e-13 * (hi - lo);
    acc += simpson(f, lo + eps, hi - eps, n) * (hi - lo) / (hi - lo - 2 * eps);
  }
  return acc;
}

/// Random StepCdf with 1..max_k breakpoints in [-3, 3]; values include
/// plateaus (repeated levels) about a third of the time.
inline claw::StepCdf random_step_cdf(std::mt19937_64& rng, std::size_t max_k = 20) {
  std::uniform_int_distribution<std::size_t> count(1, max_k);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t k = count(rng);
  std::set<double> xs;
  while (xs.size() < k) xs.insert(pos(rng));
  std::vector<double> v(k);
  for (auto& vi : v) vi = unit(rng) < 0.3 ? 0.5 : unit(rng);
  std::sort(v.begin(), v.end());
  v.back() = 1.0;
  return claw::StepCdf(std::vector<double>(xs.begin(), xs.end()), std::move(v));
}

/// Sorted random particles: uniform draws plus a few repeated atoms.
inline claw::ParticleQuantiles random_particles(std::mt19937_64& rng, std::size_t n,
                                                double spread = 2.0) {
  std::uniform_real_distribution<double> pos(-spread, spread);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double atom = pos(rng);
  std::vector<double> x(n);
  for (auto& xi : x) xi = unit(rng) < 0.2 ? atom : pos(rng);
  std::sort(x.begin(), x.end());
  return claw::ParticleQuantiles(std::move(x));
}

}  // namespace oracle
