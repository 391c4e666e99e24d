#pragma once
/**
 * @file wasserstein.hpp
 * @brief Exact Wasserstein distances between probability measures on the line.
 *
 * In one dimension W_p(mu, nu)^p = int_0^1 |F^{-1}(w) - G^{-1}(w)|^p dw, and
 * the sorted (monotone) coupling is optimal. All measures handled here have
 * finitely many atoms, so both quantile functions are step functions and the
 * integral is a finite sum over the merged level partition.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "claw/measure.hpp"

namespace claw {

/// Order p >= 1 of a Wasserstein distance.
class OrderP {
 public:
  explicit OrderP(double p) : p_(p) {
    if (!std::isfinite(p) || p < 1.0) {
      throw DomainError("Wasserstein order must be finite and >= 1");
    }
  }
  double value() const { return p_; }

 private:
  double p_;
};

namespace detail {

inline double pow_abs(double d, double p) {
  d = std::abs(d);
  if (p == 1.0) return d;
  if (p == 2.0) return d * d;
  if (p == 3.0) return d * d * d;
  return std::pow(d, p);
}

inline double root(double acc, double p) {
  if (p == 1.0) return acc;
  if (p == 2.0) return std::sqrt(acc);
  return std::pow(acc, 1.0 / p);
}

}  // namespace detail

/// ((1/N) sum |a_i - b_i|^p)^{1/p} on two sorted systems of equal size.
inline double wp_particles(const ParticleQuantiles& a, const ParticleQuantiles& b, OrderP p) {
  if (a.size() != b.size()) throw SizeMismatch(a.size(), b.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += detail::pow_abs(a[i] - b[i], p.value());
  return detail::root(acc / static_cast<double>(a.size()), p.value());
}

/// int_0^1 |F^{-1} - G^{-1}|^p dw, summed exactly over the merged levels.
inline double wp_cdf(const StepCdf& f, const StepCdf& g, OrderP p) {
  const auto fx = f.breakpoints();
  const auto fv = f.values();
  const auto gx = g.breakpoints();
  const auto gv = g.values();
  std::size_t i = 0;
  std::size_t j = 0;
  double lo = 0.0;
  double acc = 0.0;
  // On [lo, hi) the quantile of F is fx[i] where i is the first index with
  // fv[i] > lo; same for G.
  while (lo < 1.0) {
    while (fv[i] <= lo) ++i;
    while (gv[j] <= lo) ++j;
    const double hi = std::min(fv[i], gv[j]);
    acc += (hi - lo) * detail::pow_abs(fx[i] - gx[j], p.value());
    lo = hi;
  }
  return detail::root(acc, p.value());
}

template <class F, class G>
double wp_cdf(const F& f, const G& g, OrderP p) {
  return wp_cdf(to_step_cdf(f), to_step_cdf(g), p);
}

/// int_R |F(x) - G(x)| dx on the merged breakpoint partition.
inline double w1_via_cdf(const StepCdf& f, const StepCdf& g) {
  const auto fx = f.breakpoints();
  const auto fv = f.values();
  const auto gx = g.breakpoints();
  const auto gv = g.values();
  std::size_t i = 0;
  std::size_t j = 0;
  double fcur = 0.0;
  double gcur = 0.0;
  double x = std::min(fx[0], gx[0]);
  double acc = 0.0;
  while (i < fx.size() || j < gx.size()) {
    const double next = (j == gx.size() || (i < fx.size() && fx[i] <= gx[j])) ? fx[i] : gx[j];
    acc += std::abs(fcur - gcur) * (next - x);
    x = next;
    if (i < fx.size() && fx[i] == x) fcur = fv[i++];
    if (j < gx.size() && gx[j] == x) gcur = gv[j++];
  }
  return acc;
}

template <class F, class G>
double w1_via_cdf(const F& f, const G& g) {
  return w1_via_cdf(to_step_cdf(f), to_step_cdf(g));
}

struct WeakConvergenceGap {
  std::vector<double> distance;
  std::vector<double> tail;
};

/// Per-element W_p distance to @p limit and tail moment at radius @p radius.
inline WeakConvergenceGap weak_convergence_gap(const std::vector<ParticleQuantiles>& seq,
                                               const ParticleQuantiles& limit, OrderP p,
                                               double radius) {
  if (seq.empty()) throw std::invalid_argument("weak_convergence_gap: empty sequence");
  WeakConvergenceGap out;
  const auto limit_cdf = cdf_from_particles(limit);
  for (const auto& x : seq) {
    out.distance.push_back(x.size() == limit.size()
                               ? wp_particles(x, limit, p)
                               : wp_cdf(cdf_from_particles(x), limit_cdf, p));
    out.tail.push_back(tail_moment(x, p.value(), radius));
  }
  return out;
}

}  // namespace claw
