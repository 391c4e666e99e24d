#pragma once
/**
 * @file measure.hpp
 * @brief Probability measures on the real line seen two ways: as
 * right-continuous CDFs (StepCdf) and as equal-mass sorted particle systems
 * (ParticleQuantiles), plus the convex combination of two particle systems
 * (MixtureState) used at fractional times of the scheme.
 *
 * Conversion between the views goes through the generalized inverse
 * v^{-1}(w) = inf{x : v(x) > w}. Particle i (zero based) of an N-particle
 * system sits at quantile node w_i = (i + 1/2) / N and carries mass 1/N.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "claw/errors.hpp"

namespace claw {

/// Midpoint quantile node of particle @p i (zero based) out of @p n.
inline double quantile_node(std::size_t i, std::size_t n) {
  return (static_cast<double>(i) + 0.5) / static_cast<double>(n);
}

inline void require_open_unit(double w, const char* what) {
  if (!(w > 0.0 && w < 1.0)) {
    throw DomainError(std::string(what) + ": level " + std::to_string(w) +
                      " outside (0,1)");
  }
}

/// Right-continuous nondecreasing step function with limits 0 and 1.
///
/// Value is 0 on (-inf, x_0), values[k] on [x_k, x_{k+1}) and 1 on
/// [x_{K-1}, inf).
class StepCdf {
 public:
  StepCdf(std::vector<double> breakpoints, std::vector<double> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.empty()) {
      throw std::invalid_argument("StepCdf: needs at least one breakpoint");
    }
    if (breakpoints_.size() != values_.size()) {
      throw std::invalid_argument("StepCdf: breakpoints/values size mismatch");
    }
    for (std::size_t k = 0; k < breakpoints_.size(); ++k) {
      if (!std::isfinite(breakpoints_[k])) {
        throw std::invalid_argument("StepCdf: non-finite breakpoint");
      }
      if (k > 0 && !(breakpoints_[k] > breakpoints_[k - 1])) {
        throw std::invalid_argument("StepCdf: breakpoints not strictly ascending");
      }
      if (!(values_[k] >= 0.0 && values_[k] <= 1.0)) {
        throw std::invalid_argument("StepCdf: value outside [0,1]");
      }
      if (k > 0 && values_[k] < values_[k - 1]) {
        throw std::invalid_argument("StepCdf: values decreasing");
      }
    }
    if (values_.back() != 1.0) {
      throw std::invalid_argument("StepCdf: last value must be exactly 1");
    }
  }

  static StepCdf heaviside(double at) { return StepCdf({at}, {1.0}); }

  std::span<const double> breakpoints() const { return breakpoints_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return breakpoints_.size(); }

  double operator()(double x) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it == breakpoints_.begin()) return 0.0;
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Equal-mass particle system with sorted positions; the sampled quantile
/// function of a probability measure.
class ParticleQuantiles {
 public:
  explicit ParticleQuantiles(std::vector<double> positions)
      : positions_(std::move(positions)) {
    if (positions_.empty()) {
      throw std::invalid_argument("ParticleQuantiles: needs at least one particle");
    }
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      if (!std::isfinite(positions_[i])) {
        throw std::invalid_argument("ParticleQuantiles: non-finite position");
      }
      if (i > 0 && positions_[i] < positions_[i - 1]) {
        throw std::invalid_argument("ParticleQuantiles: positions not sorted");
      }
    }
  }

  static ParticleQuantiles dirac(double at, std::size_t n) {
    return ParticleQuantiles(std::vector<double>(n, at));
  }

  /// Midpoint sample of the uniform distribution on [a, b].
  static ParticleQuantiles uniform(double a, double b, std::size_t n) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = a + (b - a) * quantile_node(i, n);
    return ParticleQuantiles(std::move(x));
  }

  std::size_t size() const { return positions_.size(); }
  std::span<const double> positions() const { return positions_; }
  double operator[](std::size_t i) const { return positions_[i]; }
  double node(std::size_t i) const { return quantile_node(i, size()); }

  double front() const { return positions_.front(); }
  double back() const { return positions_.back(); }

  /// Fraction of particles at or left of x (right-continuous CDF).
  double cdf(double x) const {
    auto it = std::upper_bound(positions_.begin(), positions_.end(), x);
    return static_cast<double>(it - positions_.begin()) /
           static_cast<double>(size());
  }

  friend bool operator==(const ParticleQuantiles&, const ParticleQuantiles&) = default;

 private:
  std::vector<double> positions_;
};

/// (1 - s) * F_low + s * F_high for two particle systems of equal size.
class MixtureState {
 public:
  MixtureState(ParticleQuantiles low, ParticleQuantiles high, double s)
      : low_(std::move(low)), high_(std::move(high)), s_(s) {
    if (low_.size() != high_.size()) throw SizeMismatch(low_.size(), high_.size());
    if (!(s_ >= 0.0 && s_ < 1.0)) {
      throw std::invalid_argument("MixtureState: weight must lie in [0,1)");
    }
  }

  const ParticleQuantiles& low() const { return low_; }
  const ParticleQuantiles& high() const { return high_; }
  double s() const { return s_; }

  double operator()(double x) const {
    if (s_ == 0.0) return low_.cdf(x);
    return (1.0 - s_) * low_.cdf(x) + s_ * high_.cdf(x);
  }

 private:
  ParticleQuantiles low_;
  ParticleQuantiles high_;
  double s_;
};

// --- operations -------------------------------------------------------------

/// inf{x : cdf(x) > w} for w in (0,1).
inline double generalized_inverse(const StepCdf& cdf, double w) {
  require_open_unit(w, "generalized_inverse");
  auto v = cdf.values();
  auto it = std::upper_bound(v.begin(), v.end(), w);
  // last value is 1 > w, so `it` is always dereferenceable
  return cdf.breakpoints()[static_cast<std::size_t>(it - v.begin())];
}

inline StepCdf cdf_from_particles(const ParticleQuantiles& pq) {
  const auto x = pq.positions();
  const double n = static_cast<double>(pq.size());
  std::vector<double> bp;
  std::vector<double> val;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i + 1 < x.size() && x[i + 1] == x[i]) continue;
    bp.push_back(x[i]);
    val.push_back(static_cast<double>(i + 1) / n);
  }
  val.back() = 1.0;
  return StepCdf(std::move(bp), std::move(val));
}

inline ParticleQuantiles particles_from_cdf(const StepCdf& cdf, std::size_t n) {
  if (n == 0) throw std::invalid_argument("particles_from_cdf: n must be >= 1");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = generalized_inverse(cdf, quantile_node(i, n));
  return ParticleQuantiles(std::move(x));
}

inline double eval_cdf(const StepCdf& cdf, double x) { return cdf(x); }
inline double eval_cdf(const MixtureState& ms, double x) { return ms(x); }
inline double eval_cdf(const ParticleQuantiles& pq, double x) { return pq.cdf(x); }

/// Exact step-function form of a mixture: jumps at the union of both
/// particle sets.
inline StepCdf to_step_cdf(const MixtureState& ms) {
  if (ms.s() == 0.0) return cdf_from_particles(ms.low());
  const auto a = ms.low().positions();
  const auto b = ms.high().positions();
  const double n = static_cast<double>(a.size());
  const double s = ms.s();
  std::vector<double> bp;
  std::vector<double> val;
  bp.reserve(a.size() + b.size());
  val.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    double x;
    if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
      x = a[i];
    } else {
      x = b[j];
    }
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    bp.push_back(x);
    val.push_back((1.0 - s) * (static_cast<double>(i) / n) +
                  s * (static_cast<double>(j) / n));
  }
  for (double& v : val) v = std::min(v, 1.0);
  val.back() = 1.0;
  return StepCdf(std::move(bp), std::move(val));
}

inline StepCdf to_step_cdf(const StepCdf& cdf) { return cdf; }
inline StepCdf to_step_cdf(const ParticleQuantiles& pq) { return cdf_from_particles(pq); }

inline double mixture_quantile(const MixtureState& ms, double w) {
  require_open_unit(w, "mixture_quantile");
  return generalized_inverse(to_step_cdf(ms), w);
}

/// (1/N) sum |x_i|^p.
inline double moment(const ParticleQuantiles& pq, double p) {
  if (!(p >= 1.0)) throw DomainError("moment: order must be >= 1");
  double acc = 0.0;
  for (double x : pq.positions()) acc += std::pow(std::abs(x), p);
  return acc / static_cast<double>(pq.size());
}

/// (1/N) sum over |x_i| >= R of |x_i|^p.
inline double tail_moment(const ParticleQuantiles& pq, double p, double radius) {
  if (!(p >= 1.0)) throw DomainError("tail_moment: order must be >= 1");
  if (!(radius >= 0.0)) throw DomainError("tail_moment: radius must be >= 0");
  double acc = 0.0;
  for (double x : pq.positions()) {
    if (std::abs(x) >= radius) acc += std::pow(std::abs(x), p);
  }
  return acc / static_cast<double>(pq.size());
}

}  // namespace claw
