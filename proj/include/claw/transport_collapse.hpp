#pragma once
/**
 * @file transport_collapse.hpp
 * @brief The transport-collapse time step T_h, its iteration S_h with convex
 * interpolation at fractional times, classical characteristics, and the two
 * closed-form oracles (entropy shock, Burgers rarefaction).
 *
 * In quantile coordinates a step moves the particle at node w_i by
 * h * f'(w_i) and then sorts. The sort is the collapse: the CDF of the
 * pushed-forward Lebesgue measure has the sorted values as its quantile.
 * The speed is evaluated at the Lagrangian label w_i, never at a local
 * solution value.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "claw/errors.hpp"
#include "claw/flux.hpp"
#include "claw/measure.hpp"

namespace claw {

/// Transported positions indexed by quantile node; not necessarily sorted.
struct RawPositions {
  std::vector<double> positions;
};

/// f'(w_i) at the N midpoint nodes.
inline std::vector<double> node_speeds(const FluxModel& flux, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = flux.f_prime(quantile_node(i, n));
  return v;
}

inline RawPositions transport(const ParticleQuantiles& pq, std::span<const double> speeds,
                              double h) {
  if (!(h >= 0.0)) throw DomainError("transport: step must be >= 0");
  if (speeds.size() != pq.size()) throw SizeMismatch(pq.size(), speeds.size());
  RawPositions raw{std::vector<double>(pq.positions().begin(), pq.positions().end())};
  for (std::size_t i = 0; i < raw.positions.size(); ++i) raw.positions[i] += h * speeds[i];
  return raw;
}

inline RawPositions transport(const ParticleQuantiles& pq, const FluxModel& flux, double h) {
  return transport(pq, node_speeds(flux, pq.size()), h);
}

inline ParticleQuantiles collapse(RawPositions raw) {
  std::stable_sort(raw.positions.begin(), raw.positions.end());
  return ParticleQuantiles(std::move(raw.positions));
}

inline ParticleQuantiles th_step(const ParticleQuantiles& pq, const FluxModel& flux, double h) {
  return collapse(transport(pq, flux, h));
}

/// T_h with node speeds computed once, for repeated stepping at fixed N.
class TransportCollapseStep {
 public:
  TransportCollapseStep(const FluxModel& flux, std::size_t n, double h)
      : speeds_(node_speeds(flux, n)), h_(h) {
    if (!(h >= 0.0)) throw DomainError("transport-collapse step must be >= 0");
  }
  ParticleQuantiles operator()(const ParticleQuantiles& pq) const {
    return collapse(transport(pq, speeds_, h_));
  }

 private:
  std::vector<double> speeds_;
  double h_;
};

/// t = (steps + s) * h with 0 <= s < 1.
struct TimeSplit {
  std::size_t steps;
  double s;
};

inline TimeSplit split_time(double t, double h) {
  if (!(h > 0.0)) throw DomainError("time step must be > 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
  const double q = t / h;
  double whole = std::floor(q);
  double s = q - whole;
  if (s >= 1.0 - 1e-12) {
    whole += 1.0;
    s = 0.0;
  }
  return {static_cast<std::size_t>(whole), s};
}

struct SchemeState {
  ParticleQuantiles base;  // T_h^N v
  ParticleQuantiles next;  // T_h^{N+1} v
  double s;
  double h;
  std::size_t steps_taken;
  FluxModel flux;

  double time() const { return (static_cast<double>(steps_taken) + s) * h; }
};

inline MixtureState sh_as_cdf(const SchemeState& state) {
  return MixtureState(state.base, state.next, state.s);
}

/// Marches a one-step map forward and serves states at nondecreasing times
/// without recomputing the trajectory.
template <class Step>
class Trajectory {
 public:
  Trajectory(ParticleQuantiles initial, Step step, double h)
      : step_(std::move(step)), h_(h), steps_(0), base_(std::move(initial)), next_(step_(base_)) {
    if (!(h > 0.0)) throw DomainError("time step must be > 0");
  }

  /// State at time t; t must not decrease between calls.
  MixtureState at(double t) {
    const auto split = split_time(t, h_);
    if (split.steps < steps_) throw std::invalid_argument("Trajectory: time went backwards");
    while (steps_ < split.steps) advance();
    return MixtureState(base_, next_, split.s);
  }

  void advance() {
    base_ = std::move(next_);
    next_ = step_(base_);
    ++steps_;
  }

  std::size_t steps() const { return steps_; }
  const ParticleQuantiles& base() const { return base_; }
  const ParticleQuantiles& next() const { return next_; }
  double h() const { return h_; }

 private:
  Step step_;
  double h_;
  std::size_t steps_;
  ParticleQuantiles base_;
  ParticleQuantiles next_;
};

inline SchemeState evolve_sh(const ParticleQuantiles& pq0, const FluxModel& flux, double h,
                             double t) {
  const auto split = split_time(t, h);
  Trajectory traj(pq0, TransportCollapseStep(flux, pq0.size(), h), h);
  while (traj.steps() < split.steps) traj.advance();
  return SchemeState{traj.base(), traj.next(), split.s, h, split.steps, flux};
}

/// X(t, w_i) = X(0, w_i) + t f'(w_i), valid while the result stays sorted.
inline ParticleQuantiles classical_characteristics(const ParticleQuantiles& pq0,
                                                   const FluxModel& flux, double t) {
  if (!(t >= 0.0)) throw DomainError("classical_characteristics: time must be >= 0");
  auto raw = transport(pq0, flux, t);
  for (std::size_t i = 0; i + 1 < raw.positions.size(); ++i) {
    if (raw.positions[i + 1] < raw.positions[i]) throw NonClassicalError(i, t);
  }
  return ParticleQuantiles(std::move(raw.positions));
}

/// Entropy shock from the jump 0 -> 1 located at @p x0: Heaviside at
/// x0 + (f(1) - f(0)) t. Requires f' nonincreasing on [0,1].
inline StepCdf exact_shock_cdf(const FluxModel& flux, double t, double x0 = 0.0) {
  if (!(t >= 0.0)) throw DomainError("exact_shock_cdf: time must be >= 0");
  constexpr int kSamples = 1000;
  double prev = flux.f_prime(0.0);
  for (int k = 1; k <= kSamples; ++k) {
    const double cur = flux.f_prime(static_cast<double>(k) / kSamples);
    if (cur > prev + 1e-12) {
      throw std::invalid_argument("exact_shock_cdf: flux '" + flux.name() +
                                  "' is not shock-admissible (f' increases)");
    }
    prev = cur;
  }
  const double speed = flux.f(1.0) - flux.f(0.0);
  return StepCdf::heaviside(x0 + speed * t);
}

/// Burgers solution from u0(x) = clamp(x, 0, 1): the uniform distribution on
/// [0, 1 + t], discretized by @p resolution equal-mass midpoint atoms.
inline StepCdf exact_rarefaction_cdf(double t, std::size_t resolution = 4097) {
  if (!(t >= 0.0)) throw DomainError("exact_rarefaction_cdf: time must be >= 0");
  if (resolution == 0) throw std::invalid_argument("exact_rarefaction_cdf: resolution >= 1");
  return cdf_from_particles(ParticleQuantiles::uniform(0.0, 1.0 + t, resolution));
}

}  // namespace claw
