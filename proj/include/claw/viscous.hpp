#pragma once
/**
 * @file viscous.hpp
 * @brief Viscous variant of the scheme: transport-collapse followed by
 * convolution with a Gaussian heat kernel, returned to the particle
 * representation by deterministic quantile resampling.
 *
 * One step with diffusivity nu and step h uses kernel variance 2 nu h, i.e.
 * sigma = sqrt(2 nu h); with nu = 1 this is K_h(z) = exp(-z^2 / 4h) / sqrt(4 pi h).
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

#include "claw/detail/gauss_cdf_sum.hpp"
#include "claw/errors.hpp"
#include "claw/flux.hpp"
#include "claw/measure.hpp"
#include "claw/transport_collapse.hpp"

namespace claw {

inline constexpr double kDefaultQuantileTol = 1e-10;

/// Inverse standard normal CDF.
inline double normal_quantile(double w) {
  require_open_unit(w, "normal_quantile");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * w);
}

/// F(x) = (1/N) sum_j Phi((x - x_j) / sigma).
struct SmoothedCdf {
  SmoothedCdf(ParticleQuantiles c, double s) : centers(std::move(c)), sigma(s) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      throw DomainError("SmoothedCdf: sigma must be finite and > 0");
    }
  }

  ParticleQuantiles centers;
  double sigma;
};

inline double smoothed_cdf_eval(const SmoothedCdf& sc, double x) {
  double acc = 0.0;
  for (double c : sc.centers.positions()) acc += detail::normal_cdf((x - c) / sc.sigma);
  return acc / static_cast<double>(sc.centers.size());
}

namespace detail {

inline void require_tol(double tol) {
  if (!(tol > 0.0)) throw DomainError("quantile tolerance must be > 0");
}

// [lo, hi] with F(lo) <= w <= F(hi) for any kernel mixture: every term is at
// most w at min + sigma z(w) and at least w at max + sigma z(w).
inline std::pair<double, double> initial_bracket(const SmoothedCdf& sc, double w) {
  const double z = sc.sigma * normal_quantile(w);
  return {sc.centers.front() + z - 1.0, sc.centers.back() + z + 1.0};
}

}  // namespace detail

/// The x with F(x) = w, by bracketing bisection to width <= tol.
inline double smoothed_quantile(const SmoothedCdf& sc, double w, double tol = kDefaultQuantileTol) {
  require_open_unit(w, "smoothed_quantile");
  detail::require_tol(tol);
  auto [lo, hi] = detail::initial_bracket(sc, w);
  double pad = 1.0;
  int widenings = 0;
  while (!(smoothed_cdf_eval(sc, lo) < w && smoothed_cdf_eval(sc, hi) >= w)) {
    if (++widenings > 128) throw NumericalError("smoothed_quantile: bracket failure");
    pad *= 2.0;
    lo -= pad;
    hi += pad;
  }
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (smoothed_cdf_eval(sc, mid) < w) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Midpoint-node quantiles of the Gaussian-smoothed particle measure.
inline ParticleQuantiles heat_resample(const ParticleQuantiles& pq, double sigma,
                                       double tol = kDefaultQuantileTol) {
  const SmoothedCdf sc(pq, sigma);
  detail::require_tol(tol);
  const detail::GaussCdfSum cdf(pq.positions(), sigma);
  const std::size_t n = pq.size();
  std::vector<double> out(n);
  double prev_w = 0.0;
  double prev_x = 0.0;
  double prev_density = 0.0;
  // The bracket for the top node bounds every node from above; after the
  // first node the previous quantile bounds from below.
  const double top = detail::initial_bracket(sc, quantile_node(n - 1, n)).second;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = quantile_node(i, n);
    double lo = i == 0 ? detail::initial_bracket(sc, w).first : prev_x - tol;
    double hi = top;

    // Newton inside the bracket, bisection whenever Newton leaves it.
    double x = 0.5 * (lo + hi);
    if (i > 0 && prev_density > 0.0) {
      const double guess = prev_x + (w - prev_w) / prev_density;
      if (guess > lo && guess < hi) x = guess;
    }
    double density = 0.0;
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
      const auto v = cdf(x);
      density = v.density;
      const bool below = v.cdf < w;
      if (below) {
        lo = x;
      } else {
        hi = x;
      }
      if (hi - lo <= tol) break;
      double next = v.density > 0.0 ? x - (v.cdf - w) / v.density : lo - 1.0;
      if (std::abs(next - x) <= 0.25 * tol) {
        // converged: one probe tol/2 past x on the root side closes the bracket
        const double probe = std::clamp(below ? x + 0.5 * tol : x - 0.5 * tol, lo, hi);
        if (cdf(probe).cdf < w) {
          lo = probe;
        } else {
          hi = probe;
        }
        next = 0.5 * (lo + hi);
      } else if (!(next > lo && next < hi)) {
        next = 0.5 * (lo + hi);
      }
      if (next <= lo || next >= hi) break;
      x = next;
    }
    out[i] = 0.5 * (lo + hi);
    prev_w = w;
    prev_x = out[i];
    prev_density = density;
  }
  return ParticleQuantiles(std::move(out));
}

/// heat_resample(th_step(pq), sqrt(2 nu h)).
class ViscousStep {
 public:
  ViscousStep(const FluxModel& flux, std::size_t n, double h, double nu,
              double tol = kDefaultQuantileTol)
      : transport_(flux, n, h), sigma_(std::sqrt(2.0 * nu * h)), tol_(tol) {
    if (!(h > 0.0)) throw DomainError("viscous step: h must be > 0");
    if (!(nu > 0.0)) throw DomainError("viscous step: nu must be > 0");
    detail::require_tol(tol);
  }

  ParticleQuantiles operator()(const ParticleQuantiles& pq) const {
    return heat_resample(transport_(pq), sigma_, tol_);
  }

  double sigma() const { return sigma_; }

 private:
  TransportCollapseStep transport_;
  double sigma_;
  double tol_;
};

inline ParticleQuantiles viscous_step(const ParticleQuantiles& pq, const FluxModel& flux, double h,
                                      double nu, double tol = kDefaultQuantileTol) {
  return ViscousStep(flux, pq.size(), h, nu, tol)(pq);
}

inline SchemeState evolve_viscous(const ParticleQuantiles& pq0, const FluxModel& flux, double h,
                                  double nu, double t, double tol = kDefaultQuantileTol) {
  const auto split = split_time(t, h);
  Trajectory traj(pq0, ViscousStep(flux, pq0.size(), h, nu, tol), h);
  while (traj.steps() < split.steps) traj.advance();
  return SchemeState{traj.base(), traj.next(), split.s, h, split.steps, flux};
}

}  // namespace claw
