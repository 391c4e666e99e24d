#pragma once
// Kruzkov entropy-inequality screening on piecewise-constant snapshots.
//
// For E(u) = |u - k|, F(u) = sign(u - k) (f(u) - f(k)) and a nonnegative test
// function phi(t, x) = a(t) b(x), the residual
//   R = -[ int int (E(u) phi_t + F(u) phi_x) dx dt + int E(u(0, x)) phi(0, x) dx ]
// is <= 0 for an entropy solution. Bumps are psi(z) = (1 - z^2)^3 on |z| < 1:
// the x-integrals over constant pieces are exact (via the antiderivative of
// psi), the t-integral is the trapezoid rule over the snapshots.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "claw/flux.hpp"
#include "claw/measure.hpp"

namespace claw::harness {

struct Snapshot {
  double t;
  StepCdf u;
};

namespace entropy_detail {

inline double bump(double z) {
  if (!(std::abs(z) < 1.0)) return 0.0;
  const double q = 1.0 - z * z;
  return q * q * q;
}

inline double bump_slope(double z) {
  if (!(std::abs(z) < 1.0)) return 0.0;
  const double q = 1.0 - z * z;
  return -6.0 * z * q * q;
}

// Antiderivative of bump on [-1, 1], clamped outside.
inline double bump_integral(double z) {
  z = std::clamp(z, -1.0, 1.0);
  const double z2 = z * z;
  return z * (1.0 + z2 * (-1.0 + z2 * (0.6 - z2 / 7.0)));
}

}  // namespace entropy_detail

struct SpaceBump {
  double center;
  double radius;
};

/// Time factor psi((t - center) / radius). An anchored bump is centered on the
/// first snapshot, so only its right half lies in the window and phi(t_0, .)
/// is nonzero.
struct TimeBump {
  double center;
  double radius;
  bool anchored;

  double value(double t) const {
    return entropy_detail::bump((t - center) / radius);
  }
  double slope(double t) const {
    return entropy_detail::bump_slope((t - center) / radius) / radius;
  }
};

struct EntropyGrid {
  std::vector<SpaceBump> space;
  std::vector<TimeBump> time;
};

/// Bumps covering the snapshots' support (padded by one radius) and the time
/// window [t_0, t_last].
inline EntropyGrid default_grid(const std::vector<Snapshot>& snaps) {
  double lo = snaps.front().u.breakpoints().front();
  double hi = snaps.front().u.breakpoints().back();
  for (const auto& s : snaps) {
    lo = std::min(lo, s.u.breakpoints().front());
    hi = std::max(hi, s.u.breakpoints().back());
  }
  const double span = hi - lo > 0.0 ? hi - lo : 1.0;
  const double rx = span / 4.0;
  EntropyGrid g;
  for (double c = lo - rx; c <= hi + rx + 1e-12 * span; c += rx / 4.0) g.space.push_back({c, rx});
  const double t0 = snaps.front().t;
  const double tw = snaps.back().t - t0;
  const double rt = tw / 4.0;
  for (int j = 0; j <= 4; ++j) g.time.push_back({t0 + rt + j * rt / 2.0, rt, false});
  g.time.push_back({t0, tw / 2.0, true});
  g.time.push_back({t0, tw / 4.0, true});
  return g;
}

struct EntropyResult {
  double residual;       // max over the bump family
  std::size_t worst_space;
  std::size_t worst_time;
};

/// Residual for one Kruzkov constant k. Snapshots must be equally spaced in
/// time, at least 3 of them; anchored time bumps use the first snapshot as
/// the initial datum.
inline EntropyResult entropy_residual(const std::vector<Snapshot>& snaps, const FluxModel& flux,
                                      double k, const EntropyGrid& grid) {
  using namespace entropy_detail;
  if (snaps.size() < 3) throw std::invalid_argument("entropy_residual: need >= 3 snapshots");
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("entropy_residual: k must lie in [0, 1]");
  const double dt = (snaps.back().t - snaps.front().t) / static_cast<double>(snaps.size() - 1);
  if (!(dt > 0.0)) throw std::invalid_argument("entropy_residual: snapshot times must increase");
  for (std::size_t i = 1; i < snaps.size(); ++i) {
    const double expect = snaps.front().t + dt * static_cast<double>(i);
    if (std::abs(snaps[i].t - expect) > 1e-9 * std::max(1.0, std::abs(expect))) {
      throw std::invalid_argument("entropy_residual: snapshots must be equally spaced");
    }
  }
  const double fk = flux.f(k);
  auto entropy = [k](double u) { return std::abs(u - k); };
  auto entropy_flux = [&](double u) {
    return u > k ? flux.f(u) - fk : (u < k ? fk - flux.f(u) : 0.0);
  };

  // a[s][b] = int E(u_s) psi_b dx,  c[s][b] = int F(u_s) psi_b' dx
  const std::size_t nb = grid.space.size();
  std::vector<std::vector<double>> a(snaps.size(), std::vector<double>(nb));
  std::vector<std::vector<double>> c(snaps.size(), std::vector<double>(nb));
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    const auto xs = snaps[s].u.breakpoints();
    const auto vs = snaps[s].u.values();
    for (std::size_t b = 0; b < nb; ++b) {
      const double xc = grid.space[b].center;
      const double r = grid.space[b].radius;
      const double left = xc - r;
      const double right = xc + r;
      // pieces: (-inf, x_0) with u = 0, then [x_j, x_{j+1}) with u = v_j
      auto j = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), left) - xs.begin());
      double from = left;
      double u = j == 0 ? 0.0 : vs[j - 1];
      double ea = 0.0;
      double fc = 0.0;
      for (;;) {
        const double to = j < xs.size() ? std::min(xs[j], right) : right;
        const double z0 = (from - xc) / r;
        const double z1 = (to - xc) / r;
        ea += entropy(u) * r * (bump_integral(z1) - bump_integral(z0));
        fc += entropy_flux(u) * (bump(z1) - bump(z0));
        if (j >= xs.size() || xs[j] >= right) break;
        from = xs[j];
        u = vs[j];
        ++j;
      }
      a[s][b] = ea;
      c[s][b] = fc;
    }
  }

  EntropyResult best{-INFINITY, 0, 0};
  for (std::size_t tb = 0; tb < grid.time.size(); ++tb) {
    const auto& tf = grid.time[tb];
    for (std::size_t b = 0; b < nb; ++b) {
      double integral = 0.0;
      for (std::size_t s = 0; s < snaps.size(); ++s) {
        const double weight = (s == 0 || s + 1 == snaps.size()) ? 0.5 * dt : dt;
        integral += weight * (a[s][b] * tf.slope(snaps[s].t) + c[s][b] * tf.value(snaps[s].t));
      }
      if (tf.anchored) integral += a[0][b] * tf.value(snaps.front().t);
      const double r = -integral;
      if (r > best.residual) best = {r, b, tb};
    }
  }
  return best;
}

}  // namespace claw::harness
