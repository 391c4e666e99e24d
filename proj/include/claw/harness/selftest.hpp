#pragma once
// Quick invariant suites behind `claw selftest`. Each suite runs a few seeded
// property checks at small N and reports its worst slack.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "claw/flux.hpp"
#include "claw/harness/initial_data.hpp"
#include "claw/measure.hpp"
#include "claw/transport_collapse.hpp"
#include "claw/viscous.hpp"
#include "claw/wasserstein.hpp"

namespace claw::harness {

struct SuiteResult {
  std::string name;
  bool passed;
  std::string detail;
};

namespace selftest_detail {

inline ParticleQuantiles random_state(std::uint64_t seed, std::size_t n) {
  return random_particles(RandomMix{seed, -2.0, 2.0, 3}, n);
}

inline StepCdf random_cdf(Lcg64& rng) {
  const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 12.0);
  std::vector<double> x(k);
  std::vector<double> v(k);
  for (auto& xi : x) xi = 4.0 * rng.uniform() - 2.0;
  for (auto& vi : v) vi = rng.uniform();
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  v.resize(x.size());
  std::sort(v.begin(), v.end());
  v.back() = 1.0;
  return StepCdf(std::move(x), std::move(v));
}

inline SuiteResult metric_axioms() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_state(3 * s + 1, 64);
    const auto b = random_state(3 * s + 2, 64);
    const auto c = random_state(3 * s + 3, 64);
    for (double p : {1.0, 2.0, 3.0}) {
      const OrderP q(p);
      worst = std::max(worst, std::abs(wp_particles(a, b, q) - wp_particles(b, a, q)));
      worst = std::max(worst, wp_particles(a, c, q) - wp_particles(a, b, q) - wp_particles(b, c, q));
      worst = std::max(worst, wp_particles(a, a, q));
    }
  }
  return {"metric axioms", worst <= 1e-12, "worst violation " + format_shortest(worst)};
}

inline SuiteResult w1_identity() {
  Lcg64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = random_cdf(rng);
    const auto g = random_cdf(rng);
    worst = std::max(worst, std::abs(wp_cdf(f, g, OrderP(1.0)) - w1_via_cdf(f, g)));
  }
  return {"W1 = L1 of CDFs", worst <= 1e-10, "worst gap " + format_shortest(worst)};
}

inline SuiteResult round_trip() {
  bool ok = true;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto pq = random_state(100 + s, 33);
    ok = ok && particles_from_cdf(cdf_from_particles(pq), pq.size()) == pq;
  }
  return {"CDF/particle bijection", ok, ok ? "exact" : "round trip changed positions"};
}

inline SuiteResult step_contraction() {
  double worst = 0.0;
  for (const char* name : {"burgers", "concave_quadratic", "cubic"}) {
    const auto flux = make_builtin(name);
    const TransportCollapseStep step(flux, 128, 0.05);
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto a = random_state(2 * s + 500, 128);
      const auto b = random_state(2 * s + 501, 128);
      const auto ta = step(a);
      const auto tb = step(b);
      for (double p : {1.0, 2.0, 3.0}) {
        worst = std::max(worst, wp_particles(ta, tb, OrderP(p)) - wp_particles(a, b, OrderP(p)));
      }
    }
  }
  return {"T_h contraction", worst <= 1e-12, "worst excess " + format_shortest(worst)};
}

inline SuiteResult moment_bounds() {
  std::size_t violations = 0;
  const auto flux = make_builtin("burgers");
  const double h = 0.1;
  const double m = flux.lipschitz_bound();
  const double r = 1.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = random_state(900 + s, 128);
    const auto b = th_step(a, flux, h);
    for (double p : {1.0, 2.0, 3.0}) {
      if (moment(b, p) > std::pow(2.0, p - 1.0) * (moment(a, p) + std::pow(h * m, p))) ++violations;
      if (tail_moment(b, p, r) >
          std::pow(1.0 + h * m / (r - h * m), p) * tail_moment(a, p, r - h * m)) {
        ++violations;
      }
    }
  }
  return {"moment and tail bounds", violations == 0, std::to_string(violations) + " violations"};
}

inline SuiteResult classical_constancy() {
  const auto flux = make_builtin("burgers");
  const auto a = ParticleQuantiles::uniform(0.0, 1.0, 256);
  const auto b = ParticleQuantiles::uniform(0.5, 1.5, 256);
  double worst = 0.0;
  for (int j = 0; j <= 16; ++j) {
    const double t = j / 16.0;
    const auto xa = classical_characteristics(a, flux, t);
    const auto xb = classical_characteristics(b, flux, t);
    for (double p : {1.0, 2.0, 3.0}) {
      worst = std::max(worst, std::abs(wp_particles(xa, xb, OrderP(p)) - 0.5));
    }
  }
  return {"classical constancy", worst <= 1e-12, "worst deviation " + format_shortest(worst)};
}

inline SuiteResult heat_equivariance() {
  const auto a = random_state(77, 128);
  std::vector<double> shifted(a.positions().begin(), a.positions().end());
  for (double& x : shifted) x += 0.75;
  const auto ra = heat_resample(a, 0.3);
  const auto rb = heat_resample(ParticleQuantiles(shifted), 0.3);
  double worst = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) worst = std::max(worst, std::abs(rb[i] - ra[i] - 0.75));
  return {"heat resample shift equivariance", worst <= 5 * kDefaultQuantileTol,
          "worst deviation " + format_shortest(worst)};
}

}  // namespace selftest_detail

inline std::vector<SuiteResult> run_selftest() {
  using namespace selftest_detail;
  std::vector<std::function<SuiteResult()>> suites{metric_axioms,   w1_identity,
                                                   round_trip,      step_contraction,
                                                   moment_bounds,   classical_constancy,
                                                   heat_equivariance};
  std::vector<SuiteResult> out;
  for (const auto& suite : suites) {
    try {
      out.push_back(suite());
    } catch (const std::exception& e) {
      out.push_back({"(suite threw)", false, e.what()});
    }
  }
  return out;
}

}  // namespace claw::harness
