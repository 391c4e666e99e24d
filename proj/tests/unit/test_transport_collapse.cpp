#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "claw/transport_collapse.hpp"
#include "claw/wasserstein.hpp"
#include "oracles.hpp"

using namespace claw;

namespace {

std::vector<double> nodes(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = (i + 0.5) / n;
  return w;
}

}  // namespace

TEST(Transport, Examples) {
  const auto burgers = make_builtin("burgers");
  const auto cq = make_builtin("concave_quadratic");
  const std::size_t n = 16;
  const auto w = nodes(n);
  const auto pq = ParticleQuantiles::uniform(0.0, 1.0, n);

  const auto same = transport(pq, burgers, 0.0);
  EXPECT_EQ(same.positions, std::vector<double>(pq.positions().begin(), pq.positions().end()));

  const double h = 0.3;
  const auto moved = transport(pq, burgers, h);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(moved.positions[i], w[i] * (1 + h), 1e-15);
  EXPECT_TRUE(std::is_sorted(moved.positions.begin(), moved.positions.end()));

  const auto spread = transport(ParticleQuantiles::dirac(0.0, n), cq, h);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(spread.positions[i], h * (1 - w[i]), 1e-15);
  for (std::size_t i = 1; i < n; ++i) EXPECT_LT(spread.positions[i], spread.positions[i - 1]);

  EXPECT_THROW(transport(pq, burgers, -0.1), DomainError);
}

TEST(Collapse, Examples) {
  EXPECT_EQ(collapse({{0.3, 0.1, 0.2}}), ParticleQuantiles({0.1, 0.2, 0.3}));
  EXPECT_EQ(collapse({{-1.0, 0.0, 0.0, 4.0}}), ParticleQuantiles({-1.0, 0.0, 0.0, 4.0}));
  const std::size_t n = 9;
  const double h = 0.25;
  const auto sorted = collapse(transport(ParticleQuantiles::dirac(0.0, n),
                                         make_builtin("concave_quadratic"), h));
  const auto w = nodes(n);
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(sorted[i], h * w[i], 1e-15);
}

TEST(ThStep, Examples) {
  const auto cq = make_builtin("concave_quadratic");
  const auto pq = ParticleQuantiles({-1.0, 0.0, 3.0});
  EXPECT_EQ(th_step(pq, cq, 0.0), pq);

  const double h = 0.125;  // dyadic: every position below is exact
  const auto two = th_step(th_step(ParticleQuantiles::dirac(0.0, 64), cq, h), cq, h);
  EXPECT_EQ(two, ParticleQuantiles::dirac(h, 64));

  const auto burgers = make_builtin("burgers");
  const auto u = ParticleQuantiles::uniform(0.0, 1.0, 32);
  const auto stepped = th_step(u, burgers, 0.2);
  const auto w = nodes(32);
  for (std::size_t i = 0; i < 32; ++i) EXPECT_NEAR(stepped[i], w[i] * 1.2, 1e-15);
  EXPECT_EQ(stepped.size(), u.size());
}

TEST(SplitTime, DecompositionAndRollGuard) {
  auto s = split_time(2.5 * 0.1, 0.1);
  EXPECT_EQ(s.steps, 2u);
  EXPECT_NEAR(s.s, 0.5, 1e-12);
  s = split_time(0.0, 0.1);
  EXPECT_EQ(s.steps, 0u);
  EXPECT_EQ(s.s, 0.0);
  // 0.3 / 0.1 = 2.9999999999999996 in binary: rolls to (3, 0)
  s = split_time(0.3, 0.1);
  EXPECT_EQ(s.steps, 3u);
  EXPECT_EQ(s.s, 0.0);
  EXPECT_THROW(split_time(1.0, 0.0), DomainError);
  EXPECT_THROW(split_time(-1.0, 0.1), DomainError);
}

TEST(EvolveSh, DecompositionAndDeterminism) {
  const auto flux = make_builtin("cubic");
  std::mt19937_64 rng(41);
  const auto pq0 = oracle::random_particles(rng, 100);
  const double h = 0.1;
  const auto st = evolve_sh(pq0, flux, h, 2.5 * h);
  EXPECT_EQ(st.steps_taken, 2u);
  EXPECT_NEAR(st.s, 0.5, 1e-12);
  EXPECT_EQ(st.base, th_step(th_step(pq0, flux, h), flux, h));
  EXPECT_EQ(st.next, th_step(st.base, flux, h));
  EXPECT_NEAR(st.time(), 0.25, 1e-15);

  const auto again = evolve_sh(pq0, flux, h, 2.5 * h);
  EXPECT_EQ(again.base, st.base);
  EXPECT_EQ(again.next, st.next);

  const auto zero = evolve_sh(pq0, flux, h, 0.0);
  EXPECT_EQ(zero.base, pq0);
  EXPECT_EQ(zero.s, 0.0);
  EXPECT_THROW(evolve_sh(pq0, flux, 0.0, 1.0), DomainError);
  EXPECT_THROW(evolve_sh(pq0, flux, -0.1, 1.0), DomainError);
}

TEST(EvolveSh, LinearFluxIsRigidTranslation) {
  std::mt19937_64 rng(42);
  const auto pq0 = oracle::random_particles(rng, 64);
  const double c = -0.75;
  const double h = 0.0625;
  const auto st = evolve_sh(pq0, make_builtin("linear", {c}), h, 8 * h);
  for (std::size_t i = 0; i < pq0.size(); ++i) EXPECT_NEAR(st.base[i], pq0[i] + c * 8 * h, 1e-14);
}

TEST(ShAsCdf, Examples) {
  const auto flux = make_builtin("linear", {1.0});
  const auto pq0 = ParticleQuantiles::dirac(0.0, 4);
  const auto at0 = sh_as_cdf(evolve_sh(pq0, flux, 1.0, 0.0));
  EXPECT_EQ(at0(0.0), 1.0);
  EXPECT_EQ(at0(-1e-9), 0.0);
  const auto half = sh_as_cdf(evolve_sh(pq0, flux, 1.0, 0.5));
  EXPECT_EQ(half(0.5), 0.5);
  EXPECT_EQ(half(-1e300), 0.0);
  EXPECT_EQ(half.s(), 0.5);
}

TEST(Trajectory, MatchesEvolveShAndRejectsBackwardTime) {
  const auto flux = make_builtin("burgers");
  std::mt19937_64 rng(43);
  const auto pq0 = oracle::random_particles(rng, 50);
  const double h = 0.05;
  Trajectory traj(pq0, TransportCollapseStep(flux, 50, h), h);
  for (double t : {0.0, 0.01, 0.05, 0.2, 0.73, 1.0}) {
    const auto m = traj.at(t);
    const auto st = evolve_sh(pq0, flux, h, t);
    EXPECT_EQ(m.low(), st.base);
    EXPECT_EQ(m.high(), st.next);
    EXPECT_EQ(m.s(), st.s);
  }
  EXPECT_THROW(traj.at(0.5), std::invalid_argument);
}

TEST(ClassicalCharacteristics, Examples) {
  const auto burgers = make_builtin("burgers");
  const auto u = ParticleQuantiles::uniform(0.0, 1.0, 20);
  const auto x = classical_characteristics(u, burgers, 1.0);
  const auto w = nodes(20);
  for (std::size_t i = 0; i < 20; ++i) EXPECT_NEAR(x[i], 2 * w[i], 1e-15);

  std::mt19937_64 rng(44);
  const auto pq = oracle::random_particles(rng, 30);
  const auto shifted = classical_characteristics(pq, make_builtin("linear", {2.0}), 1.5);
  for (std::size_t i = 0; i < 30; ++i) EXPECT_NEAR(shifted[i], pq[i] + 3.0, 1e-14);

  try {
    classical_characteristics(ParticleQuantiles::dirac(0.0, 10), make_builtin("concave_quadratic"),
                              0.1);
    FAIL() << "expected NonClassicalError";
  } catch (const NonClassicalError& e) {
    EXPECT_EQ(e.crossing_index(), 0u);
  }
  EXPECT_THROW(classical_characteristics(u, burgers, -1.0), DomainError);
}

TEST(ClassicalCharacteristics, MonotoneRegimeStepIsExact) {
  const auto burgers = make_builtin("burgers");
  const auto u = ParticleQuantiles::uniform(-1.0, 2.0, 128);
  const double h = 0.1;
  auto pq = u;
  for (int n = 1; n <= 10; ++n) {
    pq = th_step(pq, burgers, h);
    const auto exact = classical_characteristics(u, burgers, n * h);
    for (std::size_t i = 0; i < pq.size(); ++i) EXPECT_NEAR(pq[i], exact[i], 1e-14);
  }
}

TEST(Oracles, ShockAndRarefaction) {
  const auto cq = make_builtin("concave_quadratic");
  const auto s2 = exact_shock_cdf(cq, 2.0);
  EXPECT_EQ(s2.size(), 1u);
  EXPECT_EQ(s2.breakpoints()[0], 1.0);
  EXPECT_EQ(exact_shock_cdf(cq, 0.0).breakpoints()[0], 0.0);
  EXPECT_EQ(exact_shock_cdf(make_builtin("linear", {-3.0}), 0.5).breakpoints()[0], -1.5);
  EXPECT_EQ(exact_shock_cdf(cq, 1.0, 2.0).breakpoints()[0], 2.5);
  EXPECT_THROW(exact_shock_cdf(make_builtin("burgers"), 1.0), std::invalid_argument);

  const auto r3 = exact_rarefaction_cdf(3.0);
  EXPECT_EQ(generalized_inverse(r3, 0.5), 2.0);
  const auto r0 = exact_rarefaction_cdf(0.0, 1000);
  const auto r1 = exact_rarefaction_cdf(1.0, 1000);
  for (double w : {0.1, 0.37, 0.9}) {
    EXPECT_NEAR(generalized_inverse(r0, w), w, 1e-3);
    EXPECT_NEAR(generalized_inverse(r1, w), 2 * w, 2e-3);
  }
}

TEST(Properties, StepContractionOnRandomPairs) {
  std::mt19937_64 rng(45);
  for (const char* name : {"burgers", "concave_quadratic", "cubic"}) {
    const auto flux = make_builtin(name);
    for (int rep = 0; rep < 200; ++rep) {
      const auto a = oracle::random_particles(rng, 64);
      const auto b = oracle::random_particles(rng, 64);
      const auto ta = th_step(a, flux, 0.2);
      const auto tb = th_step(b, flux, 0.2);
      for (double p : {1.0, 2.0, 3.0}) {
        EXPECT_LE(wp_particles(ta, tb, OrderP(p)), wp_particles(a, b, OrderP(p)) + 1e-12);
      }
    }
  }
}

TEST(Properties, MomentAndTailBounds) {
  std::mt19937_64 rng(46);
  const auto flux = make_builtin("cubic");
  const double m = flux.lipschitz_bound();
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = oracle::random_particles(rng, 64);
    for (double h : {0.05, 0.3}) {
      const auto b = th_step(a, flux, h);
      for (double p : {1.0, 2.0, 3.0}) {
        EXPECT_LE(moment(b, p), std::pow(2.0, p - 1) * (moment(a, p) + std::pow(h * m, p)));
        for (double r : {0.5, 1.0, 1.7}) {
          EXPECT_LE(tail_moment(b, p, r),
                    std::pow(1 + h * m / (r - h * m), p) * tail_moment(a, p, r - h * m));
        }
      }
    }
  }
}

TEST(Properties, L1TimeLipschitz) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> time(0.0, 2.0);
  const auto flux = make_builtin("burgers");
  const std::size_t n = 256;
  const auto pq0 = oracle::random_particles(rng, n);
  for (int rep = 0; rep < 50; ++rep) {
    const double s = time(rng);
    const double t = time(rng);
    const auto a = sh_as_cdf(evolve_sh(pq0, flux, 0.05, s));
    const auto b = sh_as_cdf(evolve_sh(pq0, flux, 0.05, t));
    EXPECT_LE(w1_via_cdf(a, b), std::abs(t - s) * flux.lipschitz_bound() + 4.0 / n);
  }
}

TEST(Properties, MassConservation) {
  std::mt19937_64 rng(48);
  const auto pq = oracle::random_particles(rng, 77);
  const auto out = th_step(pq, make_builtin("burgers"), 0.4);
  EXPECT_EQ(out.size(), pq.size());
  EXPECT_EQ(cdf_from_particles(out).values().back(), 1.0);
}
