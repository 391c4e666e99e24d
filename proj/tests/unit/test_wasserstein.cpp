#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "claw/measure.hpp"
#include "claw/wasserstein.hpp"
#include "oracles.hpp"

using namespace claw;

TEST(OrderP, Validation) {
  EXPECT_THROW(OrderP{0.5}, DomainError);
  EXPECT_THROW(OrderP{INFINITY}, DomainError);
  EXPECT_THROW(OrderP{NAN}, DomainError);
  EXPECT_EQ(OrderP(1.0).value(), 1.0);
}

TEST(WpParticles, Examples) {
  const auto a = ParticleQuantiles({-1.0, 0.5, 2.0});
  for (double p : {1.0, 2.0, 3.0, 1.7}) {
    EXPECT_EQ(wp_particles(a, a, OrderP(p)), 0.0);
    EXPECT_NEAR(wp_particles(ParticleQuantiles::dirac(0.0, 7), ParticleQuantiles::dirac(-2.5, 7),
                             OrderP(p)),
                2.5, 1e-15);
  }
  const double w2 = wp_particles(ParticleQuantiles::dirac(0.0, 1000),
                                 ParticleQuantiles::uniform(0.0, 1.0, 1000), OrderP(2.0));
  EXPECT_NEAR(w2, std::sqrt(1.0 / 3.0), 1e-3);
  EXPECT_THROW(wp_particles(a, ParticleQuantiles::dirac(0.0, 2), OrderP(1.0)), SizeMismatch);
}

TEST(WpCdf, Examples) {
  const auto h0 = StepCdf::heaviside(0.0);
  for (double p : {1.0, 2.0, 3.0}) {
    EXPECT_EQ(wp_cdf(h0, h0, OrderP(p)), 0.0);
    EXPECT_NEAR(wp_cdf(h0, StepCdf::heaviside(-1.25), OrderP(p)), 1.25, 1e-15);
  }
  EXPECT_DOUBLE_EQ(wp_cdf(StepCdf({0.0, 1.0}, {0.5, 1.0}), h0, OrderP(1.0)), 0.5);
}

TEST(WpCdf, MatchesLevelOracleOnRandomCdfs) {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 200; ++rep) {
    const auto f = oracle::random_step_cdf(rng);
    const auto g = oracle::random_step_cdf(rng);
    for (double p : {1.0, 2.0, 3.0, 2.5}) {
      EXPECT_NEAR(wp_cdf(f, g, OrderP(p)), oracle::wp_levels(f, g, p), 1e-12);
    }
  }
}

TEST(W1ViaCdf, MatchesBreakpointOracleAndWpCdf) {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 200; ++rep) {
    const auto f = oracle::random_step_cdf(rng);
    const auto g = oracle::random_step_cdf(rng);
    EXPECT_NEAR(w1_via_cdf(f, g), oracle::l1_cdf(f, g), 1e-12);
    EXPECT_NEAR(w1_via_cdf(f, g), wp_cdf(f, g, OrderP(1.0)), 1e-10);
  }
  EXPECT_NEAR(w1_via_cdf(StepCdf::heaviside(0.0), StepCdf::heaviside(3.0)), 3.0, 1e-15);
}

TEST(Wasserstein, ParticleAndCdfFormsAgree) {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a = oracle::random_particles(rng, 50);
    const auto b = oracle::random_particles(rng, 50);
    for (double p : {1.0, 2.0, 3.0}) {
      EXPECT_NEAR(wp_particles(a, b, OrderP(p)),
                  wp_cdf(cdf_from_particles(a), cdf_from_particles(b), OrderP(p)), 1e-12);
    }
  }
}

TEST(Wasserstein, MetricAxiomsAndOrderMonotonicity) {
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 200; ++rep) {
    const auto a = oracle::random_particles(rng, 30);
    const auto b = oracle::random_particles(rng, 30);
    const auto c = oracle::random_particles(rng, 30);
    double prev = 0.0;
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
      const OrderP q(p);
      EXPECT_EQ(wp_particles(a, b, q), wp_particles(b, a, q));
      EXPECT_LE(wp_particles(a, c, q), wp_particles(a, b, q) + wp_particles(b, c, q) + 1e-12);
      EXPECT_GT(wp_particles(a, b, q), 0.0);
      const double w = wp_particles(a, b, q);
      EXPECT_GE(w, prev - 1e-12);
      prev = w;
    }
  }
}

TEST(Wasserstein, SortedCouplingBeatsRandomPermutations) {
  std::mt19937_64 rng(25);
  for (int rep = 0; rep < 50; ++rep) {
    const auto a = oracle::random_particles(rng, 20);
    const auto b = oracle::random_particles(rng, 20);
    std::vector<double> perm(b.positions().begin(), b.positions().end());
    for (int k = 0; k < 20; ++k) {
      std::shuffle(perm.begin(), perm.end(), rng);
      for (double p : {1.0, 2.0, 3.0}) {
        double acc = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i) acc += std::pow(std::abs(a[i] - perm[i]), p);
        EXPECT_GE(std::pow(acc / 20.0, 1.0 / p), wp_particles(a, b, OrderP(p)) - 1e-12);
      }
    }
  }
}

TEST(Wasserstein, BruteForceOptimalitySmallN) {
  std::mt19937_64 rng(26);
  for (std::size_t n = 1; n <= 7; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      const auto a = oracle::random_particles(rng, n);
      const auto b = oracle::random_particles(rng, n);
      for (double p : {1.0, 2.0}) {
        EXPECT_NEAR(oracle::wp_brute_force({a.positions().begin(), a.positions().end()},
                                           {b.positions().begin(), b.positions().end()}, p),
                    wp_particles(a, b, OrderP(p)), 1e-12);
      }
    }
  }
}

TEST(Wasserstein, ConvexityOfPowerUnderSharedMixtureWeight) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> weight(0.0, 0.999);
  for (int rep = 0; rep < 100; ++rep) {
    const auto a1 = oracle::random_particles(rng, 25);
    const auto a2 = oracle::random_particles(rng, 25);
    const auto b1 = oracle::random_particles(rng, 25);
    const auto b2 = oracle::random_particles(rng, 25);
    const double s = weight(rng);
    for (double p : {1.0, 2.0, 3.0}) {
      const OrderP q(p);
      const double lhs = std::pow(wp_cdf(MixtureState(a1, a2, s), MixtureState(b1, b2, s), q), p);
      const double rhs = (1 - s) * std::pow(wp_particles(a1, b1, q), p) +
                         s * std::pow(wp_particles(a2, b2, q), p);
      EXPECT_LE(lhs, rhs + 1e-12);
    }
  }
}

TEST(WeakConvergenceGap, Examples) {
  const auto limit = ParticleQuantiles::dirac(0.0, 4);
  {
    const auto g = weak_convergence_gap({limit, limit}, limit, OrderP(2.0), 1.0);
    EXPECT_EQ(g.distance, (std::vector<double>{0.0, 0.0}));
  }
  std::vector<ParticleQuantiles> translates;
  std::vector<ParticleQuantiles> escaping;
  for (int n = 1; n <= 5; ++n) {
    translates.push_back(ParticleQuantiles::dirac(1.0 / n, 4));
    escaping.push_back(ParticleQuantiles::dirac(n, 4));
  }
  const auto t = weak_convergence_gap(translates, limit, OrderP(1.0), 2.0);
  for (int n = 1; n <= 5; ++n) EXPECT_NEAR(t.distance[n - 1], 1.0 / n, 1e-15);
  const auto e = weak_convergence_gap(escaping, limit, OrderP(1.0), 1.5);
  for (int n = 2; n <= 5; ++n) {
    EXPECT_GT(e.distance[n - 1], e.distance[n - 2]);
    EXPECT_GT(e.tail[n - 1], e.tail[n - 2]);
  }
  EXPECT_THROW(weak_convergence_gap({}, limit, OrderP(1.0), 0.0), std::invalid_argument);
}
