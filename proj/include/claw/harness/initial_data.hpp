#pragma once
// Initial-datum presets and the pinned random generator.
//
// random(seed) draws N positions from
//   0.5 * Uniform[low, high] + 0.5 * (equal-weight atoms at `atoms` locations),
// the atom locations themselves drawn uniformly from [low, high] first. All
// draws come from Lcg64 (Knuth's MMIX constants), so a seed reproduces the
// same particles on any platform.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "claw/harness/csv.hpp"
#include "claw/measure.hpp"

namespace claw::harness {

/// x_{n+1} = 6364136223846793005 x_n + 1442695040888963407 (mod 2^64).
class Lcg64 {
 public:
  static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
  static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * kMultiplier + kIncrement;
    return state_;
  }

  /// Top 53 bits as a double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

struct Dirac {
  double at = 0.0;
};
struct Uniform {
  double a = 0.0;
  double b = 1.0;
};
struct TwoAtom {
  double x1 = 0.0;
  double x2 = 1.0;
};
struct RandomMix {
  std::uint64_t seed = 0;
  double low = -1.0;
  double high = 1.0;
  std::size_t atoms = 4;
};

using InitialSpec = std::variant<Dirac, Uniform, TwoAtom, RandomMix>;

inline ParticleQuantiles random_particles(const RandomMix& spec, std::size_t n) {
  if (!(spec.high > spec.low)) throw std::invalid_argument("random: need low < high");
  if (spec.atoms == 0) throw std::invalid_argument("random: need at least one atom");
  Lcg64 rng(spec.seed);
  const double width = spec.high - spec.low;
  std::vector<double> atoms(spec.atoms);
  for (double& a : atoms) a = spec.low + width * rng.uniform();
  std::vector<double> x(n);
  for (double& v : x) {
    if (rng.uniform() < 0.5) {
      v = spec.low + width * rng.uniform();
    } else {
      auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(spec.atoms));
      v = atoms[std::min(k, spec.atoms - 1)];
    }
  }
  std::sort(x.begin(), x.end());
  return ParticleQuantiles(std::move(x));
}

inline ParticleQuantiles make_particles(const InitialSpec& spec, std::size_t n) {
  return std::visit(
      [n](const auto& s) -> ParticleQuantiles {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Dirac>) {
          return ParticleQuantiles::dirac(s.at, n);
        } else if constexpr (std::is_same_v<T, Uniform>) {
          if (!(s.b > s.a)) throw std::invalid_argument("uniform: need a < b");
          return ParticleQuantiles::uniform(s.a, s.b, n);
        } else if constexpr (std::is_same_v<T, TwoAtom>) {
          if (s.x1 == s.x2) return ParticleQuantiles::dirac(s.x1, n);
          const double lo = std::min(s.x1, s.x2);
          const double hi = std::max(s.x1, s.x2);
          return particles_from_cdf(StepCdf({lo, hi}, {0.5, 1.0}), n);
        } else {
          return random_particles(s, n);
        }
      },
      spec);
}

inline std::string describe(const InitialSpec& spec) {
  auto num = [](double v) { return format_shortest(v); };
  return std::visit(
      [&](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Dirac>) {
          return "dirac(" + num(s.at) + ")";
        } else if constexpr (std::is_same_v<T, Uniform>) {
          return "uniform(" + num(s.a) + ", " + num(s.b) + ")";
        } else if constexpr (std::is_same_v<T, TwoAtom>) {
          return "two_atom(" + num(s.x1) + ", " + num(s.x2) + ")";
        } else {
          return "random(" + std::to_string(s.seed) + ") low=" + num(s.low) +
                 " high=" + num(s.high) + " atoms=" + std::to_string(s.atoms);
        }
      },
      spec);
}

}  // namespace claw::harness
