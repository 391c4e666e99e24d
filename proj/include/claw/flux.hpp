#pragma once
/**
 * @file flux.hpp
 * @brief Flux functions f on [0,1] together with f' and M = sup |f'|.
 *
 * Solutions take values in [0,1], so fluxes are only ever evaluated there;
 * evaluation outside the unit interval is a DomainError.
 */

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "claw/errors.hpp"

namespace claw {

class FluxModel {
 public:
  using Fn = std::function<double(double)>;

  FluxModel(std::string name, Fn f, Fn f_prime, double lipschitz_bound)
      : name_(std::move(name)),
        f_(std::move(f)),
        f_prime_(std::move(f_prime)),
        lipschitz_(lipschitz_bound) {
    if (!std::isfinite(lipschitz_) || lipschitz_ < 0.0) {
      throw std::invalid_argument("FluxModel: Lipschitz bound must be finite and >= 0");
    }
  }

  const std::string& name() const { return name_; }
  double lipschitz_bound() const { return lipschitz_; }

  double f(double u) const {
    check(u);
    return f_(u);
  }
  double f_prime(double u) const {
    check(u);
    return f_prime_(u);
  }

 private:
  static void check(double u) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw DomainError("flux evaluated outside [0,1]: u = " + std::to_string(u));
    }
  }

  std::string name_;
  Fn f_;
  Fn f_prime_;
  double lipschitz_;
};

/// Built-in fluxes: "linear" (parameter c), "burgers", "concave_quadratic",
/// "cubic".
inline FluxModel make_builtin(const std::string& name, const std::vector<double>& params = {}) {
  auto expect = [&](std::size_t n) {
    if (params.size() != n) {
      throw std::invalid_argument("flux '" + name + "' expects " + std::to_string(n) +
                                  " parameter(s), got " + std::to_string(params.size()));
    }
  };
  if (name == "linear") {
    expect(1);
    const double c = params[0];
    if (!std::isfinite(c)) throw std::invalid_argument("linear flux: speed must be finite");
    std::ostringstream label;
    label << "linear(" << c << ")";
    return FluxModel(
        label.str(), [c](double u) { return c * u; }, [c](double) { return c; }, std::abs(c));
  }
  if (name == "burgers") {
    expect(0);
    return FluxModel(
        "burgers", [](double u) { return 0.5 * u * u; }, [](double u) { return u; }, 1.0);
  }
  if (name == "concave_quadratic") {
    expect(0);
    return FluxModel(
        "concave_quadratic", [](double u) { return u - 0.5 * u * u; },
        [](double u) { return 1.0 - u; }, 1.0);
  }
  if (name == "cubic") {
    expect(0);
    return FluxModel(
        "cubic", [](double u) { return u * u * u / 3.0; }, [](double u) { return u * u; }, 1.0);
  }
  throw std::invalid_argument("unknown flux '" + name + "'");
}

/// Piecewise-linear flux through (u_k, f_k). The derivative is the slope of
/// the segment containing u, taking the right segment at interior knots and
/// the last segment at u = 1.
inline FluxModel make_tabulated(std::vector<std::pair<double, double>> samples,
                                std::string name = "tabulated") {
  if (samples.size() < 2) throw std::invalid_argument("tabulated flux: need at least 2 samples");
  for (std::size_t k = 0; k < samples.size(); ++k) {
    if (!std::isfinite(samples[k].first) || !std::isfinite(samples[k].second)) {
      throw std::invalid_argument("tabulated flux: non-finite sample");
    }
    if (k > 0 && !(samples[k].first > samples[k - 1].first)) {
      throw std::invalid_argument("tabulated flux: u values must be strictly ascending");
    }
  }
  if (samples.front().first != 0.0 || samples.back().first != 1.0) {
    throw std::invalid_argument("tabulated flux: samples must span exactly [0,1]");
  }
  auto table = std::make_shared<const std::vector<std::pair<double, double>>>(std::move(samples));
  double m = 0.0;
  for (std::size_t k = 0; k + 1 < table->size(); ++k) {
    const auto [u0, f0] = (*table)[k];
    const auto [u1, f1] = (*table)[k + 1];
    m = std::max(m, std::abs((f1 - f0) / (u1 - u0)));
  }
  auto segment = [table](double u) {
    auto it = std::upper_bound(table->begin(), table->end(), u,
                               [](double x, const auto& s) { return x < s.first; });
    std::size_t k = static_cast<std::size_t>(it - table->begin());
    k = std::clamp<std::size_t>(k, 1, table->size() - 1) - 1;
    return k;
  };
  auto slope = [table](std::size_t k) {
    return ((*table)[k + 1].second - (*table)[k].second) /
           ((*table)[k + 1].first - (*table)[k].first);
  };
  return FluxModel(
      std::move(name),
      [table, segment, slope](double u) {
        const auto k = segment(u);
        return (*table)[k].second + slope(k) * (u - (*table)[k].first);
      },
      [segment, slope](double u) { return slope(segment(u)); }, m);
}

/// Reads a two-column whitespace-separated table of (u, f(u)); '#' starts a
/// comment.
inline FluxModel load_tabulated(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open flux table '" + path + "'");
  std::vector<std::pair<double, double>> samples;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    double u;
    double fu;
    std::string rest;
    if (!(ls >> u >> fu) || (ls >> rest)) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": expected two numbers");
    }
    samples.emplace_back(u, fu);
  }
  return make_tabulated(std::move(samples), "tabulated(" + path + ")");
}

}  // namespace claw
