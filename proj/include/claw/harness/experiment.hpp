#pragma once
// run_experiment: one ResultTable per configuration kind.
//
//   contraction_sweep    h, t, w_p<p>..., ratio_p<p>...   (S_h on initial_a, initial_b)
//   viscous_contraction  same columns, viscous scheme with cfg.nu
//   convergence_study    h, N, l1_error, l1_sup, wp_error_p<p>...  (initial_a vs closed form)
//   classical_constancy  h, t, w_p<p>..., deviation_p<p>...
//   moment_audit         h, step, t, p, moment, moment_bound, tail, tail_bound
//   entropy_residual     h, k, residual
//
// Times are the uniform grid t_j = t_final * j / (time_samples - 1).

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "claw/harness/config.hpp"
#include "claw/harness/csv.hpp"
#include "claw/harness/entropy.hpp"
#include "claw/harness/initial_data.hpp"
#include "claw/measure.hpp"
#include "claw/transport_collapse.hpp"
#include "claw/version.hpp"
#include "claw/viscous.hpp"
#include "claw/wasserstein.hpp"

namespace claw::harness {

/// The configuration is well-formed but the requested run is impossible
/// (no oracle, non-classical data, coinciding initial data).
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace experiment_detail {

inline std::vector<double> time_grid(const ExperimentConfig& cfg) {
  std::vector<double> t(cfg.time_samples);
  const double last = static_cast<double>(cfg.time_samples - 1);
  for (std::size_t j = 0; j < t.size(); ++j) t[j] = cfg.t_final * static_cast<double>(j) / last;
  t.back() = cfg.t_final;
  return t;
}

inline std::string tag(double p) { return "p" + format_shortest(p); }

inline ResultTable start(const ExperimentConfig& cfg, std::vector<std::string> columns) {
  ResultTable table;
  table.columns = std::move(columns);
  table.metadata.emplace_back("claw", kVersion);
  for (auto& kv : echo(cfg)) table.metadata.push_back(std::move(kv));
  return table;
}

template <class Step>
void sweep(const ExperimentConfig& cfg, double h, Step step_a, Step step_b, ResultTable& table,
           bool ratios) {
  const auto a0 = make_particles(cfg.initial_a, cfg.n_particles);
  const auto b0 = make_particles(cfg.initial_b, cfg.n_particles);
  Trajectory ta(a0, std::move(step_a), h);
  Trajectory tb(b0, std::move(step_b), h);
  std::vector<double> w0;
  for (double p : cfg.p_list) w0.push_back(wp_particles(a0, b0, OrderP(p)));
  if (ratios) {
    for (double w : w0) {
      if (!(w > 0.0)) throw ExperimentError("initial_a and initial_b coincide: ratios undefined");
    }
  }
  for (double t : time_grid(cfg)) {
    const auto ma = ta.at(t);
    const auto mb = tb.at(t);
    const auto fa = to_step_cdf(ma);
    const auto fb = to_step_cdf(mb);
    std::vector<double> row{h, t};
    std::vector<double> tail;
    for (std::size_t k = 0; k < cfg.p_list.size(); ++k) {
      const double w = wp_cdf(fa, fb, OrderP(cfg.p_list[k]));
      row.push_back(w);
      tail.push_back(ratios ? w / w0[k] : std::abs(w - w0[k]));
    }
    row.insert(row.end(), tail.begin(), tail.end());
    table.add_row(std::move(row));
  }
}

inline std::vector<std::string> sweep_columns(const ExperimentConfig& cfg, const char* second) {
  std::vector<std::string> cols{"h", "t"};
  for (double p : cfg.p_list) cols.push_back("w_" + tag(p));
  for (double p : cfg.p_list) cols.push_back(std::string(second) + "_" + tag(p));
  return cols;
}

inline ResultTable contraction(const ExperimentConfig& cfg) {
  auto table = start(cfg, sweep_columns(cfg, "ratio"));
  for (double h : cfg.h) {
    if (cfg.kind == Kind::viscous_contraction) {
      sweep(cfg, h, ViscousStep(cfg.flux, cfg.n_particles, h, cfg.nu, cfg.tol),
            ViscousStep(cfg.flux, cfg.n_particles, h, cfg.nu, cfg.tol), table, true);
    } else {
      sweep(cfg, h, TransportCollapseStep(cfg.flux, cfg.n_particles, h),
            TransportCollapseStep(cfg.flux, cfg.n_particles, h), table, true);
    }
  }
  return table;
}

inline ResultTable classical(const ExperimentConfig& cfg) {
  for (const auto* spec : {&cfg.initial_a, &cfg.initial_b}) {
    try {
      classical_characteristics(make_particles(*spec, cfg.n_particles), cfg.flux, cfg.t_final);
    } catch (const NonClassicalError& e) {
      throw ExperimentError("classical_constancy: " + describe(*spec) + " is not classical up to t_final (" +
                            e.what() + ")");
    }
  }
  auto table = start(cfg, sweep_columns(cfg, "deviation"));
  for (double h : cfg.h) {
    sweep(cfg, h, TransportCollapseStep(cfg.flux, cfg.n_particles, h),
          TransportCollapseStep(cfg.flux, cfg.n_particles, h), table, false);
  }
  return table;
}

inline bool flux_nonincreasing_slope(const FluxModel& flux) {
  double prev = flux.f_prime(0.0);
  for (int k = 1; k <= 1000; ++k) {
    const double cur = flux.f_prime(k / 1000.0);
    if (cur > prev + 1e-12) return false;
    prev = cur;
  }
  return true;
}

/// Closed-form solution from initial_a, if one is available.
inline std::function<StepCdf(double)> oracle_for(const ExperimentConfig& cfg) {
  if (const auto* d = std::get_if<Dirac>(&cfg.initial_a); d && flux_nonincreasing_slope(cfg.flux)) {
    const FluxModel flux = cfg.flux;
    const double x0 = d->at;
    return [flux, x0](double t) { return exact_shock_cdf(flux, t, x0); };
  }
  if (const auto* u = std::get_if<Uniform>(&cfg.initial_a);
      u && u->a == 0.0 && u->b == 1.0 && cfg.flux_text == "burgers") {
    const std::size_t res = cfg.oracle_resolution;
    return [res](double t) { return exact_rarefaction_cdf(t, res); };
  }
  throw ExperimentError("convergence_study: no closed-form oracle for flux '" + cfg.flux_text +
                        "' from " + describe(cfg.initial_a) +
                        " (available: dirac(x) with nonincreasing f', or burgers from uniform(0, 1))");
}

inline ResultTable convergence(const ExperimentConfig& cfg) {
  const auto oracle = oracle_for(cfg);
  std::vector<std::string> cols{"h", "N", "l1_error", "l1_sup"};
  for (double p : cfg.p_list) cols.push_back("wp_error_" + tag(p));
  auto table = start(cfg, cols);
  const auto a0 = make_particles(cfg.initial_a, cfg.n_particles);
  const auto grid = time_grid(cfg);
  for (double h : cfg.h) {
    Trajectory traj(a0, TransportCollapseStep(cfg.flux, cfg.n_particles, h), h);
    double sup = 0.0;
    for (double t : grid) sup = std::max(sup, w1_via_cdf(to_step_cdf(traj.at(t)), oracle(t)));
    const auto final_state = to_step_cdf(traj.at(cfg.t_final));
    const auto exact = oracle(cfg.t_final);
    std::vector<double> row{h, static_cast<double>(cfg.n_particles), w1_via_cdf(final_state, exact),
                            sup};
    for (double p : cfg.p_list) row.push_back(wp_cdf(final_state, exact, OrderP(p)));
    table.add_row(std::move(row));
  }
  return table;
}

inline ResultTable moments(const ExperimentConfig& cfg) {
  const double m = cfg.flux.lipschitz_bound();
  for (double h : cfg.h) {
    if (!(cfg.tail_radius > h * m)) {
      throw ConfigError("tail_radius", "must exceed h * M = " + format_shortest(h * m));
    }
  }
  auto table =
      start(cfg, {"h", "step", "t", "p", "moment", "moment_bound", "tail", "tail_bound"});
  const double r = cfg.tail_radius;
  for (double h : cfg.h) {
    const TransportCollapseStep step(cfg.flux, cfg.n_particles, h);
    auto state = make_particles(cfg.initial_a, cfg.n_particles);
    const std::size_t steps = split_time(cfg.t_final, h).steps;
    for (std::size_t n = 1; n <= steps; ++n) {
      auto next = step(state);
      for (double p : cfg.p_list) {
        const double mb = std::pow(2.0, p - 1.0) * (moment(state, p) + std::pow(h * m, p));
        const double tb = std::pow(1.0 + h * m / (r - h * m), p) * tail_moment(state, p, r - h * m);
        table.add_row({h, static_cast<double>(n), static_cast<double>(n) * h, p, moment(next, p), mb,
                       tail_moment(next, p, r), tb});
      }
      state = std::move(next);
    }
  }
  return table;
}

inline ResultTable entropy(const ExperimentConfig& cfg) {
  if (cfg.time_samples < 3) throw ConfigError("time_samples", "entropy_residual needs >= 3");
  if (!(cfg.t_final > 0.0)) throw ConfigError("t_final", "entropy_residual needs t_final > 0");
  auto table = start(cfg, {"h", "k", "residual"});
  const auto a0 = make_particles(cfg.initial_a, cfg.n_particles);
  for (double h : cfg.h) {
    Trajectory traj(a0, TransportCollapseStep(cfg.flux, cfg.n_particles, h), h);
    std::vector<Snapshot> snaps;
    for (double t : time_grid(cfg)) snaps.push_back({t, to_step_cdf(traj.at(t))});
    const auto grid = default_grid(snaps);
    for (std::size_t j = 0; j < cfg.k_count; ++j) {
      const double k = static_cast<double>(j) / static_cast<double>(cfg.k_count - 1);
      table.add_row({h, k, entropy_residual(snaps, cfg.flux, k, grid).residual});
    }
  }
  return table;
}

}  // namespace experiment_detail

inline ResultTable run_experiment(const ExperimentConfig& cfg) {
  using namespace experiment_detail;
  switch (cfg.kind) {
    case Kind::contraction_sweep:
    case Kind::viscous_contraction:
      return contraction(cfg);
    case Kind::convergence_study:
      return convergence(cfg);
    case Kind::classical_constancy:
      return classical(cfg);
    case Kind::moment_audit:
      return moments(cfg);
    case Kind::entropy_residual:
      return entropy(cfg);
  }
  throw std::logic_error("run_experiment: unhandled kind");
}

}  // namespace claw::harness
