#pragma once
// Experiment configuration: a line-oriented `key = value` format.
//
//   # comment
//   kind = contraction_sweep
//   flux = burgers                 # shorthand for [flux] name = burgers
//   h = 1/16, 1/32                 # reals accept a/b fractions; lists are comma separated
//   p_list = 1, 2, 3
//
//   [flux]
//   table = burgers.tab            # tabulated flux, path relative to the config file
//
//   [initial_a]
//   preset = random(7)
//   low = -2
//
// Command-line overrides use dotted keys for section entries
// (`--set initial_a.preset=dirac(0)`) and replace values from the file.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "claw/flux.hpp"
#include "claw/harness/csv.hpp"
#include "claw/harness/initial_data.hpp"

namespace claw::harness {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  ConfigError(const std::string& field, const std::string& msg)
      : std::runtime_error("field '" + field + "': " + msg), field_(field) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_ = 0;
  std::string field_;
};

enum class Kind {
  contraction_sweep,
  convergence_study,
  classical_constancy,
  viscous_contraction,
  moment_audit,
  entropy_residual,
};

inline constexpr std::pair<Kind, std::string_view> kKindNames[] = {
    {Kind::contraction_sweep, "contraction_sweep"},
    {Kind::convergence_study, "convergence_study"},
    {Kind::classical_constancy, "classical_constancy"},
    {Kind::viscous_contraction, "viscous_contraction"},
    {Kind::moment_audit, "moment_audit"},
    {Kind::entropy_residual, "entropy_residual"},
};

inline std::string_view kind_name(Kind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

struct ExperimentConfig {
  Kind kind = Kind::contraction_sweep;
  std::string flux_text = "burgers";
  FluxModel flux = make_builtin("burgers");
  std::size_t n_particles = 1024;
  std::vector<double> h{0.01};
  double t_final = 1.0;
  std::vector<double> p_list{1.0, 2.0};
  double nu = 0.0;
  std::uint64_t seed = 42;
  InitialSpec initial_a = RandomMix{42};
  InitialSpec initial_b = RandomMix{43};
  std::string output;
  std::size_t time_samples = 64;
  double tail_radius = 1.0;
  std::size_t k_count = 11;
  double tol = 1e-10;
  std::size_t oracle_resolution = 4097;
};

namespace config_detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::optional<double> to_real(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [p, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || p != end || s.empty()) return std::nullopt;
  return v;
}

// A decimal literal or a fraction a/b of two literals.
inline double parse_real(const std::string& field, const std::string& text) {
  const auto slash = text.find('/');
  std::optional<double> v;
  if (slash == std::string::npos) {
    v = to_real(text);
  } else {
    const auto num = to_real(trim(std::string_view(text).substr(0, slash)));
    const auto den = to_real(trim(std::string_view(text).substr(slash + 1)));
    if (num && den && *den != 0.0) v = *num / *den;
  }
  if (!v || !std::isfinite(*v)) throw ConfigError(field, "expected a real number, got '" + text + "'");
  return *v;
}

template <class Int>
Int parse_int(const std::string& field, const std::string& text) {
  Int v{};
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || text.empty()) {
    throw ConfigError(field, "expected a nonnegative integer, got '" + text + "'");
  }
  return v;
}

inline std::vector<double> parse_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(field, item));
  return out;
}

struct Call {
  std::string name;
  std::vector<std::string> args;
};

// `name` or `name(a, b, ...)`.
inline Call parse_call(const std::string& field, const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos) return {trim(text), {}};
  if (text.back() != ')') throw ConfigError(field, "unbalanced parentheses in '" + text + "'");
  Call c{trim(std::string_view(text).substr(0, open)), {}};
  const auto inner = trim(std::string_view(text).substr(open + 1, text.size() - open - 2));
  if (!inner.empty()) c.args = split(inner, ',');
  return c;
}

struct Entry {
  std::string value;
  std::size_t line;  // 0 for command-line overrides
};

using RawConfig = std::map<std::pair<std::string, std::string>, Entry>;

inline const std::map<std::string, std::vector<std::string>>& allowed_keys() {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"", {"kind", "n_particles", "h", "t_final", "p_list", "nu", "seed", "output",
            "time_samples", "tail_radius", "k_count", "tol", "oracle_resolution"}},
      {"flux", {"name", "table"}},
      {"initial_a", {"preset", "low", "high", "atoms"}},
      {"initial_b", {"preset", "low", "high", "atoms"}},
  };
  return keys;
}

// Top-level shorthands for section entries.
inline std::pair<std::string, std::string> normalize(std::string section, std::string key) {
  if (section.empty()) {
    if (key == "flux") return {"flux", "name"};
    if (key == "initial_a" || key == "initial_b") return {key, "preset"};
  }
  return {std::move(section), std::move(key)};
}

inline bool known(const std::string& section, const std::string& key) {
  const auto& keys = allowed_keys();
  const auto it = keys.find(section);
  if (it == keys.end()) return false;
  for (const auto& k : it->second) {
    if (k == key) return true;
  }
  return false;
}

inline std::string dotted(const std::pair<std::string, std::string>& k) {
  return k.first.empty() ? k.second : k.first + "." + k.second;
}

inline RawConfig read_raw(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') throw ConfigError(lineno, "malformed section header '" + t + "'");
      section = trim(std::string_view(t).substr(1, t.size() - 2));
      if (section.empty() || !allowed_keys().contains(section)) {
        throw ConfigError(lineno, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError(lineno, "expected 'key = value'");
    auto key = normalize(section, trim(std::string_view(t).substr(0, eq)));
    const auto value = trim(std::string_view(t).substr(eq + 1));
    if (key.second.empty()) throw ConfigError(lineno, "empty key");
    if (!known(key.first, key.second)) throw ConfigError(lineno, "unknown key '" + dotted(key) + "'");
    if (value.empty()) throw ConfigError(lineno, "empty value for '" + dotted(key) + "'");
    if (raw.contains(key)) throw ConfigError(lineno, "duplicate key '" + dotted(key) + "'");
    raw[key] = Entry{value, lineno};
  }
  return raw;
}

inline void apply_override(RawConfig& raw, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("--set", "expected key=value, got '" + assignment + "'");
  }
  const auto path = trim(std::string_view(assignment).substr(0, eq));
  const auto value = trim(std::string_view(assignment).substr(eq + 1));
  const auto dot = path.find('.');
  auto key = dot == std::string::npos ? normalize("", path)
                                      : normalize(path.substr(0, dot), path.substr(dot + 1));
  if (!known(key.first, key.second)) throw ConfigError(path, "unknown key");
  if (value.empty()) throw ConfigError(path, "empty value");
  raw[key] = Entry{value, 0};
}

inline InitialSpec parse_initial(const RawConfig& raw, const std::string& section,
                                 InitialSpec fallback) {
  InitialSpec spec = std::move(fallback);
  const auto field = section + ".preset";
  if (auto it = raw.find({section, "preset"}); it != raw.end()) {
    const auto call = parse_call(field, it->second.value);
    auto want = [&](std::size_t n) {
      if (call.args.size() != n) {
        throw ConfigError(field, call.name + " takes " + std::to_string(n) + " argument(s)");
      }
    };
    if (call.name == "dirac") {
      want(1);
      spec = Dirac{parse_real(field, call.args[0])};
    } else if (call.name == "uniform") {
      want(2);
      const Uniform u{parse_real(field, call.args[0]), parse_real(field, call.args[1])};
      if (!(u.b > u.a)) throw ConfigError(field, "uniform(a, b) needs a < b");
      spec = u;
    } else if (call.name == "two_atom") {
      want(2);
      spec = TwoAtom{parse_real(field, call.args[0]), parse_real(field, call.args[1])};
    } else if (call.name == "random") {
      want(1);
      spec = RandomMix{parse_int<std::uint64_t>(field, call.args[0])};
    } else {
      throw ConfigError(field, "unknown preset '" + call.name +
                                   "' (expected dirac, uniform, two_atom or random)");
    }
  }
  const bool has_mix_keys = raw.contains({section, "low"}) || raw.contains({section, "high"}) ||
                            raw.contains({section, "atoms"});
  if (has_mix_keys) {
    auto* mix = std::get_if<RandomMix>(&spec);
    if (!mix) throw ConfigError(section, "low/high/atoms apply only to the random preset");
    if (auto it = raw.find({section, "low"}); it != raw.end()) {
      mix->low = parse_real(section + ".low", it->second.value);
    }
    if (auto it = raw.find({section, "high"}); it != raw.end()) {
      mix->high = parse_real(section + ".high", it->second.value);
    }
    if (auto it = raw.find({section, "atoms"}); it != raw.end()) {
      mix->atoms = parse_int<std::size_t>(section + ".atoms", it->second.value);
    }
  }
  if (const auto* mix = std::get_if<RandomMix>(&spec)) {
    if (!(mix->high > mix->low)) throw ConfigError(section, "random preset needs low < high");
    if (mix->atoms == 0) throw ConfigError(section + ".atoms", "must be >= 1");
  }
  return spec;
}

inline std::pair<std::string, FluxModel> parse_flux(const RawConfig& raw,
                                                    const std::filesystem::path& base_dir) {
  const auto name = raw.find({"flux", "name"});
  const auto table = raw.find({"flux", "table"});
  if (table != raw.end()) {
    std::filesystem::path path = table->second.value;
    if (path.is_relative()) path = base_dir / path;
    try {
      auto model = load_tabulated(path.string());
      const std::string label =
          name != raw.end() ? name->second.value : "tabulated(" + table->second.value + ")";
      return {label, FluxModel(label, [model](double u) { return model.f(u); },
                               [model](double u) { return model.f_prime(u); },
                               model.lipschitz_bound())};
    } catch (const std::exception& e) {
      throw ConfigError("flux.table", e.what());
    }
  }
  if (name == raw.end()) throw ConfigError("flux", "required (e.g. flux = burgers)");
  const auto call = parse_call("flux", name->second.value);
  std::vector<double> params;
  for (const auto& a : call.args) params.push_back(parse_real("flux", a));
  try {
    return {name->second.value, make_builtin(call.name, params)};
  } catch (const std::invalid_argument& e) {
    throw ConfigError("flux", e.what());
  }
}

}  // namespace config_detail

/// Parses @p text, applies `key=value` @p overrides, fills defaults and
/// validates. Relative table paths resolve against @p base_dir.
inline ExperimentConfig parse_config(const std::string& text,
                                     const std::vector<std::string>& overrides = {},
                                     const std::filesystem::path& base_dir = {}) {
  using namespace config_detail;
  RawConfig raw = read_raw(text);
  for (const auto& o : overrides) apply_override(raw, o);

  auto get = [&](const std::string& key) -> const std::string* {
    const auto it = raw.find({"", key});
    return it == raw.end() ? nullptr : &it->second.value;
  };

  ExperimentConfig cfg;
  const auto* kind = get("kind");
  if (!kind) throw ConfigError("kind", "required");
  bool found = false;
  for (const auto& [k, name] : kKindNames) {
    if (*kind == name) {
      cfg.kind = k;
      found = true;
    }
  }
  if (!found) throw ConfigError("kind", "unknown kind '" + *kind + "'");

  std::tie(cfg.flux_text, cfg.flux) = parse_flux(raw, base_dir);

  if (const auto* v = get("n_particles")) cfg.n_particles = parse_int<std::size_t>("n_particles", *v);
  if (cfg.n_particles < 1) throw ConfigError("n_particles", "must be >= 1");
  if (const auto* v = get("h")) cfg.h = parse_list("h", *v);
  for (double h : cfg.h) {
    if (!(h > 0.0)) throw ConfigError("h", "every step must be > 0");
  }
  if (const auto* v = get("t_final")) cfg.t_final = parse_real("t_final", *v);
  if (!(cfg.t_final >= 0.0)) throw ConfigError("t_final", "must be >= 0");
  if (const auto* v = get("p_list")) cfg.p_list = parse_list("p_list", *v);
  for (double p : cfg.p_list) {
    if (!(p >= 1.0)) throw ConfigError("p_list", "every order must be >= 1");
  }
  if (const auto* v = get("nu")) cfg.nu = parse_real("nu", *v);
  if (!(cfg.nu >= 0.0)) throw ConfigError("nu", "must be >= 0");
  if (const auto* v = get("seed")) cfg.seed = parse_int<std::uint64_t>("seed", *v);
  if (const auto* v = get("output")) cfg.output = *v;
  if (const auto* v = get("time_samples")) {
    cfg.time_samples = parse_int<std::size_t>("time_samples", *v);
  }
  if (cfg.time_samples < 2) throw ConfigError("time_samples", "must be >= 2");
  if (const auto* v = get("tail_radius")) cfg.tail_radius = parse_real("tail_radius", *v);
  if (!(cfg.tail_radius >= 0.0)) throw ConfigError("tail_radius", "must be >= 0");
  if (const auto* v = get("k_count")) cfg.k_count = parse_int<std::size_t>("k_count", *v);
  if (cfg.k_count < 2) throw ConfigError("k_count", "must be >= 2");
  if (const auto* v = get("tol")) cfg.tol = parse_real("tol", *v);
  if (!(cfg.tol > 0.0)) throw ConfigError("tol", "must be > 0");
  if (const auto* v = get("oracle_resolution")) {
    cfg.oracle_resolution = parse_int<std::size_t>("oracle_resolution", *v);
  }
  if (cfg.oracle_resolution < 1) throw ConfigError("oracle_resolution", "must be >= 1");

  // random presets default to the run seed (a) and seed + 1 (b)
  cfg.initial_a = parse_initial(raw, "initial_a", RandomMix{cfg.seed});
  cfg.initial_b = parse_initial(raw, "initial_b", RandomMix{cfg.seed + 1});

  if (cfg.kind == Kind::viscous_contraction && !(cfg.nu > 0.0)) {
    throw ConfigError("nu", "viscous_contraction needs nu > 0");
  }
  if (cfg.kind != Kind::viscous_contraction && cfg.nu != 0.0) {
    throw ConfigError("nu", "only viscous_contraction uses nu");
  }
  return cfg;
}

inline ExperimentConfig load_config(const std::filesystem::path& path,
                                    const std::vector<std::string>& overrides = {}) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), overrides, path.parent_path());
}

/// Canonical key/value echo of a parsed configuration.
inline std::vector<std::pair<std::string, std::string>> echo(const ExperimentConfig& cfg) {
  auto list = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_shortest(v[i]);
    return s;
  };
  return {
      {"kind", std::string(kind_name(cfg.kind))},
      {"flux", cfg.flux_text},
      {"n_particles", std::to_string(cfg.n_particles)},
      {"h", list(cfg.h)},
      {"t_final", format_shortest(cfg.t_final)},
      {"p_list", list(cfg.p_list)},
      {"nu", format_shortest(cfg.nu)},
      {"seed", std::to_string(cfg.seed)},
      {"initial_a", describe(cfg.initial_a)},
      {"initial_b", describe(cfg.initial_b)},
      {"time_samples", std::to_string(cfg.time_samples)},
      {"tail_radius", format_shortest(cfg.tail_radius)},
      {"k_count", std::to_string(cfg.k_count)},
      {"tol", format_shortest(cfg.tol)},
      {"oracle_resolution", std::to_string(cfg.oracle_resolution)},
  };
}

}  // namespace claw::harness
