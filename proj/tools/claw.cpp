// claw: run experiments from config files, run the invariant self-test.
//
//   claw run <config-file> [--set key=value ...]   CSV to `output` (or stdout)
//   claw selftest
//   claw version
//
// Exit codes: 0 success, 1 configuration/run error, 2 invariant violation.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "claw/harness/config.hpp"
#include "claw/harness/csv.hpp"
#include "claw/harness/experiment.hpp"
#include "claw/harness/selftest.hpp"
#include "claw/version.hpp"

namespace {

int run(const std::string& path, const std::vector<std::string>& overrides) {
  using namespace claw::harness;
  try {
    const auto cfg = load_config(path, overrides);
    const auto table = run_experiment(cfg);
    if (cfg.output.empty() || cfg.output == "-") {
      emit_csv(table, std::cout);
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) {
        std::cerr << "claw: cannot open output '" << cfg.output << "'\n";
        return 1;
      }
      emit_csv(table, out);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "claw: config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "claw: " << e.what() << '\n';
  }
  return 1;
}

int selftest() {
  bool ok = true;
  for (const auto& r : claw::harness::run_selftest()) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transport-collapse scheme for scalar conservation laws"};
  app.require_subcommand(1);

  std::string config;
  std::vector<std::string> overrides;
  auto* run_cmd = app.add_subcommand("run", "Run the experiment described by a config file");
  run_cmd->add_option("config", config, "Config file")->required();
  run_cmd->add_option("--set", overrides, "Override a config entry (key=value)");
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suites");
  auto* version_cmd = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*run_cmd) return run(config, overrides);
  if (*selftest_cmd) return selftest();
  if (*version_cmd) {
    std::cout << "claw " << claw::kVersion << '\n';
    return 0;
  }
  return 1;
}
