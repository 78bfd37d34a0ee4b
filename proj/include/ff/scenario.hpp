#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ff/poisson.hpp"

namespace ff {

/// Configuration or input errors: bad JSON, unparseable polynomial text,
/// unknown scenario, invalid grid bounds, singular flow starts. Mapped to
/// exit code 2, as opposed to verification failures (exit 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FlowSpec {
  std::string h;
  std::vector<double> x0;
  double T = 1.0;
  double dt = 1e-3;
  int output_every = 10;
};

struct FitSpec {
  std::vector<double> base;
  std::vector<double> direction;
};

struct ScenarioConfig {
  std::string command = "verify";  // verify | flow | scaling | near-symplectic | contrast | all
  std::string scenario = "lefschetz";
  // lefschetz | fold | fold-nonorientable | custom-casimirs | near-symplectic | contrast
  std::string k_text = "1";
  std::vector<std::string> casimir_texts;
  std::string f_text = "-x1^2+x2^2+x3^2";
  std::vector<int> grid_counts;  // empty = scenario default
  std::optional<FlowSpec> flow;
  std::optional<FitSpec> fit;
  std::vector<double> radii;  // empty = default 1e-1..1e-3, 9 points
  std::string output_dir = "out";
  uint64_t seed = 0;
};

/// Loads a JSON config file; unknown keys are rejected.
ScenarioConfig load_config(const std::string& path);

/// Geometric radius ladder "hi..lo" (count points), or an explicit
/// comma-separated list.
std::vector<double> parse_radii(const std::string& text, int count = 9);

std::vector<double> parse_point(const std::string& text);

struct CheckResult {
  std::string name;
  bool pass = false;
  bool exact = false;
  std::string detail;
  std::optional<std::vector<double>> witness;
  std::optional<double> residual;
};

struct RunResult {
  std::vector<CheckResult> checks;
  std::vector<std::string> artifacts;
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Executes the configured pipeline, writing artifacts plus summary.json
/// under cfg.output_dir. Returns the run result; throws ConfigError on bad
/// input. The caller maps results to exit codes.
RunResult run_scenario(const ScenarioConfig& cfg, std::ostream& log);

/// 0 when every check passed, 1 otherwise.
int exit_code(const RunResult& result);

}  // namespace ff
