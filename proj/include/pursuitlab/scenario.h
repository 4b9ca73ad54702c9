#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pursuitlab/engine.h"

namespace pursuitlab {

// A parsed scenario file: shallow fields for cataloguing plus the full
// document the runner executes from. Numeric fields are decimal strings in
// the file (plain JSON numbers are also accepted); parse_scenario validates
// the schema and anchors every complaint to its field path.
struct Scenario {
  std::string name;
  std::string description;
  std::vector<std::string> tags;
  std::string mode;  // continuum | discrete | solve | sweep | fixedpoint
  nlohmann::json doc;
};

// Command-line overrides; unset fields defer to the scenario file.
struct RunOptions {
  std::string out_dir;  // prefix for relative artifact paths ("" = cwd)
  std::optional<double> dt;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
};

struct RunOutcome {
  int exit_code = 0;  // 0 success, 2 strategy fault, 3 validation error
  std::string summary;
  std::vector<std::string> artifacts;  // files written
};

Scenario parse_scenario(const nlohmann::json& doc, const std::string& origin);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

// Executes one scenario, writing its artifacts. Strategy faults surface in
// the exit code and summary, not as exceptions; schema and configuration
// problems throw UsageError / DomainError (the CLI maps those to exit 3).
RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options);

struct BatteryRow {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs every scenario, collecting per-scenario failures instead of stopping.
std::vector<BatteryRow> run_battery(const std::vector<Scenario>& scenarios,
                                    const RunOptions& options);

}  // namespace pursuitlab
