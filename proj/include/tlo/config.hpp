#pragma once

// Scenario configuration documents (JSON, "schema_version": 1). Joint states
// are written in degrees and converted to radians when a Scenario is built.

#include "tlo/feasibility.hpp"
#include "tlo/nsga2.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tlo {

inline constexpr int kSchemaVersion = 1;

/// Schema or syntax violation, pinned to a 1-based line of the document.
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

struct ModeConfig {
  ArrangementKind kind = ArrangementKind::Variable;
  int wires = 3;
  int relay_points = 2; // variable mode only

  bool operator==(const ModeConfig&) const = default;
};

struct OptimizerConfig {
  int population = 100;
  std::size_t budget = 10000;
  std::uint64_t seed = 1;

  bool operator==(const OptimizerConfig&) const = default;
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  std::string name;
  std::string notes;
  RobotModel robot = RobotModel::planar_two_joint();
  ModeConfig mode;
  ActuatorLimits limits;
  TargetSpec targets;
  std::string target_notes;
  GravityMode gravity = GravityMode::Off;
  std::vector<std::vector<double>> joint_states_deg;
  OptimizerConfig optimizer;
  double h_cap = 10.0;

  Scenario scenario() const;
  GenomeLayout layout() const;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError on syntax or schema violations.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const ScenarioConfig& config);

/// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string read_text_file(const std::filesystem::path& path);

/// 1-based line where the value at `pointer` starts, falling back to the
/// closest existing parent (line 1 for the root).
int locate_line(std::string_view text, const std::string& pointer);

} // namespace tlo
