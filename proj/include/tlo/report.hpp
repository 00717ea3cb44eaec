#pragma once

// JSON/CSV artifacts: design serialization, single-design evaluation
// reports, optimization samples and Pareto fronts.

#include "tlo/config.hpp"

#include <iosfwd>

namespace tlo {

/// Variable: {"kind":"variable","wires":[[{"link":d,"frac":l},...],...]}.
/// Constant: {"kind":"constant","arms":M x D meters,"fractions":M x D}.
nlohmann::json design_to_json(const WireArrangement& design, const RobotModel& model);

/// Parses a design document and checks it against the config's mode and
/// dimensions. Throws ConfigError.
WireArrangement parse_design(std::string_view text, const ScenarioConfig& config);
WireArrangement design_from_json(const nlohmann::json& j, const ScenarioConfig& config);

struct ReportOptions {
  int n_rays = 64;
};

/// Per-configuration h arrays, totals, traced polygons, gravity centers and
/// arrangement geometry for plotting.
nlohmann::json evaluation_report(const ScenarioConfig& config, const WireArrangement& design,
                                 const ReportOptions& options = {});

/// One row per evaluation: index, genome columns, E_force, E_velocity, feasible.
void write_samples_csv(std::ostream& out, const ParetoArchive& archive);

nlohmann::json pareto_json(const ParetoArchive& archive, const ScenarioConfig& config);

nlohmann::json progress_json(const GenerationRecord& record);

} // namespace tlo
