#pragma once

// SVG rendering of evaluation reports: one force and one velocity panel per
// evaluated joint state plus an arrangement sketch.

#include <json.hpp>

#include <string>
#include <vector>

namespace tlo {

struct SvgFile {
  std::string name;
  std::string content;
};

/// Panels are named force_q<k>.svg / velocity_q<k>.svg (k from 1) and the
/// sketch arrangement.svg. An infeasible report yields only the sketch.
/// Throws std::invalid_argument when the report lacks required fields.
std::vector<SvgFile> render_report(const nlohmann::json& report);

} // namespace tlo
