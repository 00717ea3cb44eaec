#include "tlo/config.hpp"

#include "json_reader.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace tlo {

namespace detail {

json JsonReader::parse() const {
  try {
    return json::parse(text_.begin(), text_.end());
  } catch (const json::parse_error& e) {
    // Count lines up to the failing byte; nlohmann reports a 1-based offset.
    int line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text_.size(); ++i)
      if (text_[i] == '\n') ++line;
    throw ConfigError(line, std::string("invalid JSON: ") + e.what());
  }
}

const json& JsonReader::object(const json& j, const std::string& ptr) const {
  if (!j.is_object()) fail(ptr, "expected an object");
  return j;
}

const json& JsonReader::array(const json& j, const std::string& ptr, std::size_t min_size) const {
  if (!j.is_array()) fail(ptr, "expected an array");
  if (j.size() < min_size) fail(ptr, "expected at least " + std::to_string(min_size) + " entries");
  return j;
}

const json& JsonReader::member(const json& obj, const std::string& ptr, const std::string& key) const {
  object(obj, ptr);
  auto it = obj.find(key);
  if (it == obj.end()) fail(ptr, "missing required key \"" + key + "\"");
  return *it;
}

const json* JsonReader::optional(const json& obj, const std::string& key) const {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void JsonReader::only_keys(const json& obj, const std::string& ptr, std::initializer_list<std::string_view> keys) const {
  object(obj, ptr);
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (auto k : keys) known = known || it.key() == k;
    if (!known) fail(child(ptr, it.key()), "unknown key \"" + it.key() + "\"");
  }
}

double JsonReader::number(const json& j, const std::string& ptr) const {
  if (!j.is_number()) fail(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ptr, "expected a finite number");
  return v;
}

long long JsonReader::integer(const json& j, const std::string& ptr) const {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  if (j.is_number_unsigned()) {
    const auto u = j.get<unsigned long long>();
    if (u > static_cast<unsigned long long>(std::numeric_limits<long long>::max())) fail(ptr, "integer too large");
    return static_cast<long long>(u);
  }
  return j.get<long long>();
}

std::string JsonReader::string(const json& j, const std::string& ptr) const {
  if (!j.is_string()) fail(ptr, "expected a string");
  return j.get<std::string>();
}

Vec2 JsonReader::vec2(const json& j, const std::string& ptr) const {
  if (!j.is_array() || j.size() != 2) fail(ptr, "expected a 2-element array");
  return {number(j[0], child(ptr, 0)), number(j[1], child(ptr, 1))};
}

} // namespace detail

namespace {

using detail::child;
using detail::json;
using detail::JsonReader;

std::vector<double> number_list(const JsonReader& r, const json& j, const std::string& ptr, std::size_t min_size) {
  r.array(j, ptr, min_size);
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(r.number(j[i], child(ptr, i)));
  return out;
}

RobotModel read_robot(const JsonReader& r, const json& j, const std::string& ptr) {
  r.only_keys(j, ptr, {"link_lengths", "link_masses", "attach_segments", "gravity", "moment_arm_ranges"});
  RobotModel m;
  const std::string lp = child(ptr, "link_lengths");
  m.link_lengths = number_list(r, r.member(j, ptr, "link_lengths"), lp, 2);
  for (std::size_t d = 0; d < m.link_lengths.size(); ++d)
    if (!(m.link_lengths[d] > 0.0)) r.fail(child(lp, d), "link length must be positive");
  const auto links = m.link_lengths.size();

  const std::string mp = child(ptr, "link_masses");
  m.link_masses = number_list(r, r.member(j, ptr, "link_masses"), mp, links);
  if (m.link_masses.size() != links) r.fail(mp, "expected one mass per link");
  for (std::size_t d = 0; d < links; ++d)
    if (m.link_masses[d] < 0.0) r.fail(child(mp, d), "mass must be non-negative");

  if (const json* segs = r.optional(j, "attach_segments")) {
    const std::string sp = child(ptr, "attach_segments");
    r.array(*segs, sp, links);
    if (segs->size() != links) r.fail(sp, "expected one attach segment per link");
    for (std::size_t d = 0; d < links; ++d) {
      const std::string dp = child(sp, d);
      if (!(*segs)[d].is_array() || (*segs)[d].size() != 2) r.fail(dp, "expected [[x, y], [x, y]]");
      AttachSegment seg{r.vec2((*segs)[d][0], child(dp, 0)), r.vec2((*segs)[d][1], child(dp, 1))};
      const double bound = m.link_lengths[d] + 1e-9;
      for (const Vec2& p : {seg.start, seg.end})
        if (std::abs(p.x()) > bound || std::abs(p.y()) > bound) r.fail(dp, "attach segment leaves the link");
      m.attach_segments.push_back(seg);
    }
  } else {
    m.use_centerline_segments();
  }

  if (const json* g = r.optional(j, "gravity")) m.gravity = r.vec2(*g, child(ptr, "gravity"));

  if (const json* arms = r.optional(j, "moment_arm_ranges")) {
    const std::string ap = child(ptr, "moment_arm_ranges");
    r.array(*arms, ap, links - 1);
    if (arms->size() != links - 1) r.fail(ap, "expected one range per joint");
    for (std::size_t d = 0; d + 1 < links; ++d) {
      const Vec2 v = r.vec2((*arms)[d], child(ap, d));
      m.moment_arm_ranges.push_back({v.x(), v.y()});
    }
  } else {
    m.moment_arm_ranges.assign(links - 1, MomentArmRange{});
  }
  return m;
}

ModeConfig read_mode(const JsonReader& r, const json& j, const std::string& ptr) {
  ModeConfig mode;
  const std::string kind = r.string(r.member(j, ptr, "kind"), child(ptr, "kind"));
  if (kind == "variable") {
    r.only_keys(j, ptr, {"kind", "wires", "relay_points"});
    mode.kind = ArrangementKind::Variable;
    mode.relay_points = static_cast<int>(r.integer(r.member(j, ptr, "relay_points"), child(ptr, "relay_points")));
    if (mode.relay_points < 2) r.fail(child(ptr, "relay_points"), "relay_points must be at least 2");
  } else if (kind == "constant") {
    r.only_keys(j, ptr, {"kind", "wires"});
    mode.kind = ArrangementKind::Constant;
    mode.relay_points = 0;
  } else {
    r.fail(child(ptr, "kind"), "kind must be \"variable\" or \"constant\"");
  }
  mode.wires = static_cast<int>(r.integer(r.member(j, ptr, "wires"), child(ptr, "wires")));
  if (mode.wires < 1) r.fail(child(ptr, "wires"), "wires must be at least 1");
  return mode;
}

ActuatorLimits read_limits(const JsonReader& r, const json& j, const std::string& ptr) {
  r.only_keys(j, ptr, {"f_min", "f_max", "ldot_min", "ldot_max"});
  ActuatorLimits l;
  l.f_min = r.number(r.member(j, ptr, "f_min"), child(ptr, "f_min"));
  l.f_max = r.number(r.member(j, ptr, "f_max"), child(ptr, "f_max"));
  l.ldot_min = r.number(r.member(j, ptr, "ldot_min"), child(ptr, "ldot_min"));
  l.ldot_max = r.number(r.member(j, ptr, "ldot_max"), child(ptr, "ldot_max"));
  if (!(l.f_min > 0.0)) r.fail(child(ptr, "f_min"), "f_min must be positive");
  if (!(l.f_max > l.f_min)) r.fail(child(ptr, "f_max"), "f_max must exceed f_min");
  if (!(l.ldot_min < 0.0)) r.fail(child(ptr, "ldot_min"), "ldot_min must be negative");
  if (!(l.ldot_max > 0.0)) r.fail(child(ptr, "ldot_max"), "ldot_max must be positive");
  return l;
}

TargetSpec read_targets(const JsonReader& r, const json& j, const std::string& ptr, std::string& notes) {
  r.only_keys(j, ptr, {"force_center", "force_radii", "velocity_radii", "n_directions", "notes"});
  TargetSpec t;
  t.force_center = r.vec2(r.member(j, ptr, "force_center"), child(ptr, "force_center"));
  t.force_radii = r.vec2(r.member(j, ptr, "force_radii"), child(ptr, "force_radii"));
  t.velocity_radii = r.vec2(r.member(j, ptr, "velocity_radii"), child(ptr, "velocity_radii"));
  t.n_directions = static_cast<int>(r.integer(r.member(j, ptr, "n_directions"), child(ptr, "n_directions")));
  if (!(t.force_radii.x() > 0 && t.force_radii.y() > 0)) r.fail(child(ptr, "force_radii"), "radii must be positive");
  if (!(t.velocity_radii.x() > 0 && t.velocity_radii.y() > 0))
    r.fail(child(ptr, "velocity_radii"), "radii must be positive");
  if (t.n_directions < 3) r.fail(child(ptr, "n_directions"), "n_directions must be at least 3");
  if (const json* n = r.optional(j, "notes")) notes = r.string(*n, child(ptr, "notes"));
  return t;
}

OptimizerConfig read_optimizer(const JsonReader& r, const json& j, const std::string& ptr) {
  r.only_keys(j, ptr, {"population", "budget", "seed"});
  OptimizerConfig o;
  const long long pop = r.integer(r.member(j, ptr, "population"), child(ptr, "population"));
  if (pop < 2 || pop % 2 != 0) r.fail(child(ptr, "population"), "population must be even and at least 2");
  const long long budget = r.integer(r.member(j, ptr, "budget"), child(ptr, "budget"));
  if (budget < pop) r.fail(child(ptr, "budget"), "budget must be at least the population size");
  const json& seed = r.member(j, ptr, "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
    r.fail(child(ptr, "seed"), "seed must be a non-negative integer");
  o.population = static_cast<int>(pop);
  o.budget = static_cast<std::size_t>(budget);
  o.seed = seed.get<std::uint64_t>();
  return o;
}

} // namespace

ScenarioConfig parse_config(std::string_view text) {
  const JsonReader r(text);
  const json root = r.parse();
  r.only_keys(root, "",
              {"schema_version", "name", "notes", "robot", "mode", "limits", "targets", "gravity",
               "evaluated_joint_states_deg", "optimizer", "h_cap"});

  ScenarioConfig c;
  c.schema_version = static_cast<int>(r.integer(r.member(root, "", "schema_version"), "/schema_version"));
  if (c.schema_version != kSchemaVersion)
    r.fail("/schema_version", "unsupported schema_version " + std::to_string(c.schema_version));
  if (const json* n = r.optional(root, "name")) c.name = r.string(*n, "/name");
  if (const json* n = r.optional(root, "notes")) c.notes = r.string(*n, "/notes");
  c.robot = read_robot(r, r.member(root, "", "robot"), "/robot");
  c.mode = read_mode(r, r.member(root, "", "mode"), "/mode");
  c.limits = read_limits(r, r.member(root, "", "limits"), "/limits");
  c.targets = read_targets(r, r.member(root, "", "targets"), "/targets", c.target_notes);

  const std::string gravity = r.string(r.member(root, "", "gravity"), "/gravity");
  if (gravity == "on")
    c.gravity = GravityMode::On;
  else if (gravity == "off")
    c.gravity = GravityMode::Off;
  else
    r.fail("/gravity", "gravity must be \"on\" or \"off\"");

  const std::string sp = "/evaluated_joint_states_deg";
  const json& states = r.array(r.member(root, "", "evaluated_joint_states_deg"), sp, 1);
  const auto D = static_cast<std::size_t>(c.robot.joints());
  for (std::size_t k = 0; k < states.size(); ++k) {
    auto q = number_list(r, states[k], child(sp, k), D);
    if (q.size() != D) r.fail(child(sp, k), "expected " + std::to_string(D) + " joint angles");
    c.joint_states_deg.push_back(std::move(q));
  }

  c.optimizer = read_optimizer(r, r.member(root, "", "optimizer"), "/optimizer");
  if (const json* h = r.optional(root, "h_cap")) {
    c.h_cap = r.number(*h, "/h_cap");
    if (c.h_cap < 1.0) r.fail("/h_cap", "h_cap must be at least 1");
  }
  return c;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScenarioConfig load_config(const std::filesystem::path& path) { return parse_config(read_text_file(path)); }

nlohmann::json config_to_json(const ScenarioConfig& c) {
  json j;
  j["schema_version"] = c.schema_version;
  j["name"] = c.name;
  if (!c.notes.empty()) j["notes"] = c.notes;

  json robot;
  robot["link_lengths"] = c.robot.link_lengths;
  robot["link_masses"] = c.robot.link_masses;
  json segs = json::array();
  for (const auto& s : c.robot.attach_segments)
    segs.push_back({{s.start.x(), s.start.y()}, {s.end.x(), s.end.y()}});
  robot["attach_segments"] = segs;
  robot["gravity"] = {c.robot.gravity.x(), c.robot.gravity.y()};
  json arms = json::array();
  for (const auto& a : c.robot.moment_arm_ranges) arms.push_back({a.start, a.end});
  robot["moment_arm_ranges"] = arms;
  j["robot"] = robot;

  if (c.mode.kind == ArrangementKind::Variable)
    j["mode"] = {{"kind", "variable"}, {"wires", c.mode.wires}, {"relay_points", c.mode.relay_points}};
  else
    j["mode"] = {{"kind", "constant"}, {"wires", c.mode.wires}};

  j["limits"] = {{"f_min", c.limits.f_min},
                 {"f_max", c.limits.f_max},
                 {"ldot_min", c.limits.ldot_min},
                 {"ldot_max", c.limits.ldot_max}};
  json targets = {{"force_center", {c.targets.force_center.x(), c.targets.force_center.y()}},
                  {"force_radii", {c.targets.force_radii.x(), c.targets.force_radii.y()}},
                  {"velocity_radii", {c.targets.velocity_radii.x(), c.targets.velocity_radii.y()}},
                  {"n_directions", c.targets.n_directions}};
  if (!c.target_notes.empty()) targets["notes"] = c.target_notes;
  j["targets"] = targets;
  j["gravity"] = c.gravity == GravityMode::On ? "on" : "off";
  j["evaluated_joint_states_deg"] = c.joint_states_deg;
  j["optimizer"] = {{"population", c.optimizer.population},
                    {"budget", c.optimizer.budget},
                    {"seed", c.optimizer.seed}};
  j["h_cap"] = c.h_cap;
  return j;
}

Scenario ScenarioConfig::scenario() const {
  Scenario s;
  s.model = robot;
  s.target = targets;
  s.limits = limits;
  s.gravity = gravity;
  s.h_cap = h_cap;
  for (const auto& deg : joint_states_deg) {
    Eigen::VectorXd q(static_cast<Eigen::Index>(deg.size()));
    for (std::size_t k = 0; k < deg.size(); ++k) q[static_cast<Eigen::Index>(k)] = deg[k] * std::numbers::pi / 180.0;
    s.states.emplace_back(std::move(q));
  }
  return s;
}

GenomeLayout ScenarioConfig::layout() const {
  GenomeLayout l;
  l.kind = mode.kind;
  l.wires = mode.wires;
  l.relay_points = mode.kind == ArrangementKind::Variable ? mode.relay_points : 0;
  l.joints = robot.joints();
  return l;
}

} // namespace tlo
