#include "tlo/report.hpp"

#include "json_reader.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>
#include <ostream>

namespace tlo {

namespace {

using detail::child;
using detail::json;
using detail::JsonReader;

json point(const Vec2& p) { return json::array({p.x(), p.y()}); }

json polygon_json(const TracedPolygon& t) {
  json verts = json::array();
  for (const auto& v : t.polygon.vertices) verts.push_back(point(v));
  return {{"vertices", verts}, {"clipped", t.clipped}};
}

json arrangement_geometry(const RobotModel& model, const WireArrangement& design, const JointState& q) {
  const Pose pose = forward_kinematics(model, q);
  json links = json::array();
  for (int d = 0; d < model.links(); ++d) {
    const auto& f = pose.link_frames[d];
    links.push_back({point(f.origin), point(f.to_world(Vec2(model.link_lengths[d], 0.0)))});
  }
  json wires = json::array();
  if (design.kind() == ArrangementKind::Variable) {
    for (const auto& pts : relay_world_positions(model, design.variable(), pose)) {
      json w = json::array();
      for (const auto& p : pts) w.push_back(point(p));
      wires.push_back(w);
    }
  }
  return {{"links", links}, {"wires", wires}};
}

std::vector<std::string> genome_columns(const GenomeLayout& layout) {
  std::vector<std::string> cols;
  for (int m = 0; m < layout.wires; ++m) {
    if (layout.kind == ArrangementKind::Constant) {
      for (int d = 0; d < layout.joints; ++d) cols.push_back(fmt::format("w{}_r{}", m + 1, d + 1));
      continue;
    }
    cols.push_back(fmt::format("w{}_l1", m + 1));
    for (int n = 2; n <= layout.relay_points; ++n) {
      cols.push_back(fmt::format("w{}_d{}", m + 1, n));
      cols.push_back(fmt::format("w{}_l{}", m + 1, n));
    }
  }
  return cols;
}

json genome_json(const Genome& g) { return {{"reals", g.reals}, {"categoricals", g.categoricals}}; }

} // namespace

json design_to_json(const WireArrangement& design, const RobotModel& model) {
  if (design.kind() == ArrangementKind::Variable) {
    json wires = json::array();
    for (const auto& wire : design.variable().wires) {
      json w = json::array();
      for (const auto& p : wire) w.push_back({{"link", p.link}, {"frac", p.fraction}});
      wires.push_back(w);
    }
    return {{"kind", "variable"}, {"wires", wires}};
  }
  const auto& f = design.constant().fractions;
  const Eigen::MatrixXd arms = moment_arms(model, design.constant());
  json ja = json::array(), jf = json::array();
  for (Eigen::Index m = 0; m < f.rows(); ++m) {
    json ra = json::array(), rf = json::array();
    for (Eigen::Index d = 0; d < f.cols(); ++d) {
      ra.push_back(arms(m, d));
      rf.push_back(f(m, d));
    }
    ja.push_back(ra);
    jf.push_back(rf);
  }
  return {{"kind", "constant"}, {"arms", ja}, {"fractions", jf}};
}

namespace {

WireArrangement read_design(const JsonReader& r, const json& j, const ScenarioConfig& config) {
  const std::string kind = r.string(r.member(j, "", "kind"), "/kind");
  const int D = config.robot.joints();
  const auto M = static_cast<std::size_t>(config.mode.wires);

  if (kind == "variable") {
    if (config.mode.kind != ArrangementKind::Variable) r.fail("/kind", "config expects a constant design");
    r.only_keys(j, "", {"kind", "wires"});
    const json& wires = r.array(r.member(j, "", "wires"), "/wires");
    if (wires.size() != M) r.fail("/wires", fmt::format("expected {} wires, found {}", M, wires.size()));
    VariableArrangement v;
    for (std::size_t m = 0; m < M; ++m) {
      const std::string wp = child("/wires", m);
      const json& wire = r.array(wires[m], wp, 2);
      if (static_cast<int>(wire.size()) != config.mode.relay_points)
        r.fail(wp, fmt::format("expected {} relay points", config.mode.relay_points));
      auto& out = v.wires.emplace_back();
      for (std::size_t n = 0; n < wire.size(); ++n) {
        const std::string pp = child(wp, n);
        r.only_keys(wire[n], pp, {"link", "frac"});
        const auto link = r.integer(r.member(wire[n], pp, "link"), child(pp, "link"));
        const double frac = r.number(r.member(wire[n], pp, "frac"), child(pp, "frac"));
        if (link < 0 || link > D) r.fail(child(pp, "link"), "link id out of range");
        if (n == 0 && link != 0) r.fail(child(pp, "link"), "first relay point must be on link 0");
        if (frac < 0.0 || frac > 1.0) r.fail(child(pp, "frac"), "frac must lie in [0, 1]");
        out.push_back({static_cast<int>(link), frac});
      }
    }
    return v;
  }

  if (kind == "constant") {
    if (config.mode.kind != ArrangementKind::Constant) r.fail("/kind", "config expects a variable design");
    r.only_keys(j, "", {"kind", "arms", "fractions"});
    const bool have_fractions = r.optional(j, "fractions") != nullptr;
    const std::string key = have_fractions ? "fractions" : "arms";
    const json& rows = r.array(r.member(j, "", key), "/" + key);
    if (rows.size() != M) r.fail("/" + key, fmt::format("expected {} wires, found {}", M, rows.size()));
    ConstantArrangement c;
    c.fractions.resize(static_cast<Eigen::Index>(M), D);
    for (std::size_t m = 0; m < M; ++m) {
      const std::string rp = child("/" + key, m);
      const json& row = r.array(rows[m], rp);
      if (static_cast<int>(row.size()) != D) r.fail(rp, fmt::format("expected {} joint entries", D));
      for (int d = 0; d < D; ++d) {
        const std::string ep = child(rp, static_cast<std::size_t>(d));
        const double v = r.number(row[d], ep);
        const auto& range = config.robot.moment_arm_ranges[d];
        const double frac = have_fractions ? v : (v - range.start) / (range.end - range.start);
        if (!(frac >= -1e-12 && frac <= 1.0 + 1e-12)) r.fail(ep, "moment arm outside the configured range");
        c.fractions(static_cast<Eigen::Index>(m), d) = std::clamp(frac, 0.0, 1.0);
      }
    }
    return c;
  }
  r.fail("/kind", "kind must be \"variable\" or \"constant\"");
}

} // namespace

WireArrangement parse_design(std::string_view text, const ScenarioConfig& config) {
  const JsonReader r(text);
  return read_design(r, r.parse(), config);
}

WireArrangement design_from_json(const nlohmann::json& j, const ScenarioConfig& config) {
  const std::string text = j.dump(2);
  const JsonReader r(text);
  return read_design(r, j, config);
}

json evaluation_report(const ScenarioConfig& config, const WireArrangement& design, const ReportOptions& options) {
  const Scenario scenario = config.scenario();
  const EvaluationResult result = evaluate(design, scenario);

  json report;
  report["schema_version"] = kSchemaVersion;
  report["scenario"] = config.name;
  report["gravity"] = config.gravity == GravityMode::On ? "on" : "off";
  report["design"] = design_to_json(design, config.robot);
  report["targets"] = {{"force_center", point(config.targets.force_center)},
                       {"force_radii", point(config.targets.force_radii)},
                       {"velocity_radii", point(config.targets.velocity_radii)},
                       {"n_directions", config.targets.n_directions}};
  report["h_cap"] = config.h_cap;
  json sketch = json::array();
  for (const auto& q : scenario.states) sketch.push_back(arrangement_geometry(scenario.model, design, q));
  report["arrangement"] = sketch;
  report["feasible"] = result.feasible;
  if (!result.feasible) return report;

  report["E_force"] = result.e_force;
  report["E_velocity"] = result.e_velocity;
  json configs = json::array();
  for (std::size_t k = 0; k < scenario.states.size(); ++k) {
    const JointState& q = scenario.states[k];
    const auto& score = result.configurations[k];
    const Snapshot s = take_snapshot(scenario.model, design, q, scenario.gravity);

    json c;
    c["theta_deg"] = config.joint_states_deg[k];
    c["h_force"] = score.h_force;
    c["h_velocity"] = score.h_velocity;
    c["E_force"] = score.e_force;
    c["E_velocity"] = score.e_velocity;

    Vec2 center = config.targets.force_center;
    if (scenario.gravity == GravityMode::On) {
      const GravityCenter gc = gravity_center(s.J, s.tau_g);
      center = gc.force;
      c["gravity_center"] = {{"force", point(gc.force)}, {"residual", gc.residual}, {"singular", gc.singular}};
    }
    c["force_center"] = point(center);

    const double force_limit = scenario.h_cap * config.targets.force_radii.maxCoeff();
    const double velocity_limit = scenario.h_cap * config.targets.velocity_radii.maxCoeff();
    const auto fp = trace_polygon(s, SpaceKind::Force, center, force_rhs(s, scenario.target, scenario.gravity),
                                  scenario.limits, options.n_rays, force_limit);
    const auto vp = trace_polygon(s, SpaceKind::Velocity, Vec2::Zero(), Eigen::VectorXd(), scenario.limits,
                                  options.n_rays, velocity_limit);
    if (fp) c["force_polygon"] = polygon_json(*fp);
    if (vp) c["velocity_polygon"] = polygon_json(*vp);
    configs.push_back(c);
  }
  report["configurations"] = configs;
  return report;
}

void write_samples_csv(std::ostream& out, const ParetoArchive& archive) {
  out << "index";
  for (const auto& col : genome_columns(archive.layout)) out << ',' << col;
  out << ",E_force,E_velocity,feasible\n";
  for (const auto& ind : archive.samples) {
    out << ind.eval_index;
    for (double g : flat_genome(ind.genome, archive.layout)) out << ',' << fmt::format("{}", g);
    out << ',' << fmt::format("{}", ind.objectives.force) << ',' << fmt::format("{}", ind.objectives.velocity) << ','
        << (ind.feasible ? 1 : 0) << '\n';
  }
}

json pareto_json(const ParetoArchive& archive, const ScenarioConfig& config) {
  json front = json::array();
  for (auto i : archive.front) {
    const auto& ind = archive.samples[i];
    front.push_back({{"index", ind.eval_index},
                     {"E_force", ind.objectives.force},
                     {"E_velocity", ind.objectives.velocity},
                     {"genome", genome_json(ind.genome)},
                     {"design", design_to_json(genome_decode(ind.genome, archive.layout), config.robot)}});
  }
  return {{"schema_version", kSchemaVersion},
          {"scenario", config.name},
          {"seed", archive.seed},
          {"evaluations", archive.evaluations},
          {"front", front}};
}

json progress_json(const GenerationRecord& rec) {
  return {{"generation", rec.generation},
          {"evaluations", rec.evaluations},
          {"front_size", rec.front_size},
          {"best_force", {rec.best_force.force, rec.best_force.velocity}},
          {"best_velocity", {rec.best_velocity.force, rec.best_velocity.velocity}}};
}

} // namespace tlo
