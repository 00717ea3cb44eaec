#include "tlo/report.hpp"
#include "tlo/svg.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>

using namespace tlo;
using nlohmann::json;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

// Tags open and close in order; good enough for the generator's own output.
bool balanced_tags(const std::string& svg) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([a-zA-Z]+)[^>]*?(/?)>)");
  for (std::sregex_iterator it(svg.begin(), svg.end(), tag), end; it != end; ++it) {
    const auto& m = *it;
    if (m[3] == "/") continue;
    if (m[1] == "/") {
      if (stack.empty() || stack.back() != m[2]) return false;
      stack.pop_back();
    } else {
      stack.push_back(m[2]);
    }
  }
  return stack.empty();
}

const SvgFile& find(const std::vector<SvgFile>& files, const std::string& name) {
  for (const auto& f : files)
    if (f.name == name) return f;
  FAIL("missing " << name);
  throw;
}

ScenarioConfig example_config() { return test::load_scenario("target1_nograv"); }

WireArrangement example_design(const ScenarioConfig& c) {
  return parse_design(read_text_file(test::source_path("scenarios/designs/target1_nograv_example.json")), c);
}

} // namespace

TEST_CASE("design documents round-trip") {
  const ScenarioConfig c = example_config();
  const WireArrangement d = example_design(c);
  CHECK(design_from_json(design_to_json(d, c.robot), c) == d);

  ScenarioConfig k = test::load_scenario("target1_constant");
  const WireArrangement four = test::four_wire_example();
  const json j = design_to_json(four, k.robot);
  CHECK(j["arms"][0][0].get<double>() == doctest::Approx(0.1));
  CHECK(design_from_json(j, k) == four);
  json arms_only = j;
  arms_only.erase("fractions");
  CHECK(design_from_json(arms_only, k) == four);
}

TEST_CASE("design documents are checked against the config") {
  const ScenarioConfig c = example_config();
  const json good = design_to_json(example_design(c), c.robot);
  const auto rejects = [&](const std::string& pointer, const json& value) {
    json j = good;
    j[json::json_pointer(pointer)] = value;
    CAPTURE(pointer);
    CHECK_THROWS_AS(design_from_json(j, c), ConfigError);
  };
  rejects("/kind", "constant");
  rejects("/wires/0/0/link", 1);
  rejects("/wires/0/1/link", 3);
  rejects("/wires/0/1/frac", 1.5);
  rejects("/wires/2", json::array({{{"link", 0}, {"frac", 0.5}}}));
  json fewer = good;
  fewer["wires"].erase(0);
  CHECK_THROWS_AS(design_from_json(fewer, c), ConfigError);
  CHECK_THROWS_AS(parse_design("{", c), ConfigError);
}

TEST_CASE("evaluation report of the example design") {
  const ScenarioConfig c = example_config();
  const WireArrangement d = example_design(c);
  const json r = evaluation_report(c, d);
  REQUIRE(r["feasible"] == true);
  const EvaluationResult e = evaluate(d, c.scenario());
  CHECK(r["E_force"].get<double>() == e.e_force);
  CHECK(r["E_velocity"].get<double>() == e.e_velocity);
  REQUIRE(r["configurations"].size() == 4);
  for (const auto& q : r["configurations"]) {
    CHECK(q["h_force"].size() == 8);
    CHECK(q["force_polygon"]["vertices"].size() >= 3);
  }
  CHECK(r["arrangement"].size() == 4);
}

TEST_CASE("infeasible designs report only feasible=false and the sketch") {
  ScenarioConfig c = example_config();
  c.gravity = GravityMode::On;
  c.robot.link_masses = {0.0, 400.0, 400.0};
  const json r = evaluation_report(c, example_design(c));
  CHECK(r["feasible"] == false);
  CHECK_FALSE(r.contains("E_force"));
  const auto files = render_report(r);
  REQUIRE(files.size() == 1);
  CHECK(files[0].name == "arrangement.svg");
}

TEST_CASE("each panel draws exactly one blue target ellipse") {
  const ScenarioConfig c = example_config();
  const auto files = render_report(evaluation_report(c, example_design(c)));
  CHECK(files.size() == 9);
  for (const auto& f : files) {
    CAPTURE(f.name);
    CHECK(f.content.starts_with("<?xml"));
    CHECK(count(f.content, "<svg ") == 1);
    CHECK(balanced_tags(f.content));
    if (f.name == "arrangement.svg") continue;
    CHECK(count(f.content, "class=\"target\"") == 1);
    CHECK(count(f.content, "#1f3fd1") == 1);
    CHECK(count(f.content, "class=\"feasible\"") == 1);
  }
}

TEST_CASE("a point-like force set is drawn as a marker") {
  ScenarioConfig c = example_config();
  VariableArrangement v;
  for (int m = 0; m < 3; ++m) v.wires.push_back({{0, 0.2}, {0, 0.8}});
  const auto files = render_report(evaluation_report(c, v));
  const SvgFile& f = find(files, "force_q1.svg");
  CHECK(std::regex_search(f.content, std::regex(R"(<circle class="feasible")")));
}

TEST_CASE("constant designs list their moment arms") {
  const ScenarioConfig c = test::load_scenario("target1_constant");
  const auto files = render_report(evaluation_report(c, WireArrangement(test::four_wire_example())));
  const SvgFile& f = find(files, "arrangement.svg");
  CHECK(f.content.find("moment arms [m]") != std::string::npos);
  CHECK(f.content.find("w1: +0.1000") != std::string::npos);
}

TEST_CASE("malformed reports are rejected") {
  CHECK_THROWS_AS(render_report(json::object()), std::invalid_argument);
  CHECK_THROWS_AS(render_report(json{{"feasible", true}}), std::invalid_argument);
}

TEST_CASE("panels match the golden files") {
  const ScenarioConfig c = example_config();
  const auto files = render_report(evaluation_report(c, example_design(c)));
  const bool update = std::getenv("TLO_UPDATE_GOLDEN") != nullptr;
  for (const std::string name : {"force_q1.svg", "velocity_q1.svg", "arrangement.svg"}) {
    const std::string path = test::source_path("tests/golden/" + name);
    const SvgFile& f = find(files, name);
    if (update) std::ofstream(path, std::ios::binary) << f.content;
    CAPTURE(name);
    CHECK(read_text_file(path) == f.content);
  }
}
