#pragma once

// Shared helpers for the test binaries: seeded random designs and states,
// scenario loading, and an independent forward-kinematics oracle that does
// not go through the library's Pose machinery.

#include "tlo/config.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace test {

inline std::string source_path(const std::string& rel) { return std::string(TLO_SOURCE_DIR) + "/" + rel; }

inline tlo::ScenarioConfig load_scenario(const std::string& name) {
  return tlo::load_config(source_path("scenarios/" + name + ".json"));
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

inline tlo::VariableArrangement random_variable(Rng& rng, int wires, int relay_points, int joints) {
  tlo::VariableArrangement v;
  for (int m = 0; m < wires; ++m) {
    auto& w = v.wires.emplace_back();
    w.push_back({0, rng.uniform()});
    for (int n = 1; n < relay_points; ++n) w.push_back({rng.integer(0, joints), rng.uniform()});
  }
  return v;
}

inline tlo::ConstantArrangement random_constant(Rng& rng, int wires, int joints) {
  tlo::ConstantArrangement c;
  c.fractions.resize(wires, joints);
  for (Eigen::Index k = 0; k < c.fractions.size(); ++k) c.fractions(k) = rng.uniform();
  return c;
}

inline tlo::JointState random_state(Rng& rng, int joints) {
  Eigen::VectorXd q(joints);
  for (int k = 0; k < joints; ++k) q(k) = rng.uniform(-std::numbers::pi, std::numbers::pi);
  return tlo::JointState(q);
}

/// The 4-wire constant example: arms (0.1,0),
/// (-0.1,0), (0,0.1), (0,-0.1) m in the default [-0.1, 0.1] range.
inline tlo::ConstantArrangement four_wire_example() {
  tlo::ConstantArrangement c;
  c.fractions.resize(4, 2);
  c.fractions << 1.0, 0.5, 0.0, 0.5, 0.5, 1.0, 0.5, 0.0;
  return c;
}

// World position of a link-local point, accumulating angles directly.
inline tlo::Vec2 oracle_point(const tlo::RobotModel& model, const Eigen::VectorXd& q, int link, const tlo::Vec2& local) {
  tlo::Vec2 origin = tlo::Vec2::Zero();
  double phi = 0.0;
  for (int k = 0; k < link; ++k) {
    origin += model.link_lengths[k] * tlo::Vec2(std::cos(phi), std::sin(phi));
    phi += q(k);
  }
  const double c = std::cos(phi), s = std::sin(phi);
  return origin + tlo::Vec2(c * local.x() - s * local.y(), s * local.x() + c * local.y());
}

inline tlo::Vec2 oracle_ee(const tlo::RobotModel& model, const Eigen::VectorXd& q) {
  const int D = model.joints();
  return oracle_point(model, q, D, tlo::Vec2(model.link_lengths[D], 0.0));
}

inline Eigen::VectorXd oracle_lengths(const tlo::RobotModel& model, const tlo::VariableArrangement& v,
                                      const Eigen::VectorXd& q) {
  Eigen::VectorXd l(static_cast<Eigen::Index>(v.wires.size()));
  for (std::size_t m = 0; m < v.wires.size(); ++m) {
    double total = 0.0;
    for (std::size_t n = 0; n + 1 < v.wires[m].size(); ++n) {
      const auto& a = v.wires[m][n];
      const auto& b = v.wires[m][n + 1];
      const tlo::Vec2 pa = oracle_point(model, q, a.link, model.attach_segments[a.link].at(a.fraction));
      const tlo::Vec2 pb = oracle_point(model, q, b.link, model.attach_segments[b.link].at(b.fraction));
      total += (pb - pa).norm();
    }
    l(static_cast<Eigen::Index>(m)) = total;
  }
  return l;
}

inline double oracle_potential(const tlo::RobotModel& model, const Eigen::VectorXd& q) {
  double u = 0.0;
  for (int d = 1; d < model.links(); ++d)
    u -= model.link_masses[d] * model.gravity.dot(oracle_point(model, q, d, tlo::Vec2(0.5 * model.link_lengths[d], 0.0)));
  return u;
}

/// |a - b| <= rel * max(1, |b|)
inline bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

} // namespace test
