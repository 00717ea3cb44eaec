#include "tlo/feasibility.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tlo {

namespace {

constexpr double kSingularResidual = 1e-6;

Vec2 ellipse_direction(const Vec2& radii, int i, int n) {
  const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
  return {radii.x() * std::cos(a), radii.y() * std::sin(a)};
}

double capped(const std::optional<double>& h, double cap) { return std::min(*h, cap); }

} // namespace

void TargetSpec::validate() const {
  if (!(force_radii.x() > 0 && force_radii.y() > 0)) throw std::invalid_argument("force radii must be positive");
  if (!(velocity_radii.x() > 0 && velocity_radii.y() > 0))
    throw std::invalid_argument("velocity radii must be positive");
  if (!force_center.allFinite() || !force_radii.allFinite() || !velocity_radii.allFinite())
    throw std::invalid_argument("target parameters must be finite");
  if (n_directions < 3) throw std::invalid_argument("need at least 3 target directions");
}

Vec2 TargetSpec::force_direction(int i) const { return ellipse_direction(force_radii, i, n_directions); }
Vec2 TargetSpec::velocity_direction(int i) const { return ellipse_direction(velocity_radii, i, n_directions); }

void ActuatorLimits::validate() const {
  if (!(f_min > 0.0 && f_min < f_max && std::isfinite(f_max)))
    throw std::invalid_argument("tension limits must satisfy 0 < f_min < f_max");
  if (!(ldot_min < 0.0 && ldot_max > 0.0 && std::isfinite(ldot_min) && std::isfinite(ldot_max)))
    throw std::invalid_argument("wire speed limits must satisfy l_dot_min < 0 < l_dot_max");
}

void Scenario::validate() const {
  model.validate();
  target.validate();
  limits.validate();
  if (states.empty()) throw std::invalid_argument("scenario needs at least one joint state");
  for (const auto& q : states) {
    if (q.size() != model.joints()) throw std::invalid_argument("joint state dimension does not match the model");
    if (!q.angles.allFinite()) throw std::invalid_argument("joint angles must be finite");
  }
  if (!(h_cap >= 1.0)) throw std::invalid_argument("h_cap must be at least 1");
}

Snapshot take_snapshot(const RobotModel& model, const WireArrangement& design, const JointState& q,
                       GravityMode gravity) {
  Snapshot s;
  s.pose = forward_kinematics(model, q);
  s.J = joint_jacobian(s.pose);
  s.G = muscle_jacobian(model, design, q);
  s.tau_g = gravity == GravityMode::On ? gravity_torque(model, q) : Eigen::VectorXd::Zero(model.joints());
  return s;
}

std::optional<double> force_ray(const Snapshot& s, const Vec2& w, const Eigen::VectorXd& rhs,
                                const ActuatorLimits& limits) {
  const Eigen::Index M = s.G.rows(), D = s.G.cols();
  // Variables (h, f_1..f_M): -J^T w * h - G^T f = rhs.
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(1 + M);
  lp.objective[0] = 1.0;
  lp.eq_matrix.resize(D, 1 + M);
  lp.eq_matrix.col(0) = -(s.J.transpose() * w);
  lp.eq_matrix.rightCols(M) = -s.G.transpose();
  lp.eq_rhs = rhs;
  lp.lower = Eigen::VectorXd::Constant(1 + M, limits.f_min);
  lp.upper = Eigen::VectorXd::Constant(1 + M, limits.f_max);
  lp.lower[0] = 0.0;
  lp.upper[0] = std::numeric_limits<double>::infinity();

  const LpResult r = solve_lp_max(lp);
  switch (r.status) {
  case LpStatus::Infeasible:
    return std::nullopt;
  case LpStatus::Unbounded:
    return std::numeric_limits<double>::infinity();
  case LpStatus::Optimal:
    break;
  }
  return std::max(r.value, 0.0);
}

std::optional<double> velocity_ray(const Snapshot& s, const Vec2& w, const ActuatorLimits& limits) {
  const Eigen::Index M = s.G.rows(), D = s.G.cols();
  // Variables (h, qd_1..qd_D, s_1..s_M): J qd - h w = 0, G qd - s = 0.
  const Eigen::Index n = 1 + D + M;
  LinearProgram lp;
  lp.objective = Eigen::VectorXd::Zero(n);
  lp.objective[0] = 1.0;
  lp.eq_matrix = Eigen::MatrixXd::Zero(2 + M, n);
  lp.eq_matrix.block(0, 0, 2, 1) = -w;
  lp.eq_matrix.block(0, 1, 2, D) = s.J;
  lp.eq_matrix.block(2, 1, M, D) = s.G;
  lp.eq_matrix.block(2, 1 + D, M, M) = -Eigen::MatrixXd::Identity(M, M);
  lp.eq_rhs = Eigen::VectorXd::Zero(2 + M);
  lp.lower.resize(n);
  lp.upper.resize(n);
  lp.lower[0] = 0.0;
  lp.upper[0] = std::numeric_limits<double>::infinity();
  lp.lower.segment(1, D).setConstant(-kJointVelocityBound);
  lp.upper.segment(1, D).setConstant(kJointVelocityBound);
  lp.lower.tail(M).setConstant(limits.ldot_min);
  lp.upper.tail(M).setConstant(limits.ldot_max);

  const LpResult r = solve_lp_max(lp);
  switch (r.status) {
  case LpStatus::Infeasible:
    return std::nullopt;
  case LpStatus::Unbounded:
    return std::numeric_limits<double>::infinity();
  case LpStatus::Optimal:
    break;
  }
  return std::max(r.value, 0.0);
}

Eigen::VectorXd force_rhs(const Snapshot& s, const TargetSpec& target, GravityMode gravity) {
  if (gravity == GravityMode::On) return s.tau_g;
  return s.J.transpose() * target.force_center;
}

// The LP runs without an upper bound on h and the cap is applied afterwards,
// so any cap >= 1 yields bit-identical objectives.
std::optional<double> force_h(const Snapshot& s, const TargetSpec& target, const ActuatorLimits& limits, int i,
                              GravityMode gravity, double h_cap) {
  const auto h = force_ray(s, target.force_direction(i), force_rhs(s, target, gravity), limits);
  if (!h) return std::nullopt;
  return capped(h, h_cap);
}

std::optional<double> force_h(const RobotModel& model, const WireArrangement& design, const JointState& q,
                              const TargetSpec& target, const ActuatorLimits& limits, int i, GravityMode gravity,
                              double h_cap) {
  return force_h(take_snapshot(model, design, q, gravity), target, limits, i, gravity, h_cap);
}

std::optional<double> velocity_h(const Snapshot& s, const TargetSpec& target, const ActuatorLimits& limits, int i,
                                 double h_cap) {
  const auto h = velocity_ray(s, target.velocity_direction(i), limits);
  if (!h) return std::nullopt;
  return capped(h, h_cap);
}

std::optional<double> velocity_h(const RobotModel& model, const WireArrangement& design, const JointState& q,
                                 const TargetSpec& target, const ActuatorLimits& limits, int i, double h_cap) {
  return velocity_h(take_snapshot(model, design, q, GravityMode::Off), target, limits, i, h_cap);
}

GravityCenter gravity_center(const Eigen::MatrixXd& J, const Eigen::VectorXd& tau_g) {
  const Eigen::MatrixXd Jt = J.transpose();
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Jt);
  cod.setThreshold(1e-12);
  GravityCenter gc;
  gc.force = cod.solve(tau_g);
  gc.residual = (Jt * gc.force - tau_g).norm();
  gc.singular = gc.residual > kSingularResidual;
  return gc;
}

GravityCenter gravity_center(const RobotModel& model, const JointState& q) {
  return gravity_center(joint_jacobian(model, q), gravity_torque(model, q));
}

EvaluationResult evaluate(const WireArrangement& design, const Scenario& scenario, GravityRhs gravity_rhs) {
  EvaluationResult result;
  const auto& t = scenario.target;
  result.configurations.reserve(scenario.states.size());

  for (const auto& q : scenario.states) {
    const Snapshot s = take_snapshot(scenario.model, design, q, scenario.gravity);
    Eigen::VectorXd rhs = force_rhs(s, t, scenario.gravity);
    if (scenario.gravity == GravityMode::On && gravity_rhs == GravityRhs::CenterProjection)
      rhs = s.J.transpose() * gravity_center(s.J, s.tau_g).force;

    ConfigurationScore score;
    score.h_force.reserve(t.n_directions);
    score.h_velocity.reserve(t.n_directions);
    for (int i = 0; i < t.n_directions; ++i) {
      const auto h = force_ray(s, t.force_direction(i), rhs, scenario.limits);
      if (!h) {
        result.feasible = false;
        return result;
      }
      score.h_force.push_back(capped(h, scenario.h_cap));
    }
    for (int i = 0; i < t.n_directions; ++i) {
      const auto h = velocity_h(s, t, scenario.limits, i, scenario.h_cap);
      if (!h) {
        result.feasible = false;
        return result;
      }
      score.h_velocity.push_back(*h);
    }
    for (double h : score.h_force) score.e_force += std::max(1.0 - h, 0.0);
    for (double h : score.h_velocity) score.e_velocity += std::max(1.0 - h, 0.0);
    result.e_force += score.e_force;
    result.e_velocity += score.e_velocity;
    result.configurations.push_back(std::move(score));
  }
  result.feasible = true;
  return result;
}

std::optional<TracedPolygon> trace_polygon(const Snapshot& s, SpaceKind which, const Vec2& center,
                                           const Eigen::VectorXd& rhs, const ActuatorLimits& limits, int n_rays,
                                           double h_limit) {
  if (n_rays < 8) throw std::invalid_argument("trace_polygon needs at least 8 rays");
  TracedPolygon out;
  out.center = center;
  std::vector<Vec2> boundary;
  boundary.reserve(n_rays);
  for (int k = 0; k < n_rays; ++k) {
    const Vec2 w = ellipse_direction(Vec2(1.0, 1.0), k, n_rays);
    const auto h = which == SpaceKind::Force ? force_ray(s, w, rhs, limits) : velocity_ray(s, w, limits);
    if (!h) return std::nullopt;
    double reach = *h;
    if (reach > h_limit) {
      reach = h_limit;
      out.clipped = true;
    }
    if (!std::isfinite(reach)) {
      out.clipped = true;
      continue;
    }
    boundary.push_back(center + reach * w);
  }
  if (boundary.empty()) boundary.push_back(center);
  out.polygon = convex_hull(std::move(boundary));
  return out;
}

std::optional<TracedPolygon> trace_polygon(const RobotModel& model, const WireArrangement& design,
                                           const JointState& q, SpaceKind which, const TargetSpec& target,
                                           const ActuatorLimits& limits, GravityMode gravity, int n_rays,
                                           double h_limit) {
  const Snapshot s = take_snapshot(model, design, q, gravity);
  if (which == SpaceKind::Velocity) return trace_polygon(s, which, Vec2::Zero(), Eigen::VectorXd(), limits, n_rays, h_limit);
  const Vec2 center = gravity == GravityMode::On ? gravity_center(s.J, s.tau_g).force : target.force_center;
  return trace_polygon(s, which, center, force_rhs(s, target, gravity), limits, n_rays, h_limit);
}

} // namespace tlo
