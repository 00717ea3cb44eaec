#pragma once

// Scores a wire arrangement by how far its feasible end-effector force and
// velocity sets reach along rays toward target ellipses. For each of N_d
// directions w_i the largest ray scale h_i is found by linear programming;
// the objective sums max(1 - h_i, 0) over directions and joint states.

#include "tlo/arrangement.hpp"
#include "tlo/geometry.hpp"
#include "tlo/lp.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace tlo {

struct TargetSpec {
  Vec2 force_center = Vec2::Zero();  // N
  Vec2 force_radii{1.0, 1.0};        // N
  Vec2 velocity_radii{1.0, 1.0};     // m/s
  int n_directions = 8;

  void validate() const;
  /// (F_rx cos(2 pi i / N_d), F_ry sin(2 pi i / N_d))
  Vec2 force_direction(int i) const;
  Vec2 velocity_direction(int i) const;

  bool operator==(const TargetSpec&) const = default;
};

struct ActuatorLimits {
  double f_min = 10.0;     // N
  double f_max = 200.0;    // N
  double ldot_min = -0.4;  // m/s
  double ldot_max = 0.4;   // m/s

  void validate() const;
  bool operator==(const ActuatorLimits&) const = default;
};

enum class GravityMode { Off, On };

/// Bounds of the free joint velocities inside the velocity LP.
inline constexpr double kJointVelocityBound = 1e6;

/// Everything needed to score a design: the arm, the joint states it is
/// scored at, targets and limits.
struct Scenario {
  RobotModel model;
  std::vector<JointState> states;
  TargetSpec target;
  ActuatorLimits limits;
  GravityMode gravity = GravityMode::Off;
  double h_cap = 10.0;

  void validate() const;
  /// Upper bound of either objective: N_d * |Q|.
  double max_objective() const { return static_cast<double>(target.n_directions) * static_cast<double>(states.size()); }
};

/// Kinematic quantities at one joint state, computed once per design and state.
struct Snapshot {
  Pose pose;
  Eigen::MatrixXd J;     // 2 x D
  Eigen::MatrixXd G;     // M x D
  Eigen::VectorXd tau_g; // gravity compensation torque (zero when off)
};

Snapshot take_snapshot(const RobotModel& model, const WireArrangement& design, const JointState& q, GravityMode gravity);

/// Raw ray LP for forces: maximize h >= 0 over tensions f in [f_min, f_max]
/// with -G^T f = rhs + h J^T w. Returns nullopt when infeasible, +inf when
/// unbounded, otherwise the uncapped optimum.
std::optional<double> force_ray(const Snapshot& s, const Vec2& w, const Eigen::VectorXd& rhs,
                                const ActuatorLimits& limits);

/// Raw ray LP for velocities: maximize h >= 0 with J qd = h w and
/// l_dot_min <= G qd <= l_dot_max.
std::optional<double> velocity_ray(const Snapshot& s, const Vec2& w, const ActuatorLimits& limits);

/// Torque-side right-hand side of the force LP: J^T F^c without gravity,
/// tau_g with gravity.
Eigen::VectorXd force_rhs(const Snapshot& s, const TargetSpec& target, GravityMode gravity);

/// h^f_i capped at h_cap; nullopt is the prune signal.
std::optional<double> force_h(const Snapshot& s, const TargetSpec& target, const ActuatorLimits& limits, int i,
                              GravityMode gravity, double h_cap);
std::optional<double> force_h(const RobotModel& model, const WireArrangement& design, const JointState& q,
                              const TargetSpec& target, const ActuatorLimits& limits, int i, GravityMode gravity,
                              double h_cap = 10.0);

/// h^v_i capped at h_cap (the unbounded case yields h_cap).
std::optional<double> velocity_h(const Snapshot& s, const TargetSpec& target, const ActuatorLimits& limits, int i,
                                 double h_cap);
std::optional<double> velocity_h(const RobotModel& model, const WireArrangement& design, const JointState& q,
                                 const TargetSpec& target, const ActuatorLimits& limits, int i, double h_cap = 10.0);

struct GravityCenter {
  Vec2 force = Vec2::Zero();
  double residual = 0.0; // |J^T F - tau_g|
  bool singular = false; // residual above 1e-6 N*m
};

/// Minimum-norm F with J^T F = tau_g (least squares when J is singular).
GravityCenter gravity_center(const RobotModel& model, const JointState& q);
GravityCenter gravity_center(const Eigen::MatrixXd& J, const Eigen::VectorXd& tau_g);

struct ConfigurationScore {
  std::vector<double> h_force;
  std::vector<double> h_velocity;
  double e_force = 0.0;
  double e_velocity = 0.0;
};

struct EvaluationResult {
  std::vector<ConfigurationScore> configurations;
  double e_force = 0.0;
  double e_velocity = 0.0;
  bool feasible = false;
};

/// How the gravity-mode force LP gets its right-hand side.
enum class GravityRhs {
  Torque,           // tau_g directly
  CenterProjection, // J^T * gravity_center(...)
};

EvaluationResult evaluate(const WireArrangement& design, const Scenario& scenario,
                          GravityRhs gravity_rhs = GravityRhs::Torque);

enum class SpaceKind { Force, Velocity };

struct TracedPolygon {
  ConvexPolygon polygon;
  Vec2 center = Vec2::Zero();
  bool clipped = false; // some ray hit h_limit
};

/// Ray-casts the force or velocity LP in n_rays unit directions around the
/// center (F^c or the gravity center for forces, the origin for velocities)
/// and returns the hull of the boundary points. nullopt when the force LP is
/// infeasible.
std::optional<TracedPolygon> trace_polygon(const Snapshot& s, SpaceKind which, const Vec2& center,
                                           const Eigen::VectorXd& rhs, const ActuatorLimits& limits, int n_rays,
                                           double h_limit = std::numeric_limits<double>::infinity());
std::optional<TracedPolygon> trace_polygon(const RobotModel& model, const WireArrangement& design,
                                           const JointState& q, SpaceKind which, const TargetSpec& target,
                                           const ActuatorLimits& limits, GravityMode gravity, int n_rays,
                                           double h_limit = std::numeric_limits<double>::infinity());

} // namespace tlo
