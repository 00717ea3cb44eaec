#pragma once

// Planar serial-chain kinematics for the tendon-driven arm.
//
// LINK_0 is fixed to the world along +x from the origin. Joint k (1-based)
// sits at the tip of LINK_{k-1} and rotates LINK_k counterclockwise by
// theta_k relative to LINK_{k-1}. The end effector is the tip of LINK_D.

#include <Eigen/Dense>

#include <vector>

namespace tlo {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Counterclockwise quarter turn: (x, y) -> (-y, x).
inline Vec2 rot90(const Vec2& v) { return {-v.y(), v.x()}; }

inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Straight segment in a link's local frame along which relay points may sit.
struct AttachSegment {
  Vec2 start = Vec2::Zero();
  Vec2 end = Vec2::Zero();

  Vec2 at(double fraction) const { return start + fraction * (end - start); }
  bool operator==(const AttachSegment&) const = default;
};

/// Moment-arm interval [start, end] in meters for one joint (constant mode).
struct MomentArmRange {
  double start = -0.1;
  double end = 0.1;

  double at(double fraction) const { return start + fraction * (end - start); }
  bool operator==(const MomentArmRange&) const = default;
};

struct RobotModel {
  std::vector<double> link_lengths;           // D+1 entries, LINK_0..LINK_D
  std::vector<double> link_masses;            // D+1 entries, LINK_0 unused
  std::vector<AttachSegment> attach_segments; // D+1 entries, link-local
  Vec2 gravity{0.0, -9.81};
  std::vector<MomentArmRange> moment_arm_ranges; // D entries

  int joints() const { return static_cast<int>(link_lengths.size()) - 1; }
  int links() const { return static_cast<int>(link_lengths.size()); }

  /// Throws std::invalid_argument when any structural invariant fails.
  void validate() const;

  /// Two-joint arm used throughout the experiments: links 0.4/0.6/0.6 m,
  /// 4 kg movable links, full-centerline attach segments, arms in [-0.1, 0.1].
  static RobotModel planar_two_joint();

  /// Fills attach segments with each link's full centerline.
  void use_centerline_segments();

  bool operator==(const RobotModel&) const = default;
};

struct JointState {
  Eigen::VectorXd angles;

  JointState() = default;
  explicit JointState(Eigen::VectorXd a) : angles(std::move(a)) {}
  JointState(std::initializer_list<double> a);

  int size() const { return static_cast<int>(angles.size()); }
};

/// Rigid planar transform of one link.
struct LinkFrame {
  Vec2 origin = Vec2::Zero();
  double angle = 0.0;

  Vec2 to_world(const Vec2& local) const;
};

struct Pose {
  std::vector<Vec2> joint_positions; // joint 1..D
  Vec2 ee_position = Vec2::Zero();
  std::vector<LinkFrame> link_frames; // LINK_0..LINK_D
};

Pose forward_kinematics(const RobotModel& model, const JointState& q);

/// 2 x D end-effector Jacobian; column k is rot90(ee - joint_k).
Eigen::MatrixXd joint_jacobian(const RobotModel& model, const JointState& q);
Eigen::MatrixXd joint_jacobian(const Pose& pose);

/// Torque that holds the pose statically against gravity, with each link's
/// mass at its midpoint. Equals the gradient of the potential energy.
Eigen::VectorXd gravity_torque(const RobotModel& model, const JointState& q);

/// Potential energy sum_d m_d * (-g . com_d); exposed for gradient checks.
double potential_energy(const RobotModel& model, const JointState& q);

} // namespace tlo
