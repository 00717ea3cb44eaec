#include "tlo/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tlo {

namespace {

constexpr double kAttachTolerance = 1e-9;

void check_dims(const RobotModel& model, const JointState& q) {
  if (q.size() != model.joints()) {
    throw std::invalid_argument("joint state has " + std::to_string(q.size()) +
                                " angles, model has " + std::to_string(model.joints()) + " joints");
  }
}

Vec2 link_com_local(const RobotModel& model, int link) {
  return {0.5 * model.link_lengths[link], 0.0};
}

} // namespace

JointState::JointState(std::initializer_list<double> a) : angles(static_cast<Eigen::Index>(a.size())) {
  Eigen::Index i = 0;
  for (double v : a) angles[i++] = v;
}

Vec2 LinkFrame::to_world(const Vec2& local) const {
  const double c = std::cos(angle), s = std::sin(angle);
  return origin + Vec2(c * local.x() - s * local.y(), s * local.x() + c * local.y());
}

void RobotModel::validate() const {
  if (link_lengths.size() < 2) throw std::invalid_argument("model needs at least one joint (two links)");
  const auto n = link_lengths.size();
  if (link_masses.size() != n) throw std::invalid_argument("link_masses must have one entry per link");
  if (attach_segments.size() != n) throw std::invalid_argument("attach_segments must have one entry per link");
  if (moment_arm_ranges.size() != n - 1)
    throw std::invalid_argument("moment_arm_ranges must have one entry per joint");
  for (std::size_t d = 0; d < n; ++d) {
    if (!(link_lengths[d] > 0.0) || !std::isfinite(link_lengths[d]))
      throw std::invalid_argument("link " + std::to_string(d) + " length must be positive");
    if (!(link_masses[d] >= 0.0) || !std::isfinite(link_masses[d]))
      throw std::invalid_argument("link " + std::to_string(d) + " mass must be non-negative");
    const double bound = link_lengths[d] + kAttachTolerance;
    for (const Vec2& p : {attach_segments[d].start, attach_segments[d].end}) {
      if (!p.allFinite() || std::abs(p.x()) > bound || std::abs(p.y()) > bound)
        throw std::invalid_argument("attach segment of link " + std::to_string(d) +
                                    " leaves the link's bounding region");
    }
  }
  for (const auto& r : moment_arm_ranges) {
    if (!std::isfinite(r.start) || !std::isfinite(r.end)) throw std::invalid_argument("moment arm range must be finite");
  }
  if (!gravity.allFinite()) throw std::invalid_argument("gravity must be finite");
}

void RobotModel::use_centerline_segments() {
  attach_segments.clear();
  for (double len : link_lengths) attach_segments.push_back({Vec2::Zero(), Vec2(len, 0.0)});
}

RobotModel RobotModel::planar_two_joint() {
  RobotModel m;
  m.link_lengths = {0.4, 0.6, 0.6};
  m.link_masses = {0.0, 4.0, 4.0};
  m.use_centerline_segments();
  m.moment_arm_ranges = {{-0.1, 0.1}, {-0.1, 0.1}};
  return m;
}

Pose forward_kinematics(const RobotModel& model, const JointState& q) {
  check_dims(model, q);
  const int D = model.joints();
  Pose pose;
  pose.link_frames.reserve(D + 1);
  pose.joint_positions.reserve(D);

  LinkFrame frame; // LINK_0 at the origin along +x
  pose.link_frames.push_back(frame);
  for (int k = 1; k <= D; ++k) {
    const Vec2 joint = frame.to_world(Vec2(model.link_lengths[k - 1], 0.0));
    pose.joint_positions.push_back(joint);
    frame = LinkFrame{joint, frame.angle + q.angles[k - 1]};
    pose.link_frames.push_back(frame);
  }
  pose.ee_position = frame.to_world(Vec2(model.link_lengths[D], 0.0));
  return pose;
}

Eigen::MatrixXd joint_jacobian(const Pose& pose) {
  const auto D = static_cast<Eigen::Index>(pose.joint_positions.size());
  Eigen::MatrixXd J(2, D);
  for (Eigen::Index k = 0; k < D; ++k) J.col(k) = rot90(pose.ee_position - pose.joint_positions[k]);
  return J;
}

Eigen::MatrixXd joint_jacobian(const RobotModel& model, const JointState& q) {
  return joint_jacobian(forward_kinematics(model, q));
}

double potential_energy(const RobotModel& model, const JointState& q) {
  const Pose pose = forward_kinematics(model, q);
  double u = 0.0;
  for (int d = 0; d < model.links(); ++d) {
    const Vec2 com = pose.link_frames[d].to_world(link_com_local(model, d));
    u += model.link_masses[d] * (-model.gravity.dot(com));
  }
  return u;
}

Eigen::VectorXd gravity_torque(const RobotModel& model, const JointState& q) {
  const Pose pose = forward_kinematics(model, q);
  const int D = model.joints();
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(D);
  // d(com_d)/d(theta_k) = rot90(com_d - joint_k) for every link d >= k.
  for (int d = 1; d <= D; ++d) {
    const Vec2 com = pose.link_frames[d].to_world(link_com_local(model, d));
    const Vec2 weight = -model.link_masses[d] * model.gravity;
    for (int k = 1; k <= d; ++k) tau[k - 1] += weight.dot(rot90(com - pose.joint_positions[k - 1]));
  }
  return tau;
}

} // namespace tlo
