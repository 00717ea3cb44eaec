#include "support.hpp"

#include <doctest.h>

using namespace tlo;
using std::numbers::pi;

namespace {

const RobotModel arm = RobotModel::planar_two_joint();

bool near(const Vec2& a, const Vec2& b, double tol = 1e-12) { return (a - b).norm() <= tol; }

} // namespace

TEST_CASE("forward kinematics: straight arm") {
  const Pose p = forward_kinematics(arm, {0.0, 0.0});
  REQUIRE(p.joint_positions.size() == 2);
  CHECK(near(p.joint_positions[0], {0.4, 0.0}));
  CHECK(near(p.joint_positions[1], {1.0, 0.0}));
  CHECK(near(p.ee_position, {1.6, 0.0}));
}

TEST_CASE("forward kinematics: right angles") {
  CHECK(near(forward_kinematics(arm, {0.0, pi / 2}).ee_position, {1.0, 0.6}));
  CHECK(near(forward_kinematics(arm, {pi / 2, pi / 2}).ee_position, {-0.2, 0.6}));
}

TEST_CASE("forward kinematics matches accumulated-angle oracle and is 2pi periodic") {
  test::Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const JointState q = test::random_state(rng, 2);
    const Pose p = forward_kinematics(arm, q);
    CHECK(near(p.ee_position, test::oracle_ee(arm, q.angles), 1e-12));
    for (int k = 0; k < 2; ++k) {
      JointState shifted = q;
      shifted.angles(k) += 2 * pi;
      CHECK(near(forward_kinematics(arm, shifted).ee_position, p.ee_position, 1e-12));
    }
    // consecutive joints are one link length apart
    CHECK((p.joint_positions[1] - p.joint_positions[0]).norm() == doctest::Approx(0.6).epsilon(1e-12));
  }
}

TEST_CASE("joint jacobian examples") {
  const Eigen::MatrixXd J0 = joint_jacobian(arm, {0.0, 0.0});
  CHECK(J0(0, 0) == doctest::Approx(0.0));
  CHECK(J0(0, 1) == doctest::Approx(0.0));
  CHECK(J0(1, 0) == doctest::Approx(1.2));
  CHECK(J0(1, 1) == doctest::Approx(0.6));

  const Eigen::MatrixXd J = joint_jacobian(arm, {0.0, pi / 2});
  CHECK(J(0, 0) == doctest::Approx(-0.6));
  CHECK(J(1, 0) == doctest::Approx(0.6));
  CHECK(J(0, 1) == doctest::Approx(-0.6));
  CHECK(J(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("joint jacobian matches central differences") {
  test::Rng rng(12);
  const double step = 1e-6;
  for (int t = 0; t < 100; ++t) {
    const JointState q = test::random_state(rng, 2);
    const Eigen::MatrixXd J = joint_jacobian(arm, q);
    for (int k = 0; k < 2; ++k) {
      Eigen::VectorXd hi = q.angles, lo = q.angles;
      hi(k) += step;
      lo(k) -= step;
      const Vec2 fd = (test::oracle_ee(arm, hi) - test::oracle_ee(arm, lo)) / (2 * step);
      CHECK(test::close_rel(J(0, k), fd.x(), 1e-5));
      CHECK(test::close_rel(J(1, k), fd.y(), 1e-5));
    }
  }
}

TEST_CASE("gravity torque examples") {
  const Eigen::VectorXd tau = gravity_torque(arm, {0.0, 0.0});
  CHECK(tau(0) == doctest::Approx(47.088).epsilon(1e-12));
  CHECK(tau(1) == doctest::Approx(11.772).epsilon(1e-12));

  RobotModel weightless = arm;
  weightless.gravity = Vec2::Zero();
  CHECK(gravity_torque(weightless, {0.3, -1.1}).norm() == 0.0);

  // Both movable links hanging straight down.
  const Eigen::VectorXd hang = gravity_torque(arm, {-pi / 2, 0.0});
  CHECK(std::abs(hang(0)) < 1e-12);
  CHECK(std::abs(hang(1)) < 1e-12);
}

TEST_CASE("gravity torque is the gradient of potential energy") {
  test::Rng rng(13);
  const double step = 1e-6;
  for (int t = 0; t < 100; ++t) {
    const JointState q = test::random_state(rng, 2);
    const Eigen::VectorXd tau = gravity_torque(arm, q);
    CHECK(potential_energy(arm, q) == doctest::Approx(test::oracle_potential(arm, q.angles)).epsilon(1e-12));
    for (int k = 0; k < 2; ++k) {
      Eigen::VectorXd hi = q.angles, lo = q.angles;
      hi(k) += step;
      lo(k) -= step;
      const double fd = (test::oracle_potential(arm, hi) - test::oracle_potential(arm, lo)) / (2 * step);
      CHECK(std::abs(tau(k) - fd) < 1e-4);
    }
  }
}

TEST_CASE("model validation") {
  RobotModel m = arm;
  CHECK_NOTHROW(m.validate());
  m.link_lengths[1] = 0.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = arm;
  m.link_masses[2] = -1.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = arm;
  m.attach_segments[1].end = Vec2(2.0, 0.0);
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  CHECK_THROWS_AS(forward_kinematics(arm, {0.1}), std::invalid_argument);
}
