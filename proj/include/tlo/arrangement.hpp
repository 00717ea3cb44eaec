#pragma once

// Wire arrangement designs and their muscle Jacobian G(theta), with
// l_dot = G * theta_dot and joint torque tau = -G^T * f.

#include "tlo/model.hpp"

#include <variant>
#include <vector>

namespace tlo {

struct RelayPoint {
  int link = 0;          // owning link, 0..D
  double fraction = 0.0; // position along the link's attach segment, [0, 1]

  bool operator==(const RelayPoint&) const = default;
};

/// Wires routed through relay points fixed on links. Every wire starts on
/// LINK_0, where the actuators live.
struct VariableArrangement {
  std::vector<std::vector<RelayPoint>> wires;

  bool operator==(const VariableArrangement&) const = default;
};

/// Pulley routing with a constant moment arm per (wire, joint). Entries are
/// fractions of the model's moment-arm range.
struct ConstantArrangement {
  Eigen::MatrixXd fractions; // M x D

  bool operator==(const ConstantArrangement& o) const {
    return fractions.rows() == o.fractions.rows() && fractions.cols() == o.fractions.cols() &&
           fractions == o.fractions;
  }
};

enum class ArrangementKind { Variable, Constant };

struct WireArrangement {
  std::variant<VariableArrangement, ConstantArrangement> design;

  WireArrangement() = default;
  WireArrangement(VariableArrangement v) : design(std::move(v)) {}
  WireArrangement(ConstantArrangement c) : design(std::move(c)) {}

  ArrangementKind kind() const {
    return std::holds_alternative<VariableArrangement>(design) ? ArrangementKind::Variable : ArrangementKind::Constant;
  }
  int wires() const;
  const VariableArrangement& variable() const { return std::get<VariableArrangement>(design); }
  const ConstantArrangement& constant() const { return std::get<ConstantArrangement>(design); }

  /// Throws std::invalid_argument when the design does not fit the model.
  void validate(const RobotModel& model) const;

  bool operator==(const WireArrangement&) const = default;
};

struct MuscleState {
  Eigen::VectorXd lengths;  // meters; relative lengths G*theta in constant mode
  Eigen::MatrixXd jacobian; // M x D, meters per radian
};

/// Consecutive relay points closer than this contribute nothing to length
/// or Jacobian.
inline constexpr double kDegenerateSegment = 1e-9;

std::vector<std::vector<Vec2>> relay_world_positions(const RobotModel& model, const WireArrangement& design,
                                                     const JointState& q);
std::vector<std::vector<Vec2>> relay_world_positions(const RobotModel& model, const VariableArrangement& design,
                                                     const Pose& pose);

/// Sum of segment lengths along each wire. Variable designs only.
Eigen::VectorXd wire_lengths(const RobotModel& model, const WireArrangement& design, const JointState& q);

Eigen::MatrixXd muscle_jacobian(const RobotModel& model, const WireArrangement& design, const JointState& q);

MuscleState muscle_state(const RobotModel& model, const WireArrangement& design, const JointState& q);

/// Signed moment arm in meters of every (wire, joint) pair of a constant design.
Eigen::MatrixXd moment_arms(const RobotModel& model, const ConstantArrangement& design);

// --- genome encoding -------------------------------------------------------

/// Shape of the search space. Variable: per wire N reals (l_1..l_N) and N-1
/// categoricals (d_2..d_N) with D+1 choices. Constant: M*D reals.
struct GenomeLayout {
  ArrangementKind kind = ArrangementKind::Variable;
  int wires = 1;
  int relay_points = 2;
  int joints = 2;

  int n_reals() const;
  int n_categoricals() const;
  int cardinality() const { return joints + 1; }
  int n_genes() const { return n_reals() + n_categoricals(); }

  bool operator==(const GenomeLayout&) const = default;
};

struct Genome {
  std::vector<double> reals;     // each in [0, 1]
  std::vector<int> categoricals; // each in [0, cardinality)

  bool operator==(const Genome&) const = default;
};

Genome genome_encode(const WireArrangement& design);
WireArrangement genome_decode(const Genome& genome, const GenomeLayout& layout);

/// Interleaved per-wire layout [l_1, d_2, l_2, ..., d_N, l_N] (Variable) or
/// row-major arm fractions (Constant), categoricals stored as exact integers.
std::vector<double> flat_genome(const Genome& genome, const GenomeLayout& layout);

} // namespace tlo
