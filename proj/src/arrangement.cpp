#include "tlo/arrangement.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tlo {

namespace {

void check_variable(const RobotModel& model, const VariableArrangement& v) {
  for (std::size_t m = 0; m < v.wires.size(); ++m) {
    const auto& wire = v.wires[m];
    if (wire.size() < 2) throw std::invalid_argument("wire " + std::to_string(m) + " needs at least two relay points");
    if (wire.front().link != 0) throw std::invalid_argument("wire " + std::to_string(m) + " must start on LINK_0");
    for (const auto& p : wire) {
      if (p.link < 0 || p.link > model.joints())
        throw std::invalid_argument("relay point link id " + std::to_string(p.link) + " out of range");
      if (!(p.fraction >= 0.0 && p.fraction <= 1.0))
        throw std::invalid_argument("relay point fraction must lie in [0, 1]");
    }
  }
}

} // namespace

int WireArrangement::wires() const {
  if (kind() == ArrangementKind::Variable) return static_cast<int>(variable().wires.size());
  return static_cast<int>(constant().fractions.rows());
}

void WireArrangement::validate(const RobotModel& model) const {
  if (wires() < 1) throw std::invalid_argument("design has no wires");
  if (kind() == ArrangementKind::Variable) {
    check_variable(model, variable());
    return;
  }
  const auto& f = constant().fractions;
  if (f.cols() != model.joints())
    throw std::invalid_argument("constant design has " + std::to_string(f.cols()) + " joint columns, model has " +
                                std::to_string(model.joints()));
  if (!((f.array() >= 0.0).all() && (f.array() <= 1.0).all()))
    throw std::invalid_argument("moment-arm fractions must lie in [0, 1]");
}

std::vector<std::vector<Vec2>> relay_world_positions(const RobotModel& model, const VariableArrangement& design,
                                                     const Pose& pose) {
  std::vector<std::vector<Vec2>> out;
  out.reserve(design.wires.size());
  for (const auto& wire : design.wires) {
    auto& pts = out.emplace_back();
    pts.reserve(wire.size());
    for (const auto& p : wire) {
      if (p.link < 0 || p.link > model.joints())
        throw std::invalid_argument("relay point link id " + std::to_string(p.link) + " out of range");
      pts.push_back(pose.link_frames[p.link].to_world(model.attach_segments[p.link].at(p.fraction)));
    }
  }
  return out;
}

std::vector<std::vector<Vec2>> relay_world_positions(const RobotModel& model, const WireArrangement& design,
                                                     const JointState& q) {
  if (design.kind() != ArrangementKind::Variable)
    throw std::invalid_argument("relay positions exist only for variable designs");
  return relay_world_positions(model, design.variable(), forward_kinematics(model, q));
}

Eigen::MatrixXd moment_arms(const RobotModel& model, const ConstantArrangement& design) {
  Eigen::MatrixXd arms(design.fractions.rows(), design.fractions.cols());
  for (Eigen::Index m = 0; m < arms.rows(); ++m)
    for (Eigen::Index d = 0; d < arms.cols(); ++d) arms(m, d) = model.moment_arm_ranges[d].at(design.fractions(m, d));
  return arms;
}

MuscleState muscle_state(const RobotModel& model, const WireArrangement& design, const JointState& q) {
  const Pose pose = forward_kinematics(model, q);
  const int D = model.joints();
  MuscleState st;

  if (design.kind() == ArrangementKind::Constant) {
    // tau = -G^T f must give tau_d = sum_m arm(m,d) f_m.
    st.jacobian = -moment_arms(model, design.constant());
    if (st.jacobian.cols() != D) throw std::invalid_argument("constant design does not match joint count");
    st.lengths = st.jacobian * q.angles;
    return st;
  }

  const auto& var = design.variable();
  const auto points = relay_world_positions(model, var, pose);
  const auto M = static_cast<Eigen::Index>(var.wires.size());
  st.lengths = Eigen::VectorXd::Zero(M);
  st.jacobian = Eigen::MatrixXd::Zero(M, D);

  // Velocity of a relay point on link `link` per unit theta_k (k is 1-based).
  auto point_rate = [&](const Vec2& p, int link, int k) -> Vec2 {
    return link >= k ? rot90(p - pose.joint_positions[k - 1]) : Vec2::Zero();
  };

  for (Eigen::Index m = 0; m < M; ++m) {
    const auto& wire = var.wires[m];
    const auto& pts = points[m];
    for (std::size_t n = 0; n + 1 < pts.size(); ++n) {
      const Vec2 seg = pts[n + 1] - pts[n];
      const double len = seg.norm();
      if (len < kDegenerateSegment) continue;
      st.lengths[m] += len;
      const Vec2 dir = seg / len;
      for (int k = 1; k <= D; ++k) {
        const Vec2 rel = point_rate(pts[n + 1], wire[n + 1].link, k) - point_rate(pts[n], wire[n].link, k);
        st.jacobian(m, k - 1) += dir.dot(rel);
      }
    }
  }
  return st;
}

Eigen::VectorXd wire_lengths(const RobotModel& model, const WireArrangement& design, const JointState& q) {
  if (design.kind() != ArrangementKind::Variable)
    throw std::invalid_argument("absolute wire lengths exist only for variable designs");
  return muscle_state(model, design, q).lengths;
}

Eigen::MatrixXd muscle_jacobian(const RobotModel& model, const WireArrangement& design, const JointState& q) {
  return muscle_state(model, design, q).jacobian;
}

// --- genome ------------------------------------------------------------------

int GenomeLayout::n_reals() const {
  return kind == ArrangementKind::Variable ? wires * relay_points : wires * joints;
}

int GenomeLayout::n_categoricals() const {
  return kind == ArrangementKind::Variable ? wires * (relay_points - 1) : 0;
}

Genome genome_encode(const WireArrangement& design) {
  Genome g;
  if (design.kind() == ArrangementKind::Constant) {
    const auto& f = design.constant().fractions;
    for (Eigen::Index m = 0; m < f.rows(); ++m)
      for (Eigen::Index d = 0; d < f.cols(); ++d) g.reals.push_back(f(m, d));
    return g;
  }
  for (const auto& wire : design.variable().wires) {
    for (std::size_t n = 0; n < wire.size(); ++n) {
      g.reals.push_back(wire[n].fraction);
      if (n > 0) g.categoricals.push_back(wire[n].link);
    }
  }
  return g;
}

WireArrangement genome_decode(const Genome& genome, const GenomeLayout& layout) {
  if (static_cast<int>(genome.reals.size()) != layout.n_reals() ||
      static_cast<int>(genome.categoricals.size()) != layout.n_categoricals())
    throw std::invalid_argument("genome length does not match layout");

  if (layout.kind == ArrangementKind::Constant) {
    ConstantArrangement c;
    c.fractions.resize(layout.wires, layout.joints);
    for (int m = 0; m < layout.wires; ++m)
      for (int d = 0; d < layout.joints; ++d) c.fractions(m, d) = genome.reals[m * layout.joints + d];
    return c;
  }

  VariableArrangement v;
  const int N = layout.relay_points;
  v.wires.resize(layout.wires);
  for (int m = 0; m < layout.wires; ++m) {
    auto& wire = v.wires[m];
    wire.reserve(N);
    for (int n = 0; n < N; ++n) {
      const int link = n == 0 ? 0 : genome.categoricals[m * (N - 1) + n - 1];
      if (link < 0 || link >= layout.cardinality()) throw std::invalid_argument("categorical gene out of range");
      wire.push_back({link, genome.reals[m * N + n]});
    }
  }
  return v;
}

std::vector<double> flat_genome(const Genome& genome, const GenomeLayout& layout) {
  if (layout.kind == ArrangementKind::Constant) return genome.reals;
  std::vector<double> flat;
  flat.reserve(layout.n_genes());
  const int N = layout.relay_points;
  for (int m = 0; m < layout.wires; ++m) {
    flat.push_back(genome.reals[m * N]);
    for (int n = 1; n < N; ++n) {
      flat.push_back(genome.categoricals[m * (N - 1) + n - 1]);
      flat.push_back(genome.reals[m * N + n]);
    }
  }
  return flat;
}

} // namespace tlo
