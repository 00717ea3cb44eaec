#include "tlo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

namespace tlo::oracle {

CrossCheck cross_check(const Scenario& scenario, int wires, int trials, std::uint64_t seed, double tol) {
  scenario.validate();
  if (scenario.model.joints() != 2) throw std::invalid_argument("cross-check needs a two-joint arm");
  if (wires < 1) throw std::invalid_argument("cross-check needs at least one wire");

  std::mt19937_64 engine(seed);
  const auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };

  CrossCheck out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    ConstantArrangement arms;
    arms.fractions.resize(wires, 2);
    for (Eigen::Index k = 0; k < arms.fractions.size(); ++k) arms.fractions(k) = uniform();
    const WireArrangement design = arms;

    // Reject near-singular poses; the oracle is only defined for invertible J.
    JointState q;
    Snapshot s;
    do {
      q = JointState{(2.0 * uniform() - 1.0) * std::numbers::pi, (2.0 * uniform() - 1.0) * std::numbers::pi};
      s = take_snapshot(scenario.model, design, q, scenario.gravity);
    } while (std::abs(s.J.determinant()) < 1e-3);

    const Eigen::VectorXd rhs = force_rhs(s, scenario.target, scenario.gravity);
    const Mat2 Jt = s.J.transpose();
    const Vec2 center = Jt.inverse() * Vec2(rhs(0), rhs(1));
    const ConvexPolygon fpoly = force_polytope_exact(s.G, s.J, scenario.limits);
    const Region vregion = velocity_polytope_exact(s.G, s.J, scenario.limits);

    const auto compare = [&](double lp, double geo) {
      const double diff = std::abs(lp - std::min(geo, scenario.h_cap));
      out.max_diff = std::max(out.max_diff, diff);
      ++out.comparisons;
      if (!(diff < tol)) ++out.failures;
    };

    // A pruned design has no per-direction force h; there the LP and the
    // oracle must agree that the center lies outside the zonotope.
    std::vector<std::optional<double>> hf;
    for (int i = 0; i < scenario.target.n_directions; ++i)
      hf.push_back(force_h(s, scenario.target, scenario.limits, i, scenario.gravity, scenario.h_cap));
    const bool pruned = std::ranges::any_of(hf, [](const auto& h) { return !h.has_value(); });
    if (pruned) {
      ++out.pruned;
      ++out.comparisons;
      const double eps = 1e-9 * std::max(1.0, fpoly.scale());
      if (inside_margin(fpoly, center) >= -eps) ++out.failures;
    } else {
      for (int i = 0; i < scenario.target.n_directions; ++i)
        compare(*hf[static_cast<std::size_t>(i)], ray_h(fpoly, center, scenario.target.force_direction(i)));
    }
    for (int i = 0; i < scenario.target.n_directions; ++i) {
      const auto h = velocity_h(s, scenario.target, scenario.limits, i, scenario.h_cap);
      compare(h.value_or(0.0), ray_h(vregion, Vec2::Zero(), scenario.target.velocity_direction(i)));
    }
  }
  return out;
}

} // namespace tlo::oracle
