#include "tlo/nsga2.hpp"

#include <algorithm>

namespace tlo {

double hypervolume_2d(std::span<const Objectives> points, const Objectives& ref) {
  std::vector<Objectives> inside;
  for (const auto& p : points)
    if (p.force < ref.force && p.velocity < ref.velocity) inside.push_back(p);
  std::sort(inside.begin(), inside.end(), [](const Objectives& a, const Objectives& b) {
    return a.force < b.force || (a.force == b.force && a.velocity < b.velocity);
  });
  double hv = 0.0;
  double ceiling = ref.velocity;
  for (const auto& p : inside) {
    if (p.velocity >= ceiling) continue;
    hv += (ref.force - p.force) * (ceiling - p.velocity);
    ceiling = p.velocity;
  }
  return hv;
}

} // namespace tlo
