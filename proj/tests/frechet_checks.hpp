#pragma once

#include <algorithm>
#include <limits>

#include "entk/geometry.hpp"

namespace checks {

// Any matching pairs each point of one path with some point of the other, so
// the leash is at least the directed distance to the other path.
inline double hausdorff_lower_bound(const entk::Polyline& a, const entk::Polyline& b) {
  using namespace entk;
  auto directed = [](const Polyline& p, const Polyline& q) {
    double worst = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const Point2 x = p.at(k / 200.0);
      double best = std::numeric_limits<double>::infinity();
      if (q.size() == 1) best = distance(x, q.front());
      for (std::size_t i = 0; i + 1 < q.size(); ++i) best = std::min(best, distance_to_segment(x, q.segment(i)));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max({directed(a, b), directed(b, a), distance(a.front(), b.front()), distance(a.back(), b.back())});
}

}  // namespace checks
