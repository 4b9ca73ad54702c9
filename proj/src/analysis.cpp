#include "pursuitlab/analysis.h"

#include <cmath>
#include <limits>
#include <vector>

#include "pursuitlab/errors.h"
#include "pursuitlab/trajectory.h"

namespace pursuitlab {

namespace {

constexpr double kStep = 1e-3;

// Man's position at time 1 against the straight lion run from the origin to
// z. Both players start at the origin; the man reacts in kStep steps seeing
// the lion up to each decision time, and no capture cutoff applies.
Point response_at_one(ReactiveStrategy& man, const Space& disc, const Point& z) {
  TimedPath lion(disc, {{0.0, pt(0.0, 0.0)}, {1.0, z}});
  PathView lion_view(lion);

  std::vector<TimedPoint> own;
  own.reserve(1001);
  own.push_back({0.0, pt(0.0, 0.0)});
  const long steps = 1000;
  for (long k = 1; k <= steps; ++k) {
    double t_prev = static_cast<double>(k - 1) * kStep;
    double tk = k == steps ? 1.0 : static_cast<double>(k) * kStep;
    History h{disc, PathView(disc, own.data(), own.size(), t_prev), lion_view.prefix(t_prev),
              t_prev};
    Point target = man.next_position(h, tk - t_prev);
    own.push_back({tk, target});
  }
  return own.back().p;
}

}  // namespace

FixedPointReport fixed_point_search(ReactiveStrategy& man, double resolution, int refinements) {
  if (!(resolution > 0.0)) {
    throw UsageError("fixed point search needs a positive resolution");
  }
  if (refinements < 0) {
    throw UsageError("fixed point search needs a nonnegative refinement count");
  }
  Space disc = Space::closed_disc(1.0);

  FixedPointReport report;
  report.resolution = resolution;
  report.refinements = refinements;

  double best_residual = std::numeric_limits<double>::infinity();
  Point best = pt(0.0, 0.0);
  auto probe = [&](double x, double y) {
    Point z = pt(x, y);
    if (!disc.contains(z)) return;
    double residual = disc.metric(response_at_one(man, disc, z), z);
    if (residual < best_residual) {
      best_residual = residual;
      best = z;
    }
  };

  long m = static_cast<long>(std::ceil(2.0 / resolution - 1e-9));
  for (long i = 0; i <= m; ++i) {
    double x = i == m ? 1.0 : -1.0 + static_cast<double>(i) * resolution;
    for (long j = 0; j <= m; ++j) {
      probe(x, j == m ? 1.0 : -1.0 + static_cast<double>(j) * resolution);
    }
  }
  report.residual_by_step.push_back(best_residual);

  double pitch = resolution;
  for (int round = 0; round < refinements; ++round) {
    double cx = best.x;
    double cy = best.y;
    pitch /= 10.0;
    for (long i = -10; i <= 10; ++i) {
      for (long j = -10; j <= 10; ++j) {
        probe(cx + static_cast<double>(i) * pitch, cy + static_cast<double>(j) * pitch);
      }
    }
    report.residual_by_step.push_back(best_residual);
  }

  report.best = best;
  report.residual = best_residual;
  return report;
}

}  // namespace pursuitlab
