#pragma once

#include <vector>

#include "pursuitlab/strategy.h"

namespace pursuitlab {

// Outcome of fixed_point_search: the point whose induced response comes
// closest to itself. residual_by_step holds the best residual after the
// initial grid pass and after each refinement round; it never increases.
struct FixedPointReport {
  Point best;
  double residual = 0.0;
  double resolution = 0.0;
  int refinements = 0;
  std::vector<double> residual_by_step;
};

// Searches the closed unit disc for a point z that the man's response maps
// to itself: g(z) is the man's position at time 1 when the lion walks the
// straight constant-speed path from the origin to z arriving at time 1
// (simulated at dt = 1e-3, no capture cutoff). A coarse grid of the given
// resolution is refined by 10x zooms around the best cell. For a continuous
// response a near-zero residual exists; for discontinuous strategies the
// report is still produced and the residual may stay away from zero.
FixedPointReport fixed_point_search(ReactiveStrategy& man, double resolution, int refinements);

}  // namespace pursuitlab
