#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pursuitlab/geometry.h"

namespace pursuitlab {

struct TimedPoint {
  double t = 0.0;
  Point p;
};

// An immutable sampled path of speed at most 1. Construction validates that
// sample times increase strictly from 0, every sample lies in the space, and
// consecutive samples respect the unit speed bound (with a small slack for
// floating-point drift). Between samples the path follows a constant-speed
// geodesic, so a validated TimedPath is 1-Lipschitz everywhere.
class TimedPath {
 public:
  TimedPath(Space space, std::vector<TimedPoint> samples);

  const Space& space() const { return space_; }
  const std::vector<TimedPoint>& samples() const { return samples_; }
  double horizon() const { return samples_.back().t; }

  // Position at time t via geodesic interpolation; a sample time returns the
  // stored sample exactly. Throws RangeError outside [0, horizon].
  Point eval(double t) const;

 private:
  Space space_;
  std::vector<TimedPoint> samples_;
};

// Non-owning window onto a path's samples, possibly truncated to an earlier
// horizon. Used to hand strategies exactly the history they are allowed to
// see. The view stays valid only while the underlying path does.
class PathView {
 public:
  PathView(const Space& space, const TimedPoint* data, std::size_t count, double horizon);
  explicit PathView(const TimedPath& path);

  const Space& space() const { return space_; }
  double horizon() const { return horizon_; }

  // Samples with t <= horizon.
  std::size_t sample_count() const { return count_; }
  const TimedPoint& sample(std::size_t i) const { return data_[i]; }

  // View truncated to an earlier horizon (may land between samples).
  PathView prefix(double new_horizon) const;

  Point eval(double t) const;

 private:
  Space space_;
  const TimedPoint* data_ = nullptr;
  std::size_t count_ = 0;       // samples with t <= horizon_
  std::size_t full_count_ = 0;  // samples available for interpolation
  double horizon_ = 0.0;
};

struct SeparationReport {
  double min_distance = 0.0;
  double arg_time = 0.0;  // earliest grid time attaining the minimum
  bool captured = false;
  std::optional<double> capture_time;  // earliest grid time within tolerance
};

// Grid step used when measuring separation between two paths.
inline constexpr double kSeparationGridStep = 1e-3;

// Minimum distance between two same-space, same-horizon paths over their
// merged sample grid, refined so no gap exceeds kSeparationGridStep.
SeparationReport min_separation(const TimedPath& a, const TimedPath& b, double capture_tol);

// Path re-sampled on a uniform grid of the given step (plus the original
// horizon); the result passes validation again.
TimedPath resample(const TimedPath& path, double step);

}  // namespace pursuitlab
