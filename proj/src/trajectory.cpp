#include "pursuitlab/trajectory.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "pursuitlab/errors.h"

namespace pursuitlab {

namespace {

// Extra slack on the per-interval speed check: relative drift plus an
// absolute floor for very short intervals.
double speed_allowance(double dt) { return dt * (1.0 + 1e-9) + 1e-15; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Point eval_samples(const Space& space, const TimedPoint* data, std::size_t count, double t) {
  // Bracketing segment via binary search on time.
  const TimedPoint* end = data + count;
  const TimedPoint* hi =
      std::lower_bound(data, end, t, [](const TimedPoint& s, double v) { return s.t < v; });
  if (hi == end) --hi;
  if (hi->t == t) return hi->p;
  const TimedPoint* lo = hi - 1;
  if (lo->t == t) return lo->p;
  double span = hi->t - lo->t;
  double d = space.distance(lo->p, hi->p);
  return space.geodesic_step(lo->p, hi->p, d * (t - lo->t) / span);
}

}  // namespace

TimedPath::TimedPath(Space space, std::vector<TimedPoint> samples)
    : space_(std::move(space)), samples_(std::move(samples)) {
  if (samples_.empty()) throw UsageError("a path needs at least one sample");
  if (samples_.front().t != 0.0) {
    throw UsageError("path samples must start at time 0 (got " + fmt(samples_.front().t) + ")");
  }
  // Times and the speed bound first (metric skips containment), so a sample
  // that is both too fast and out of space reports the speed violation.
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    double dt = samples_[i].t - samples_[i - 1].t;
    if (dt <= 0.0) {
      throw UsageError("path sample times must be strictly increasing (sample " +
                       std::to_string(i) + " at time " + fmt(samples_[i].t) +
                       " does not advance past " + fmt(samples_[i - 1].t) + ")");
    }
    double d = space_.metric(samples_[i - 1].p, samples_[i].p);
    if (d > speed_allowance(dt)) {
      throw SpeedError("speed bound exceeded on [" + fmt(samples_[i - 1].t) + ", " +
                       fmt(samples_[i].t) + "]: moved " + fmt(d) + " in " + fmt(dt));
    }
  }
  for (const TimedPoint& s : samples_) {
    std::string what = "path sample at time " + fmt(s.t);
    space_.require_member(s.p, what.c_str());
  }
}

Point TimedPath::eval(double t) const {
  if (t < 0.0 || t > horizon()) {
    throw RangeError("time " + fmt(t) + " outside path domain [0, " + fmt(horizon()) + "]");
  }
  return eval_samples(space_, samples_.data(), samples_.size(), t);
}

PathView::PathView(const Space& space, const TimedPoint* data, std::size_t count, double horizon)
    : space_(space), data_(data), count_(count), full_count_(count), horizon_(horizon) {}

PathView::PathView(const TimedPath& path)
    : space_(path.space()),
      data_(path.samples().data()),
      count_(path.samples().size()),
      full_count_(path.samples().size()),
      horizon_(path.horizon()) {}

PathView PathView::prefix(double new_horizon) const {
  if (new_horizon < 0.0 || new_horizon > horizon_) {
    throw RangeError("prefix horizon " + fmt(new_horizon) + " outside [0, " + fmt(horizon_) + "]");
  }
  PathView out = *this;
  out.horizon_ = new_horizon;
  const TimedPoint* end = data_ + full_count_;
  const TimedPoint* past = std::upper_bound(
      data_, end, new_horizon, [](double v, const TimedPoint& s) { return v < s.t; });
  out.count_ = static_cast<std::size_t>(past - data_);
  return out;
}

Point PathView::eval(double t) const {
  if (t < 0.0 || t > horizon_) {
    throw RangeError("time " + fmt(t) + " outside view domain [0, " + fmt(horizon_) + "]");
  }
  // Interpolation may need the first sample past the truncated horizon.
  return eval_samples(space_, data_, full_count_, t);
}

SeparationReport min_separation(const TimedPath& a, const TimedPath& b, double capture_tol) {
  if (a.space().describe() != b.space().describe()) {
    throw UsageError("separation needs both paths in the same space (" + a.space().describe() +
                     " vs " + b.space().describe() + ")");
  }
  if (std::abs(a.horizon() - b.horizon()) > 1e-12) {
    throw UsageError("separation needs equal horizons (" + fmt(a.horizon()) + " vs " +
                     fmt(b.horizon()) + ")");
  }

  // Merged sample grid of both paths, clamped to the common horizon.
  double common_h = std::min(a.horizon(), b.horizon());
  std::vector<double> grid;
  grid.reserve(a.samples().size() + b.samples().size() + 1);
  for (const TimedPoint& s : a.samples()) {
    if (s.t <= common_h) grid.push_back(s.t);
  }
  for (const TimedPoint& s : b.samples()) {
    if (s.t <= common_h) grid.push_back(s.t);
  }
  grid.push_back(common_h);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  SeparationReport report;
  report.min_distance = std::numeric_limits<double>::infinity();

  auto probe = [&](double t) {
    double d = a.space().distance(a.eval(t), b.eval(t));
    if (d < report.min_distance) {
      report.min_distance = d;
      report.arg_time = t;
    }
    if (d <= capture_tol && !report.capture_time) {
      report.captured = true;
      report.capture_time = t;
    }
  };

  for (std::size_t i = 0; i < grid.size(); ++i) {
    probe(grid[i]);
    if (i + 1 == grid.size()) break;
    double gap = grid[i + 1] - grid[i];
    if (gap > kSeparationGridStep) {
      int cuts = static_cast<int>(std::ceil(gap / kSeparationGridStep)) - 1;
      for (int k = 1; k <= cuts; ++k) {
        probe(grid[i] + gap * k / (cuts + 1));
      }
    }
  }
  return report;
}

TimedPath resample(const TimedPath& path, double step) {
  if (!(step > 0.0)) throw UsageError("resample step must be positive");
  std::vector<TimedPoint> samples;
  double h = path.horizon();
  long n = static_cast<long>(std::floor(h / step + 1e-12));
  samples.reserve(n + 2);
  for (long i = 0; i <= n; ++i) {
    double t = std::min(i * step, h);
    samples.push_back({t, path.eval(t)});
  }
  if (samples.back().t < h) samples.push_back({h, path.eval(h)});
  return TimedPath(path.space(), std::move(samples));
}

}  // namespace pursuitlab
