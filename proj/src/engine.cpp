#include "pursuitlab/engine.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "pursuitlab/errors.h"

namespace pursuitlab {

namespace {

constexpr double kTimeTol = 1e-9;
constexpr long kMaxWindows = 2'000'000;

double speed_allowance(double dt) { return dt * (1.0 + 1e-9) + 1e-15; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void check_config(const GameConfig& config) {
  if (!(config.horizon > 0.0)) {
    throw UsageError("horizon must be positive, got " + fmt(config.horizon));
  }
  if (!(config.dt > 0.0)) {
    throw UsageError("dt must be positive, got " + fmt(config.dt));
  }
  double steps = config.horizon / config.dt;
  if (std::abs(steps - std::round(steps)) > 1e-9 * std::max(1.0, steps)) {
    throw UsageError("horizon " + fmt(config.horizon) + " is not a whole number of dt steps");
  }
  config.space.require_member(config.lion_start, "lion start");
  config.space.require_member(config.man_start, "man start");
  if (config.space.distance(config.lion_start, config.man_start) == 0.0) {
    throw UsageError("players must start at distinct points");
  }
}

double continuum_tol(const GameConfig& config) {
  return config.capture_tol >= 0.0 ? config.capture_tol : 1e-6;
}

double discrete_tol(const GameConfig& config) {
  if (config.capture_tol >= 0.0) return config.capture_tol;
  return config.space.kind() == Space::Kind::MetricGraph ? 0.0 : config.dt;
}

// Cuts a strictly-time-increasing sample list at t_cut, interpolating a final
// sample on the bracketing geodesic when t_cut falls between samples. The
// caller guarantees samples.front().t <= t_cut <= samples.back().t.
void truncate_at(const Space& space, std::vector<TimedPoint>& samples, double t_cut) {
  std::size_t j = 0;
  while (j < samples.size() && samples[j].t < t_cut) ++j;
  if (j < samples.size() && samples[j].t == t_cut) {
    samples.resize(j + 1);
    return;
  }
  const TimedPoint& a = samples[j - 1];
  const TimedPoint& b = samples[j];
  double frac = (t_cut - a.t) / (b.t - a.t);
  Point p = space.geodesic_step(a.p, b.p, space.metric(a.p, b.p) * frac);
  samples.resize(j);
  samples.push_back({t_cut, p});
}

// Empty string when the segment is well formed; otherwise the fault text.
// The segment's first sample is forced to exact continuity before the call.
std::string segment_problem(const Space& space, const PathSegment& seg, double now) {
  const auto& s = seg.samples;
  if (s.size() < 2) return "committed segment needs a strictly later sample";
  if (!(s.back().t > now)) {
    return "committed segment has nonpositive duration (ends at " + fmt(s.back().t) + ")";
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    double step = s[i].t - s[i - 1].t;
    if (!(step > 0.0)) {
      return "committed sample times must increase strictly (at index " + std::to_string(i) + ")";
    }
    try {
      space.require_member(s[i].p, "committed sample");
    } catch (const Error& e) {
      return e.what();
    }
    double d;
    try {
      d = space.metric(s[i - 1].p, s[i].p);
    } catch (const Error& e) {
      return e.what();
    }
    if (d > speed_allowance(step)) {
      return "committed segment moves " + fmt(d) + " in time " + fmt(step) +
             ", exceeding unit speed";
    }
  }
  return "";
}

// Empty string when a reactive step is admissible; otherwise the fault text.
std::string move_problem(const Space& space, const Point& from, const Point& to, double step) {
  try {
    space.require_member(to, "reactive move");
  } catch (const Error& e) {
    return e.what();
  }
  double d;
  try {
    d = space.metric(from, to);
  } catch (const Error& e) {
    return e.what();
  }
  if (d > speed_allowance(step)) {
    return "reactive move of length " + fmt(d) + " exceeds the step budget " + fmt(step);
  }
  return "";
}

}  // namespace

const char* role_name(Role role) { return role == Role::Lion ? "lion" : "man"; }

// Node coincidence across different edge addresses is caught by a zero
// metric distance at leg endpoints; interior offsets compare exactly.
bool route_covers(const Space& space, const Point& from, const Point& to, const Point& at) {
  if (space.metric(from, at) == 0.0) return true;
  for (const GraphRouteLeg& leg : space.geodesic_route(from, to)) {
    double lo = std::min(leg.from_off, leg.to_off);
    double hi = std::max(leg.from_off, leg.to_off);
    if (at.edge == leg.edge && at.offset >= lo && at.offset <= hi) return true;
    if (space.metric(graph_pt(leg.edge, leg.from_off), at) == 0.0) return true;
    if (space.metric(graph_pt(leg.edge, leg.to_off), at) == 0.0) return true;
  }
  return false;
}

PlayRecord play(LocallyFiniteStrategy& committer, ReactiveStrategy& reactor, Role committer_role,
                const GameConfig& config) {
  check_config(config);
  const Space& space = config.space;
  const double tol = continuum_tol(config);
  const Role reactor_role = committer_role == Role::Lion ? Role::Man : Role::Lion;

  std::vector<TimedPoint> com{{0.0, committer_role == Role::Lion ? config.lion_start
                                                                 : config.man_start}};
  std::vector<TimedPoint> rea{{0.0, committer_role == Role::Lion ? config.man_start
                                                                 : config.lion_start}};

  std::optional<StrategyFault> fault;
  bool captured = space.distance(com[0].p, rea[0].p) <= tol;
  double now = 0.0;
  long windows = 0;

  while (!captured && !fault && now < config.horizon - kTimeTol) {
    if (++windows > kMaxWindows) {
      throw ResourceError("play exceeded " + std::to_string(kMaxWindows) +
                          " committed windows before the horizon");
    }

    PathSegment seg;
    try {
      History h{space, PathView(space, com.data(), com.size(), now),
                PathView(space, rea.data(), rea.size(), now), now};
      seg = committer.commit(h);
    } catch (const Error& e) {
      fault = StrategyFault{committer_role, e.what(), now};
      break;
    }
    bool starts_here = false;
    try {
      starts_here = !seg.samples.empty() && std::abs(seg.samples.front().t - now) <= kTimeTol &&
                    space.metric(seg.samples.front().p, com.back().p) <= kTimeTol;
    } catch (const Error&) {
    }
    if (starts_here) {
      seg.samples.front() = {now, com.back().p};
    } else {
      fault = StrategyFault{committer_role,
                            "committed segment must start at the current time and position", now};
      break;
    }
    std::string problem = segment_problem(space, seg, now);
    if (!problem.empty()) {
      fault = StrategyFault{committer_role, problem, now};
      break;
    }
    if (seg.samples.back().t > config.horizon) {
      truncate_at(space, seg.samples, config.horizon);
    }
    double seg_end = seg.samples.back().t;
    for (std::size_t i = 1; i < seg.samples.size(); ++i) com.push_back(seg.samples[i]);

    // Fill the reactor's trajectory across the window in dt substeps. The
    // committer's samples for the window are already in place, so the view
    // below can interpolate them; prefix() hides everything past the
    // reactor's own decision time. Even a window shorter than a substep gets
    // one reactor move at its end, so capture is probed at every commitment.
    PathView com_full(space, com.data(), com.size(), com.back().t);
    double t_prev = now;
    long k = 1;
    while (t_prev < seg_end) {
      double tk = now + static_cast<double>(k) * config.dt;
      if (tk > seg_end - kTimeTol) tk = seg_end;
      double step = tk - t_prev;

      Point target;
      try {
        History h{space, PathView(space, rea.data(), rea.size(), t_prev),
                  com_full.prefix(t_prev), t_prev};
        target = reactor.next_position(h, step);
      } catch (const Error& e) {
        fault = StrategyFault{reactor_role, e.what(), t_prev};
        break;
      }
      problem = move_problem(space, rea.back().p, target, step);
      if (!problem.empty()) {
        fault = StrategyFault{reactor_role, problem, t_prev};
        break;
      }
      rea.push_back({tk, target});
      t_prev = tk;
      ++k;

      if (space.metric(com_full.eval(tk), target) <= tol) {
        captured = true;
        truncate_at(space, com, tk);
        break;
      }
    }
    if (fault) {
      truncate_at(space, com, t_prev);
      break;
    }
    now = seg_end;
  }

  TimedPath com_path(space, std::move(com));
  TimedPath rea_path(space, std::move(rea));
  TimedPath lion_path = committer_role == Role::Lion ? com_path : rea_path;
  TimedPath man_path = committer_role == Role::Lion ? rea_path : com_path;
  SeparationReport separation = min_separation(lion_path, man_path, tol);
  return PlayRecord{std::move(lion_path), std::move(man_path), separation, PlayMode{}, fault};
}

PlayRecord play_discrete(ReactiveStrategy& lion, ReactiveStrategy& man, double eps,
                         MoveOrder order, const GameConfig& config) {
  check_config(config);
  if (!(eps > 0.0)) throw UsageError("eps must be positive, got " + fmt(eps));
  double rounds = config.horizon / eps;
  long n = std::lround(rounds);
  if (n <= 0 || std::abs(rounds - static_cast<double>(n)) > 1e-9 * std::max(1.0, rounds)) {
    throw UsageError("horizon " + fmt(config.horizon) + " is not a whole number of eps rounds");
  }

  const Space& space = config.space;
  const double tol = discrete_tol(config);
  const bool graph = space.kind() == Space::Kind::MetricGraph;

  std::vector<TimedPoint> lp{{0.0, config.lion_start}};
  std::vector<TimedPoint> mp{{0.0, config.man_start}};
  std::optional<StrategyFault> fault;

  double min_dist = space.distance(config.lion_start, config.man_start);
  double arg_time = 0.0;
  bool captured = min_dist <= tol;
  double capture_time = 0.0;

  for (long round = 0; round < n && !captured && !fault; ++round) {
    double t0 = static_cast<double>(round) * eps;
    double t1 = round == n - 1 ? config.horizon : static_cast<double>(round + 1) * eps;

    // One mover's turn: sees its own path to t0 and the opponent's to opp_hz
    // (t0 for the first mover, t1 for the second, whose opponent has already
    // completed this round's move).
    auto move_one = [&](ReactiveStrategy& strat, Role role, std::vector<TimedPoint>& own,
                        const std::vector<TimedPoint>& opp, double opp_hz) {
      Point target;
      try {
        History h{space, PathView(space, own.data(), own.size(), own.back().t),
                  PathView(space, opp.data(), opp.size(), opp_hz), t0};
        target = strat.next_position(h, t1 - t0);
      } catch (const Error& e) {
        fault = StrategyFault{role, e.what(), t0};
        return;
      }
      std::string problem = move_problem(space, own.back().p, target, t1 - t0);
      if (!problem.empty()) {
        fault = StrategyFault{role, problem, t0};
        return;
      }
      if (graph && route_covers(space, own.back().p, target, opp.back().p)) {
        captured = true;
        capture_time = t1;
        min_dist = 0.0;
        arg_time = t1;
      }
      own.push_back({t1, target});
    };

    if (order == MoveOrder::LionFirst) {
      move_one(lion, Role::Lion, lp, mp, t0);
      if (!fault && !captured) move_one(man, Role::Man, mp, lp, t1);
    } else {
      move_one(man, Role::Man, mp, lp, t0);
      if (!fault && !captured) move_one(lion, Role::Lion, lp, mp, t1);
    }

    if (fault || captured) {
      // Hold the player who never got to move so both paths share a horizon.
      if (lp.back().t < mp.back().t) lp.push_back({mp.back().t, lp.back().p});
      if (mp.back().t < lp.back().t) mp.push_back({lp.back().t, mp.back().p});
      break;
    }

    double d = space.distance(lp.back().p, mp.back().p);
    if (d < min_dist) {
      min_dist = d;
      arg_time = t1;
    }
    if (d <= tol) {
      captured = true;
      capture_time = t1;
    }
  }

  SeparationReport separation;
  separation.min_distance = min_dist;
  separation.arg_time = arg_time;
  separation.captured = captured;
  if (captured) separation.capture_time = capture_time;

  return PlayRecord{TimedPath(space, std::move(lp)), TimedPath(space, std::move(mp)), separation,
                    PlayMode{true, eps, order}, fault};
}

}  // namespace pursuitlab
