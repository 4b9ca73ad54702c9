#pragma once

#include <string>
#include <vector>

#include "pursuitlab/geometry.h"
#include "pursuitlab/trajectory.h"

namespace pursuitlab {

// Everything a strategy is allowed to see when deciding: its own past, the
// opponent's visible past, and the clock. `own` always ends at `now`. In
// continuum play `opp` ends at `now` as well; in discrete play the second
// mover additionally sees the opponent's just-completed move, so opp's
// horizon may reach now + (move length).
struct History {
  Space space;
  PathView own;
  PathView opp;
  double now = 0.0;
};

// A strategy queried once per step: returns its position at time now + dt.
// No-lookahead holds by construction (the callback sees only the History).
// The engine validates speed (distance(own(now), result) <= dt) and
// membership, and converts violations into recorded faults.
class ReactiveStrategy {
 public:
  virtual ~ReactiveStrategy() = default;
  virtual std::string name() const = 0;
  virtual Point next_position(const History& h, double dt) = 0;
};

// A committed stretch of the player's own path. Sample times are absolute;
// the first sample must be (now, current position) and the last must be
// strictly later than now.
struct PathSegment {
  std::vector<TimedPoint> samples;
};

// A strategy that commits its path on [now, now + eps] for some eps > 0 of
// its choosing. This is the hypothesis under which a play between a
// committing player and a reacting player is well defined and unique.
class LocallyFiniteStrategy {
 public:
  virtual ~LocallyFiniteStrategy() = default;
  virtual std::string name() const = 0;
  virtual PathSegment commit(const History& h) = 0;
};

}  // namespace pursuitlab
