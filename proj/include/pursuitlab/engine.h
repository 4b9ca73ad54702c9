#pragma once

#include <optional>
#include <string>

#include "pursuitlab/strategy.h"
#include "pursuitlab/trajectory.h"

namespace pursuitlab {

enum class Role { Lion, Man };
enum class MoveOrder { LionFirst, ManFirst };

const char* role_name(Role role);

// Everything a play needs besides the strategies themselves.
struct GameConfig {
  Space space;
  Point lion_start;
  Point man_start;
  double horizon = 1.0;       // must be a positive whole number of dt steps
  double dt = 1e-3;           // reactor step inside committed windows
  double capture_tol = -1.0;  // negative selects the per-mode default: 1e-6
                              // for continuum plays; 0 on graphs and dt on
                              // coordinate spaces for discrete plays
};

// How a PlayRecord was produced. eps and order are meaningful only for
// discrete plays.
struct PlayMode {
  bool discrete = false;
  double eps = 0.0;
  MoveOrder order = MoveOrder::LionFirst;
};

// A strategy error surfaced by the engine. The play aborts at the fault and
// the record carries the partial paths instead of the exception escaping.
struct StrategyFault {
  Role role = Role::Lion;
  std::string message;
  double at_time = 0.0;
};

struct PlayRecord {
  TimedPath lion;
  TimedPath man;
  SeparationReport separation;
  PlayMode mode;
  std::optional<StrategyFault> fault;
};

// Continuum play. The committer announces locally finite segments; within
// each committed window the reactor's trajectory is filled in steps of
// config.dt, and at each decision time the reactor sees the committer's
// positions up to that instant. The play stops at the horizon, at capture
// (separation within tolerance at a step boundary), or at the first strategy
// fault. Reactive-vs-reactive play is not supported: exactly one side must
// commit. Identical inputs yield bit-identical records.
PlayRecord play(LocallyFiniteStrategy& committer, ReactiveStrategy& reactor,
                Role committer_role, const GameConfig& config);

// eps-discrete play with strict alternation over horizon / eps rounds. Each
// round the first mover steps at most eps seeing the opponent's position at
// the round start, then the second mover steps seeing the first mover's
// just-completed move. Separation counts at whole-round boundaries; on graph
// spaces a move whose route passes through the opponent's position captures
// outright.
PlayRecord play_discrete(ReactiveStrategy& lion, ReactiveStrategy& man, double eps,
                         MoveOrder order, const GameConfig& config);

// True when the geodesic route from -> to on a graph space passes through
// `at` (endpoints included). This is the crossing predicate discrete plays
// and the value solver share; offsets compare exactly.
bool route_covers(const Space& space, const Point& from, const Point& to, const Point& at);

}  // namespace pursuitlab
