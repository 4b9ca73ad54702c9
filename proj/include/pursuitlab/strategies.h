#pragma once

#include <cstdint>
#include <memory>

#include "pursuitlab/strategy.h"

namespace pursuitlab {

// --- man strategies ---

// Perpendicular-dash evasion in the closed disc: step i runs for c/i
// perpendicular to the current radius, into the half-plane not containing
// the lion (tie_break = +1 or -1 picks the side when the lion sits on the
// radius line, and the dash direction when the man is at the centre).
// Requires r0^2 + c^2 * pi^2/6 < R^2 at the first commitment, which keeps
// the man strictly inside the disc forever.
std::unique_ptr<LocallyFiniteStrategy> besicovitch(double scale, int tie_break = +1);

// Break coordinate lock on l-infinity product spaces. On a sum of a disc
// and an interval: hold still for `probe`, then run the disc coordinate to
// `first_target` if the lion's disc coordinate stayed glued to the man's
// during the probe and to `second_target` otherwise, then dash evasively in
// the disc (scale/tie_break as in besicovitch) with the interval coordinate
// held. On the l-infinity box: run pole to pole, picking each target by the
// lion's coordinate on the poles' axis, with the probe device when that
// coordinate ties.
std::unique_ptr<LocallyFiniteStrategy> escape_underneath_man(double probe,
                                                             Point first_target,
                                                             Point second_target,
                                                             double scale,
                                                             int tie_break = +1);

// Corner-guarding strategy on the Euclidean box: stays on the guarded edge
// ("left", "right", "top", "bottom"), keeping its distance to each corner
// of that edge no larger than the opponent's. Waits while both corner
// slacks are positive, runs toward a corner the opponent has drawn level
// with. Commits a fault if the corner-domination invariant is broken.
std::unique_ptr<LocallyFiniteStrategy> porter(const std::string& side);

// Race-to-a-point strategy from (1,0) toward (0,0) in the punctured upper
// half-plane: polar position s = (r + 2(1-t))/3, angle t + s - 1, where r
// is the opponent's current radius.
std::unique_ptr<ReactiveStrategy> race_a();

// Exact path-map form of race_a: the response evaluated against the full
// opponent path at equal times (no reaction lag), holding at the origin
// after arrival. Sampled on the opponent's grid plus a uniform `step` grid.
TimedPath race_response_path(const TimedPath& opponent, double step);

// --- lion strategies ---

// Stays on the centre-to-man radius: reaches the farthest point of the ray
// toward the man that the speed budget allows, never past the man's radius.
std::unique_ptr<ReactiveStrategy> radius_lion();

// Curve of pursuit: per step, geodesic move toward the man's current
// position with the full budget.
std::unique_ptr<ReactiveStrategy> pursuit_lion();

// Componentwise sweep on l-infinity product spaces: each component moves at
// full speed toward the man's component and, once equal, copies it exactly
// from then on.
std::unique_ptr<ReactiveStrategy> linf_sweep_lion();

// --- role-agnostic ---

// Stays at its start position.
std::unique_ptr<ReactiveStrategy> constant();

// Runs at full speed directly away from the opponent's latest position on a
// disc or box, sliding back inside when a step would leave the space. While
// exactly on top of the opponent it runs in the +x direction.
std::unique_ptr<ReactiveStrategy> run_away();

// Follows a predetermined path (clamped to its horizon), ignoring the
// opponent. The committing variant releases the script in fixed windows.
std::unique_ptr<ReactiveStrategy> scripted_path(TimedPath script);
std::unique_ptr<LocallyFiniteStrategy> scripted_committer(TimedPath script, double window);

// --- adversarial path generators (deterministic in the seed) ---

// Full-speed boundary runner: starts at (R, 0), runs counterclockwise.
TimedPath circle_runner_path(const Space& disc, double horizon, double step);

// Random waypoint wander at speed <= 1.
TimedPath random_lipschitz_path(const Space& space, const Point& start, double horizon,
                                double step, std::uint64_t seed);

// Student path for the porter game: wanders, then dashes to a random point
// of the guarded edge and holds there.
TimedPath edge_dash_student_path(const Space& box, const Point& start, const std::string& side,
                                 double horizon, double step, std::uint64_t seed);

// Race opponent: waits at (1,0) for `wait`, then follows a bulging arc
// (bulge > 0 bends into the upper half-plane) to the origin at `speed`,
// holding there afterwards.
TimedPath race_opponent_path(double wait, double bulge, double speed, double horizon,
                             double step);

}  // namespace pursuitlab
