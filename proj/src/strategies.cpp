#include "pursuitlab/strategies.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "pursuitlab/errors.h"

namespace pursuitlab {
namespace {

constexpr double kTieTol = 1e-12;
constexpr double kTrackTol = 1e-9;
constexpr double kMinCommit = 1e-9;

Point own_now(const History& h) { return h.own.eval(h.now); }
Point opp_latest(const History& h) { return h.opp.eval(h.opp.horizon()); }

PathSegment two_point_segment(double t0, const Point& a, double t1, const Point& b) {
  PathSegment seg;
  seg.samples = {{t0, a}, {t1, b}};
  return seg;
}

// Unit dash direction perpendicular to the radius through m, into the open
// half-plane (bounded by the radius line) not containing the lion. With the
// lion on the line, or the man at the centre, tie_break picks the side.
Point dash_direction(const Point& m, const Point& lion, int tie_break) {
  double r = std::hypot(m.x, m.y);
  if (r <= kTieTol) return pt(0.0, tie_break >= 0 ? 1.0 : -1.0);
  double ux = m.x / r;
  double uy = m.y / r;
  double cross = ux * lion.y - uy * lion.x;
  int side;
  if (cross > kTieTol) {
    side = -1;  // lion on the counterclockwise side: dash clockwise
  } else if (cross < -kTieTol) {
    side = +1;
  } else {
    side = tie_break >= 0 ? +1 : -1;
  }
  // +1 is the counterclockwise perpendicular.
  return pt(-uy * side, ux * side);
}

// Containment bound for the perpendicular-dash scheme: the squared radius
// grows by exactly sum (c/i)^2 <= c^2 * pi^2/6.
void check_dash_containment(double r0, double scale, double disc_radius) {
  double sup2 = r0 * r0 + scale * scale * (M_PI * M_PI / 6.0);
  if (!(sup2 < disc_radius * disc_radius)) {
    throw DomainError("dash scale " + std::to_string(scale) + " from start radius " +
                      std::to_string(r0) + " cannot stay inside radius " +
                      std::to_string(disc_radius) + ": sup radius^2 = " + std::to_string(sup2));
  }
}

class Besicovitch final : public LocallyFiniteStrategy {
 public:
  Besicovitch(double scale, int tie_break) : c_(scale), tie_(tie_break) {
    if (!(c_ > 0.0)) throw DomainError("dash scale must be positive");
  }
  std::string name() const override { return "besicovitch"; }

  PathSegment commit(const History& h) override {
    if (h.space.kind() != Space::Kind::ClosedDisc) {
      throw DomainError("perpendicular-dash evasion needs a closed disc");
    }
    Point m = own_now(h);
    if (i_ == 1) check_dash_containment(std::hypot(m.x, m.y), c_, h.space.radius());
    double ti = c_ / static_cast<double>(i_);
    ++i_;
    Point dir = dash_direction(m, opp_latest(h), tie_);
    return two_point_segment(h.now, m, h.now + ti, pt(m.x + ti * dir.x, m.y + ti * dir.y));
  }

 private:
  double c_;
  int tie_;
  long i_ = 1;
};

// --- escape from coordinate lock on l-infinity products ---

class EscapeUnderneath final : public LocallyFiniteStrategy {
 public:
  EscapeUnderneath(double probe, Point first, Point second, double scale, int tie_break)
      : probe_(probe), first_(first), second_(second), c_(scale), tie_(tie_break) {
    if (!(probe_ > 0.0)) throw DomainError("probe duration must be positive");
    if (!(c_ > 0.0)) throw DomainError("dash scale must be positive");
  }
  std::string name() const override { return "escape_underneath"; }

  PathSegment commit(const History& h) override {
    switch (h.space.kind()) {
      case Space::Kind::LinfSum: return commit_on_sum(h);
      case Space::Kind::LinfBox: return commit_on_box(h);
      default:
        throw DomainError("escape device needs an l-infinity product space");
    }
  }

 private:
  // Sum of a disc and an interval: probe, run the disc coordinate to a
  // target, then dash evasively in the disc with the interval coordinate
  // held.
  PathSegment commit_on_sum(const History& h) {
    if (h.space.sum_first().kind() != Space::Kind::ClosedDisc) {
      throw DomainError("escape device expects the disc as the first summand");
    }
    Point p = own_now(h);
    if (sum_phase_ == 0) {
      sum_phase_ = 1;
      probe_start_ = h.now;
      return two_point_segment(h.now, p, h.now + probe_, p);
    }
    if (sum_phase_ == 1) {
      sum_phase_ = 2;
      Point target = lion_glued_to(p.parts[0], h) ? first_ : second_;
      double run = std::hypot(target.x - p.parts[0].x, target.y - p.parts[0].y);
      if (run > kMinCommit) {
        return two_point_segment(h.now, p, h.now + run, sum_pt(target, p.parts[1]));
      }
      // Already at the target: fall through to dashing.
    }
    Point m = p.parts[0];
    if (dash_i_ == 1) {
      check_dash_containment(std::hypot(m.x, m.y), c_, h.space.sum_first().radius());
    }
    double ti = c_ / static_cast<double>(dash_i_);
    ++dash_i_;
    Point lion_disc = opp_latest(h).parts[0];
    Point dir = dash_direction(m, lion_disc, tie_);
    Point next = sum_pt(pt(m.x + ti * dir.x, m.y + ti * dir.y), p.parts[1]);
    return two_point_segment(h.now, p, h.now + ti, next);
  }

  // Was the lion's disc coordinate equal to the man's (stationary) disc
  // coordinate at every opponent sample inside the probe window?
  bool lion_glued_to(const Point& man_disc, const History& h) const {
    const Space& disc = h.space.sum_first();
    bool saw_sample = false;
    for (std::size_t i = 0; i < h.opp.sample_count(); ++i) {
      const TimedPoint& s = h.opp.sample(i);
      if (s.t <= probe_start_ || s.t > probe_start_ + probe_ + kTieTol) continue;
      saw_sample = true;
      if (disc.distance(s.p.parts[0], man_disc) > kTrackTol) return false;
    }
    return saw_sample;
  }

  // l-infinity box: run from pole to pole. The two candidate poles sit on
  // the axis perpendicular to the current pole (the y-axis initially); the
  // lion's coordinate on that axis picks the far one, with the probe device
  // breaking exact ties.
  PathSegment commit_on_box(const History& h) {
    double w = h.space.halfwidth();
    Point p = own_now(h);
    Point lion = h.opp.eval(h.now);

    if (box_probing_) {
      box_probing_ = false;
      bool ascent = lion_made_identity_ascent(h);
      Point target = make_pole(box_axis_, ascent ? -w : w);
      return run_segment(h, p, target);
    }

    int axis = pick_axis(p, w);
    double lion_c = (axis == 0) ? lion.x : lion.y;
    double man_c = (axis == 0) ? p.x : p.y;
    double gap = lion_c - man_c;
    if (gap > kTieTol) return run_segment(h, p, make_pole(axis, -w));
    if (gap < -kTieTol) return run_segment(h, p, make_pole(axis, w));

    // Exact tie: probe for a while, holding the decision coordinate and
    // closing the other one toward the poles' shared value 0.
    box_probing_ = true;
    box_axis_ = axis;
    probe_start_ = h.now;
    probe_base_ = lion_c;
    Point probe_end = p;
    double other = (axis == 0) ? p.y : p.x;
    double closed = (std::abs(other) <= probe_) ? 0.0 : other - std::copysign(probe_, other);
    if (axis == 0) {
      probe_end.y = closed;
    } else {
      probe_end.x = closed;
    }
    return two_point_segment(h.now, p, h.now + probe_, probe_end);
  }

  bool lion_made_identity_ascent(const History& h) const {
    bool saw_sample = false;
    for (std::size_t i = 0; i < h.opp.sample_count(); ++i) {
      const TimedPoint& s = h.opp.sample(i);
      if (s.t <= probe_start_ || s.t > probe_start_ + probe_ + kTieTol) continue;
      saw_sample = true;
      double c = (box_axis_ == 0) ? s.p.x : s.p.y;
      if (std::abs(c - (probe_base_ + (s.t - probe_start_))) > kTrackTol) return false;
    }
    return saw_sample;
  }

  // Axis on which the two candidate poles differ: perpendicular to the
  // pole the man sits on; the y-axis when he is not at a pole.
  int pick_axis(const Point& p, double w) const {
    bool at_y_pole = std::abs(std::abs(p.y) - w) <= kTieTol && std::abs(p.x) <= kTieTol;
    return at_y_pole ? 0 : 1;
  }

  static Point make_pole(int axis, double coord) {
    return axis == 0 ? pt(coord, 0.0) : pt(0.0, coord);
  }

  PathSegment run_segment(const History& h, const Point& from, const Point& to) const {
    double dur = std::max(std::abs(to.x - from.x), std::abs(to.y - from.y));
    dur = std::max(dur, kMinCommit);
    return two_point_segment(h.now, from, h.now + dur, to);
  }

  double probe_;
  Point first_;
  Point second_;
  double c_;
  int tie_;
  int sum_phase_ = 0;
  long dash_i_ = 1;
  double probe_start_ = 0.0;
  bool box_probing_ = false;
  int box_axis_ = 1;
  double probe_base_ = 0.0;
};

// --- porter ---

struct Frame {
  // Maps raw coordinates into the left-edge frame: v -> M v.
  double m00, m01, m10, m11;
  Point fwd(const Point& p) const { return pt(m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y); }
  Point inv(const Point& p) const { return pt(m00 * p.x + m10 * p.y, m01 * p.x + m11 * p.y); }
};

Frame side_frame(const std::string& side) {
  if (side == "left") return {1, 0, 0, 1};
  if (side == "right") return {-1, 0, 0, -1};
  if (side == "top") return {0, -1, 1, 0};     // rotate +90 degrees
  if (side == "bottom") return {0, 1, -1, 0};  // rotate -90 degrees
  throw DomainError("unknown porter side '" + side + "'");
}

class Porter final : public LocallyFiniteStrategy {
 public:
  explicit Porter(const std::string& side) : side_(side), frame_(side_frame(side)) {}
  std::string name() const override { return "porter"; }

  PathSegment commit(const History& h) override {
    if (h.space.kind() != Space::Kind::EuclideanBox) {
      throw DomainError("porter needs a Euclidean box");
    }
    double w = h.space.halfwidth();
    Point p_raw = own_now(h);
    Point p = frame_.fwd(p_raw);
    Point s = frame_.fwd(h.opp.eval(h.now));
    if (std::abs(p.x + w) > kTrackTol) {
      throw StrategyFaultError("porter left its edge (" + pursuitlab::describe(p_raw) + ")");
    }
    Point top = pt(-w, w);
    Point bot = pt(-w, -w);
    double slack_top = std::hypot(s.x - top.x, s.y - top.y) - (w - p.y);
    double slack_bot = std::hypot(s.x - bot.x, s.y - bot.y) - (p.y + w);
    if (slack_top < -kTrackTol || slack_bot < -kTrackTol) {
      throw StrategyFaultError("corner domination lost (top slack " +
                               std::to_string(slack_top) + ", bottom slack " +
                               std::to_string(slack_bot) + ")");
    }

    // Waiting is safe while both slacks stay positive; running toward the
    // tighter corner is safe for half the other slack (the run can never
    // violate its own corner's bound). Committing the larger of the two
    // keeps every window at least a quarter of the total slack, so the
    // windows cannot shrink faster than the student closes in.
    double margin = std::min(slack_top, slack_bot);
    double other = std::max(std::max(slack_top, slack_bot), 0.0);
    double dur;
    Point end = p;
    if (margin >= 0.5 * other) {
      dur = margin;
    } else {
      bool to_top = slack_top <= slack_bot;
      double corner_y = to_top ? w : -w;
      double tau = 0.5 * other;
      double move = std::min(tau, std::abs(corner_y - p.y));
      if (move > kTieTol) {
        dur = move;
        end = pt(-w, p.y + (to_top ? move : -move));
      } else {
        dur = tau;  // already parked at the corner
      }
    }
    dur = std::max(dur, kMinCommit);
    return two_point_segment(h.now, p_raw, h.now + dur, frame_.inv(end));
  }

 private:
  std::string side_;
  Frame frame_;
};

// --- race to a point ---

struct RacePolar {
  double s;
  double phi;
};

RacePolar race_formula(double t, double opp_radius) {
  RacePolar out;
  out.s = (opp_radius + 2.0 * (1.0 - t)) / 3.0;
  out.phi = t + out.s - 1.0;
  return out;
}

class RaceA final : public ReactiveStrategy {
 public:
  std::string name() const override { return "race_a"; }

  Point next_position(const History& h, double dt) override {
    if (h.space.kind() != Space::Kind::HalfPlaneRace) {
      throw DomainError("race strategy needs the punctured half-plane");
    }
    Point cur = own_now(h);
    if (cur.x == 0.0 && cur.y == 0.0) return cur;  // arrived: stay
    Point b = opp_latest(h);
    RacePolar rp = race_formula(h.now + dt, std::hypot(b.x, b.y));
    if (rp.s <= 0.0) return pt(0.0, 0.0);
    return pt(rp.s * std::cos(rp.phi), rp.s * std::sin(rp.phi));
  }
};

class RadiusLion final : public ReactiveStrategy {
 public:
  std::string name() const override { return "radius_lion"; }

  Point next_position(const History& h, double dt) override {
    Point l = own_now(h);
    Point m = opp_latest(h);
    double rm = std::hypot(m.x, m.y);
    if (rm <= kTieTol) return l;  // man at the centre: radius undefined, hold
    double ux = m.x / rm;
    double uy = m.y / rm;
    double dot = ux * l.x + uy * l.y;
    double lat2 = std::max(0.0, (l.x * l.x + l.y * l.y) - dot * dot);
    if (lat2 <= dt * dt) {
      double root = std::sqrt(dt * dt - lat2);
      double rho_max = dot + root;
      if (rho_max >= 0.0) {
        // Farthest point of the ray within reach, never past the man.
        double rho = std::min(rho_max, rm);
        rho = std::max(rho, std::max(dot - root, 0.0));
        Point target = pt(rho * ux, rho * uy);
        // The root above loses ~sqrt(eps) digits when the lion is almost on
        // the ray; rescaling the final hop keeps the move inside the budget.
        if (h.space.metric(l, target) > dt) target = h.space.geodesic_step(l, target, dt);
        return target;
      }
    }
    // Ray out of reach this step: head for its nearest point.
    double proj = std::max(dot, 0.0);
    return h.space.geodesic_step(l, pt(proj * ux, proj * uy), dt);
  }
};

class PursuitLion final : public ReactiveStrategy {
 public:
  std::string name() const override { return "pursuit_lion"; }
  Point next_position(const History& h, double dt) override {
    return h.space.geodesic_step(own_now(h), opp_latest(h), dt);
  }
};

class LinfSweep final : public ReactiveStrategy {
 public:
  std::string name() const override { return "linf_sweep"; }

  Point next_position(const History& h, double dt) override {
    int n = h.space.component_count();
    if (n < 2) throw DomainError("sweep needs an l-infinity product space");
    Point own = own_now(h);
    Point target = h.opp.eval(std::min(h.opp.horizon(), h.now + dt));
    Point out = own;
    for (int i = 0; i < n; ++i) {
      Space cs = h.space.component(i);
      Point oc = h.space.get_component(own, i);
      Point tc = h.space.get_component(target, i);
      double gap = cs.distance(oc, tc);
      // Contact within budget: copy the coordinate exactly (and keep
      // copying forever, since the opponent moves at most dt per step).
      Point next = (gap <= dt) ? tc : cs.geodesic_step(oc, tc, dt);
      out = h.space.replace_component(out, i, next);
    }
    return out;
  }
};

class Constant final : public ReactiveStrategy {
 public:
  std::string name() const override { return "constant"; }
  Point next_position(const History& h, double) override { return own_now(h); }
};

class RunAway final : public ReactiveStrategy {
 public:
  std::string name() const override { return "run_away"; }

  Point next_position(const History& h, double dt) override {
    Point own = own_now(h);
    Point opp = opp_latest(h);
    double dx = own.x - opp.x;
    double dy = own.y - opp.y;
    double d = std::hypot(dx, dy);
    double ux = 1.0;
    double uy = 0.0;
    if (d > kTieTol) {
      ux = dx / d;
      uy = dy / d;
    }
    double tx = own.x + dt * ux;
    double ty = own.y + dt * uy;
    switch (h.space.kind()) {
      case Space::Kind::ClosedDisc: {
        double r = h.space.radius();
        double norm = std::hypot(tx, ty);
        if (norm > r) {
          tx *= r / norm;
          ty *= r / norm;
        }
        break;
      }
      case Space::Kind::LinfBox:
      case Space::Kind::EuclideanBox: {
        double w = h.space.halfwidth();
        tx = std::clamp(tx, -w, w);
        ty = std::clamp(ty, -w, w);
        break;
      }
      default:
        throw DomainError("run_away needs a disc or box space, not " + h.space.describe());
    }
    return pt(tx, ty);
  }
};

class ScriptedPath final : public ReactiveStrategy {
 public:
  explicit ScriptedPath(TimedPath script) : script_(std::move(script)) {}
  std::string name() const override { return "scripted_path"; }
  Point next_position(const History& h, double dt) override {
    return script_.eval(std::min(h.now + dt, script_.horizon()));
  }

 private:
  TimedPath script_;
};

class ScriptedCommitter final : public LocallyFiniteStrategy {
 public:
  ScriptedCommitter(TimedPath script, double window)
      : script_(std::move(script)), window_(window) {
    if (!(window_ > 0.0)) throw DomainError("commit window must be positive");
  }
  std::string name() const override { return "scripted_path"; }

  PathSegment commit(const History& h) override {
    double start = h.now;
    double end = start + window_;
    double hz = script_.horizon();
    if (start >= hz) {
      Point p = own_now(h);
      return two_point_segment(start, p, end, p);
    }
    PathSegment seg;
    seg.samples.push_back({start, script_.eval(start)});
    for (const TimedPoint& s : script_.samples()) {
      if (s.t > start && s.t < std::min(end, hz)) seg.samples.push_back(s);
    }
    if (end < hz) {
      seg.samples.push_back({end, script_.eval(end)});
    } else {
      seg.samples.push_back({hz, script_.eval(hz)});
      if (end > hz) seg.samples.push_back({end, script_.eval(hz)});
    }
    return seg;
  }

 private:
  TimedPath script_;
  double window_;
};

Point random_point_in(const Space& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  switch (s.kind()) {
    case Space::Kind::ClosedDisc: {
      double r = s.radius() * std::sqrt(u01(rng));
      double a = 2.0 * M_PI * u01(rng);
      return pt(r * std::cos(a), r * std::sin(a));
    }
    case Space::Kind::LinfBox:
    case Space::Kind::EuclideanBox: {
      double w = s.halfwidth();
      return pt(w * (2.0 * u01(rng) - 1.0), w * (2.0 * u01(rng) - 1.0));
    }
    case Space::Kind::Interval:
      return pt(s.lo() + (s.hi() - s.lo()) * u01(rng));
    case Space::Kind::LinfSum:
      return sum_pt(random_point_in(s.sum_first(), rng), random_point_in(s.sum_second(), rng));
    case Space::Kind::MetricGraph: {
      const MetricGraph& g = s.graph();
      std::uniform_int_distribution<int> pick(0, static_cast<int>(g.edges().size()) - 1);
      int e = pick(rng);
      return graph_pt(e, g.edges()[e].length * u01(rng));
    }
    case Space::Kind::HalfPlaneRace:
      return pt(2.0 * u01(rng) - 1.0, u01(rng) + 1e-6);
  }
  return pt(0.0, 0.0);
}

}  // namespace

std::unique_ptr<LocallyFiniteStrategy> besicovitch(double scale, int tie_break) {
  return std::make_unique<Besicovitch>(scale, tie_break);
}

std::unique_ptr<LocallyFiniteStrategy> escape_underneath_man(double probe, Point first_target,
                                                             Point second_target, double scale,
                                                             int tie_break) {
  return std::make_unique<EscapeUnderneath>(probe, first_target, second_target, scale, tie_break);
}

std::unique_ptr<LocallyFiniteStrategy> porter(const std::string& side) {
  return std::make_unique<Porter>(side);
}

std::unique_ptr<ReactiveStrategy> race_a() { return std::make_unique<RaceA>(); }

TimedPath race_response_path(const TimedPath& opponent, double step) {
  if (opponent.space().kind() != Space::Kind::HalfPlaneRace) {
    throw DomainError("race response needs the punctured half-plane");
  }
  Point b0 = opponent.eval(0.0);
  if (std::abs(b0.x - 1.0) > kEqTol || std::abs(b0.y) > kEqTol) {
    throw DomainError("race response requires the opponent to start at (1, 0)");
  }
  if (!(step > 0.0)) throw DomainError("sample step must be positive");

  double hz = opponent.horizon();
  std::vector<double> grid;
  for (const TimedPoint& s : opponent.samples()) grid.push_back(s.t);
  for (double t = 0.0; t < hz; t += step) grid.push_back(t);
  grid.push_back(hz);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<TimedPoint> samples;
  samples.push_back({0.0, pt(1.0, 0.0)});
  double prev_t = 0.0;
  double prev_s = 1.0;
  for (double t : grid) {
    if (t <= 0.0) continue;
    Point b = opponent.eval(t);
    RacePolar rp = race_formula(t, std::hypot(b.x, b.y));
    if (rp.s <= 0.0) {
      // Linear-in-s arrival estimate between the bracketing grid times.
      double frac = prev_s / (prev_s - rp.s);
      double t_arr = prev_t + frac * (t - prev_t);
      if (t_arr <= prev_t) t_arr = t;
      samples.push_back({t_arr, pt(0.0, 0.0)});
      if (t_arr < hz) samples.push_back({hz, pt(0.0, 0.0)});
      return TimedPath(opponent.space(), std::move(samples));
    }
    if (rp.phi <= 0.0) {
      throw DomainError("opponent path is not valid in the space: radius " +
                        std::to_string(std::hypot(b.x, b.y)) + " at time " + std::to_string(t) +
                        " does not exceed 1 - t");
    }
    samples.push_back({t, pt(rp.s * std::cos(rp.phi), rp.s * std::sin(rp.phi))});
    prev_t = t;
    prev_s = rp.s;
  }
  return TimedPath(opponent.space(), std::move(samples));
}

std::unique_ptr<ReactiveStrategy> radius_lion() { return std::make_unique<RadiusLion>(); }
std::unique_ptr<ReactiveStrategy> pursuit_lion() { return std::make_unique<PursuitLion>(); }
std::unique_ptr<ReactiveStrategy> linf_sweep_lion() { return std::make_unique<LinfSweep>(); }
std::unique_ptr<ReactiveStrategy> constant() { return std::make_unique<Constant>(); }

std::unique_ptr<ReactiveStrategy> run_away() { return std::make_unique<RunAway>(); }

std::unique_ptr<ReactiveStrategy> scripted_path(TimedPath script) {
  return std::make_unique<ScriptedPath>(std::move(script));
}

std::unique_ptr<LocallyFiniteStrategy> scripted_committer(TimedPath script, double window) {
  return std::make_unique<ScriptedCommitter>(std::move(script), window);
}

TimedPath circle_runner_path(const Space& disc, double horizon, double step) {
  if (disc.kind() != Space::Kind::ClosedDisc) {
    throw DomainError("boundary runner needs a closed disc");
  }
  double r = disc.radius();
  std::vector<TimedPoint> samples;
  for (double t = 0.0; t < horizon; t += step) {
    samples.push_back({t, pt(r * std::cos(t / r), r * std::sin(t / r))});
  }
  samples.push_back({horizon, pt(r * std::cos(horizon / r), r * std::sin(horizon / r))});
  return TimedPath(disc, std::move(samples));
}

TimedPath random_lipschitz_path(const Space& space, const Point& start, double horizon,
                                double step, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::vector<TimedPoint> samples;
  Point pos = start;
  Point target = random_point_in(space, rng);
  double speed = 0.3 + 0.7 * u01(rng);
  double until = 0.2 + 0.8 * u01(rng);
  samples.push_back({0.0, pos});
  double t = 0.0;
  long n = std::lround(std::ceil(horizon / step));
  for (long k = 1; k <= n; ++k) {
    double tk = std::min(static_cast<double>(k) * step, horizon);
    if (tk <= t) continue;
    if (t >= until || space.distance(pos, target) <= kTieTol) {
      target = random_point_in(space, rng);
      speed = 0.3 + 0.7 * u01(rng);
      until = t + 0.2 + 0.8 * u01(rng);
    }
    pos = space.geodesic_step(pos, target, speed * (tk - t));
    t = tk;
    samples.push_back({t, pos});
  }
  return TimedPath(space, std::move(samples));
}

TimedPath edge_dash_student_path(const Space& box, const Point& start, const std::string& side,
                                 double horizon, double step, std::uint64_t seed) {
  if (box.kind() != Space::Kind::EuclideanBox) {
    throw DomainError("student paths need a Euclidean box");
  }
  Frame frame = side_frame(side);
  double w = box.halfwidth();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<TimedPoint> samples;
  Point pos = start;
  samples.push_back({0.0, pos});
  double t = 0.0;

  // Wander inside, away from the guarded edge.
  double wander = 0.2 + u01(rng) * std::min(1.5, 0.3 * horizon);
  Point target = random_point_in(box, rng);
  long wn = std::lround(std::ceil(wander / step));
  for (long k = 1; k <= wn; ++k) {
    double tk = std::min(static_cast<double>(k) * step, wander);
    if (tk <= t) continue;
    if (box.distance(pos, target) <= kTieTol) target = random_point_in(box, rng);
    pos = box.geodesic_step(pos, target, tk - t);
    t = tk;
    samples.push_back({t, pos});
  }

  // Dash straight to a point of the guarded edge.
  Point goal = frame.inv(pt(-w, (2.0 * u01(rng) - 1.0) * 0.9 * w));
  while (box.distance(pos, goal) > 0.0 && t < horizon - step / 2) {
    double left = box.distance(pos, goal);
    double dt = std::min(step, horizon - t);
    if (left <= dt) {
      t += left;
      pos = goal;
    } else {
      pos = box.geodesic_step(pos, goal, dt);
      t += dt;
    }
    samples.push_back({t, pos});
  }

  if (t < horizon) samples.push_back({horizon, pos});
  return TimedPath(box, std::move(samples));
}

TimedPath race_opponent_path(double wait, double bulge, double speed, double horizon,
                             double step) {
  if (!(speed > 0.0) || speed > 1.0) throw DomainError("race opponent speed must be in (0, 1]");
  if (wait < 0.0) throw DomainError("race opponent wait must be >= 0");
  Space space = Space::half_plane_race();

  // Dense arc from (1,0) to the origin bulging into the upper half-plane.
  const int kDense = 2000;
  std::vector<Point> arc;
  arc.reserve(kDense + 1);
  for (int i = 0; i <= kDense; ++i) {
    double u = static_cast<double>(i) / kDense;
    double r = 1.0 - u;
    double th = 4.0 * bulge * u * (1.0 - u);
    arc.push_back(pt(r * std::cos(th), r * std::sin(th)));
  }

  std::vector<TimedPoint> samples;
  samples.push_back({0.0, arc.front()});
  double t = wait;
  if (wait > 0.0) samples.push_back({wait, arc.front()});
  double since_emit = 0.0;
  for (int i = 1; i <= kDense; ++i) {
    double chord = std::hypot(arc[i].x - arc[i - 1].x, arc[i].y - arc[i - 1].y);
    t += chord / speed;
    since_emit += chord / speed;
    if (since_emit >= step || i == kDense) {
      samples.push_back({t, arc[i]});
      since_emit = 0.0;
    }
  }
  if (t > horizon) {
    throw UsageError("race opponent does not arrive within the horizon (needs " +
                     std::to_string(t) + ")");
  }
  if (t < horizon) samples.push_back({horizon, arc.back()});
  return TimedPath(space, std::move(samples));
}

}  // namespace pursuitlab
