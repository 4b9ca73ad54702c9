#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "pursuitlab/errors.h"
#include "pursuitlab/strategies.h"

using namespace pursuitlab;

namespace {

History make_history(const Space& space, const TimedPath& own, const TimedPath& opp,
                     double now, double opp_horizon) {
  return History{space, PathView(own).prefix(now), PathView(opp).prefix(opp_horizon), now};
}

// Runs a committing strategy against a fixed opponent path, feeding it the
// opponent's prefix up to each commitment time (the engine's view rule).
TimedPath drive_committer(LocallyFiniteStrategy& strat, const Space& space, const Point& start,
                          const TimedPath& opp, double horizon, int max_commits) {
  std::vector<TimedPoint> own{{0.0, start}};
  for (int k = 0; k < max_commits && own.back().t < horizon; ++k) {
    TimedPath own_path(space, own);
    double now = own_path.horizon();
    History h{space, PathView(own_path), PathView(opp).prefix(std::min(now, opp.horizon())), now};
    PathSegment seg = strat.commit(h);
    for (std::size_t i = 1; i < seg.samples.size(); ++i) own.push_back(seg.samples[i]);
  }
  return TimedPath(space, own);
}

// Runs a reactive strategy against a fixed opponent path with the
// continuum view rule (opponent visible up to the decision time).
TimedPath drive_reactor(ReactiveStrategy& strat, const Space& space, const Point& start,
                        const TimedPath& opp, double horizon, double dt) {
  std::vector<TimedPoint> own{{0.0, start}};
  double t = 0.0;
  while (t < horizon - 1e-12) {
    double next_t = (horizon - t <= dt) ? horizon : t + dt;
    TimedPath own_path(space, own);
    History h{space, PathView(own_path), PathView(opp).prefix(t), t};
    Point next = strat.next_position(h, next_t - t);
    t = next_t;
    own.push_back({t, next});
  }
  return TimedPath(space, own);
}

TimedPath hold_path(const Space& space, const Point& p, double horizon) {
  return TimedPath(space, {{0.0, p}, {horizon, p}});
}

}  // namespace

TEST_CASE("perpendicular dash: worked examples and side rule") {
  Space disc = Space::closed_disc(1.0);
  TimedPath own(disc, {{0.0, pt(0.3, 0.0)}});

  SUBCASE("lion on the radius line, tie break +1 dashes counterclockwise") {
    auto strat = besicovitch(0.5, +1);
    TimedPath lion(disc, {{0.0, pt(0.1, 0.0)}});
    PathSegment seg = strat->commit(make_history(disc, own, lion, 0.0, 0.0));
    REQUIRE(seg.samples.size() == 2);
    CHECK(seg.samples[0].t == 0.0);
    CHECK(seg.samples[0].p.x == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(seg.samples[1].t == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(seg.samples[1].p.x == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(seg.samples[1].p.y == doctest::Approx(0.5).epsilon(1e-12));
    double r1 = std::hypot(seg.samples[1].p.x, seg.samples[1].p.y);
    CHECK(r1 == doctest::Approx(0.5830951894845301).epsilon(1e-12));
  }
  SUBCASE("tie break -1 dashes clockwise") {
    auto strat = besicovitch(0.5, -1);
    TimedPath lion(disc, {{0.0, pt(0.1, 0.0)}});
    PathSegment seg = strat->commit(make_history(disc, own, lion, 0.0, 0.0));
    CHECK(seg.samples[1].p.y == doctest::Approx(-0.5).epsilon(1e-12));
  }
  SUBCASE("lion below the line: dash up") {
    auto strat = besicovitch(0.5);
    TimedPath lion(disc, {{0.0, pt(0.5, -0.2)}});
    PathSegment seg = strat->commit(make_history(disc, own, lion, 0.0, 0.0));
    CHECK(seg.samples[1].p.y == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("lion above the line: dash down") {
    auto strat = besicovitch(0.5);
    TimedPath lion(disc, {{0.0, pt(0.1, 0.2)}});
    PathSegment seg = strat->commit(make_history(disc, own, lion, 0.0, 0.0));
    CHECK(seg.samples[1].p.y == doctest::Approx(-0.5).epsilon(1e-12));
  }
}

TEST_CASE("perpendicular dash: radius recursion and containment bound") {
  Space disc = Space::closed_disc(1.0);
  auto strat = besicovitch(0.7, +1);
  TimedPath lion = hold_path(disc, pt(0.1, 0.0), 100.0);
  const int n = 1500;
  TimedPath path = drive_committer(*strat, disc, pt(0.3, 0.0), lion, 1e9, n);

  REQUIRE(path.samples().size() == static_cast<std::size_t>(n + 1));
  // r_k^2 = r_0^2 + sum_{j<=k} (c/j)^2, exactly by construction.
  double expect2 = 0.09;
  double sup = 0.9465821109421152;  // sqrt(0.3^2 + 0.7^2 * pi^2/6)
  double max_r = 0.0;
  for (int k = 1; k <= n; ++k) {
    double c_k = 0.7 / k;
    expect2 += c_k * c_k;
    const Point& p = path.samples()[k].p;
    double r2 = p.x * p.x + p.y * p.y;
    CHECK(r2 == doctest::Approx(expect2).epsilon(1e-9));
    max_r = std::max(max_r, std::sqrt(r2));
  }
  CHECK(max_r < sup);
  CHECK(sup - max_r < 1e-3);  // the dashes approach the bound

  SUBCASE("dash durations are the harmonic sequence") {
    CHECK(path.samples()[1].t == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(path.samples()[2].t - path.samples()[1].t == doctest::Approx(0.35).epsilon(1e-12));
    CHECK(path.samples()[3].t - path.samples()[2].t ==
          doctest::Approx(0.7 / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("perpendicular dash: rejects starts too close to the boundary") {
  Space disc = Space::closed_disc(1.0);
  auto strat = besicovitch(0.7, +1);
  TimedPath own(disc, {{0.0, pt(0.8, 0.0)}});
  TimedPath lion(disc, {{0.0, pt(0.0, 0.0)}});
  CHECK_THROWS_AS(strat->commit(make_history(disc, own, lion, 0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(besicovitch(0.0), DomainError);
}

TEST_CASE("radius lion: chord steps along the ray") {
  Space disc = Space::closed_disc(1.0);

  SUBCASE("steps out along the radius at full speed") {
    auto lion = radius_lion();
    TimedPath own(disc, {{0.0, pt(0.0, 0.0)}});
    TimedPath man(disc, {{0.0, pt(1.0, 0.0)}});
    Point out = lion->next_position(make_history(disc, own, man, 0.0, 0.0), 0.5);
    CHECK(out.x == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(out.y == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("never steps past the man") {
    auto lion = radius_lion();
    TimedPath own(disc, {{0.0, pt(0.0, 0.3)}});
    TimedPath man(disc, {{0.0, pt(0.0, 0.2)}});
    Point out = lion->next_position(make_history(disc, own, man, 0.0, 0.0), 0.5);
    CHECK(out.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(out.y == doctest::Approx(0.2).epsilon(1e-15));
  }
  SUBCASE("ray out of reach: heads for its nearest point") {
    auto lion = radius_lion();
    TimedPath own(disc, {{0.0, pt(0.5, 0.0)}});
    TimedPath man(disc, {{0.0, pt(0.0, 0.8)}});
    Point out = lion->next_position(make_history(disc, own, man, 0.0, 0.0), 0.1);
    CHECK(out.x == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(out.y == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("always within the speed budget and inside the man's radius") {
    auto lion = radius_lion();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int i = 0; i < 400; ++i) {
      Point l = pt(u(rng), u(rng));
      Point m = pt(u(rng), u(rng));
      double dt = (i % 2) ? 1e-3 : 0.05;
      TimedPath own(disc, {{0.0, l}});
      TimedPath man(disc, {{0.0, m}});
      Point out = lion->next_position(make_history(disc, own, man, 0.0, 0.0), dt);
      CHECK(std::hypot(out.x - l.x, out.y - l.y) <= dt * (1 + 1e-9) + 1e-15);
      CHECK(std::hypot(out.x, out.y) <= std::max(std::hypot(l.x, l.y), std::hypot(m.x, m.y)) + 1e-12);
    }
  }
}

TEST_CASE("radius lion: tracks the boundary runner's radius as sin(t)") {
  Space disc = Space::closed_disc(1.0);
  TimedPath runner = circle_runner_path(disc, 1.3, 1e-3);
  auto lion = radius_lion();
  TimedPath chase = drive_reactor(*lion, disc, pt(0.0, 0.0), runner, 1.2, 1e-3);
  for (int k = 1; k <= 12; ++k) {
    double t = std::min(0.1 * k, chase.horizon());
    double r = std::hypot(chase.eval(t).x, chase.eval(t).y);
    CHECK(std::abs(r - std::sin(t)) <= 5e-3);
  }
}

TEST_CASE("pursuit lion: closes the geodesic distance at full speed") {
  Space disc = Space::closed_disc(1.0);
  auto lion = pursuit_lion();
  TimedPath own(disc, {{0.0, pt(0.0, 0.0)}});
  TimedPath man(disc, {{0.0, pt(0.8, 0.0)}});
  Point out = lion->next_position(make_history(disc, own, man, 0.0, 0.0), 0.25);
  CHECK(out.x == doctest::Approx(0.25).epsilon(1e-12));

  Space graph = Space::metric_graph(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  auto lion2 = pursuit_lion();
  TimedPath gown(graph, {{0.0, graph_pt(0, 0.25)}});
  TimedPath gman(graph, {{0.0, graph_pt(1, 0.75)}});
  Point gout = lion2->next_position(make_history(graph, gown, gman, 0.0, 0.0), 0.5);
  double before = graph.distance(graph_pt(0, 0.25), graph_pt(1, 0.75));
  double after = graph.distance(gout, graph_pt(1, 0.75));
  CHECK(after == doctest::Approx(before - 0.5).epsilon(1e-12));
}

TEST_CASE("componentwise sweep: snaps each coordinate and then copies it") {
  Space space = Space::linf_sum(Space::closed_disc(1.0), Space::interval(0.0, 1.0));
  Point start = sum_pt(pt(0.0, 0.0), pt(0.0));
  Point target = sum_pt(pt(0.3, 0.4), pt(0.9));
  TimedPath man = hold_path(space, target, 3.0);
  auto lion = linf_sweep_lion();
  TimedPath swept = drive_reactor(*lion, space, start, man, 1.5, 0.11);

  // Disc coordinate (distance 0.5) locks by the fifth step, interval
  // coordinate (distance 0.9) by the ninth; both copies are then exact.
  const Point& at5 = swept.samples()[5].p;
  CHECK(at5.parts[0].x == 0.3);
  CHECK(at5.parts[0].y == 0.4);
  const Point& at9 = swept.samples()[9].p;
  CHECK(at9.parts[1].x == 0.9);
  const Point& last = swept.samples().back().p;
  CHECK(last.parts[0].x == 0.3);
  CHECK(last.parts[1].x == 0.9);

  SUBCASE("needs a product space") {
    Space disc = Space::closed_disc(1.0);
    auto l2 = linf_sweep_lion();
    TimedPath own(disc, {{0.0, pt(0.0, 0.0)}});
    TimedPath opp(disc, {{0.0, pt(0.5, 0.0)}});
    CHECK_THROWS_AS(l2->next_position(make_history(disc, own, opp, 0.0, 0.0), 0.1),
                    DomainError);
  }
}

TEST_CASE("componentwise sweep: locked coordinates stay within one step") {
  Space space = Space::linf_box(1.0);
  Point start = pt(-1.0, -1.0);
  TimedPath man = random_lipschitz_path(space, pt(0.5, 0.2), 3.2, 1e-2, 42);
  auto lion = linf_sweep_lion();
  const double dt = 0.05;
  TimedPath swept = drive_reactor(*lion, space, start, man, 3.0, dt);

  bool locked[2] = {false, false};
  for (const TimedPoint& s : swept.samples()) {
    Point m = man.eval(s.t);
    double gap[2] = {std::abs(s.p.x - m.x), std::abs(s.p.y - m.y)};
    for (int i = 0; i < 2; ++i) {
      if (locked[i]) CHECK(gap[i] <= dt + 1e-12);
      if (gap[i] <= dt) locked[i] = true;
    }
  }
  CHECK(locked[0]);
  CHECK(locked[1]);
}

TEST_CASE("escape device on a disc-interval sum: probe, run, dash") {
  Space space = Space::linf_sum(Space::closed_disc(1.0), Space::interval(0.0, 1.0));
  Point start = sum_pt(pt(0.0, 0.0), pt(0.0));

  SUBCASE("glued lion sends the run to the first target") {
    auto man = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    // Lion's disc coordinate sits exactly on the man's during the probe.
    std::vector<TimedPoint> lions;
    for (int k = 0; k <= 5; ++k) {
      lions.push_back({0.01 * k, sum_pt(pt(0.0, 0.0), pt(1.0 - 0.01 * k))});
    }
    TimedPath lion(space, lions);
    TimedPath own(space, {{0.0, start}});

    PathSegment probe = man->commit(make_history(space, own, lion, 0.0, 0.0));
    REQUIRE(probe.samples.size() == 2);
    CHECK(probe.samples[1].t == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(space.distance(probe.samples[1].p, start) == 0.0);

    TimedPath own2(space, {{0.0, start}, {0.05, start}});
    PathSegment run = man->commit(make_history(space, own2, lion, 0.05, 0.05));
    REQUIRE(run.samples.size() == 2);
    CHECK(run.samples[1].t == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(run.samples[1].p.parts[0].x == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(run.samples[1].p.parts[0].y == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(run.samples[1].p.parts[1].x == 0.0);

    // Third commitment dashes perpendicular to the disc radius with the
    // interval coordinate held.
    std::vector<TimedPoint> own3_s = {{0.0, start}, {0.05, start},
                                      {0.55, sum_pt(pt(-0.5, 0.0), pt(0.0))}};
    TimedPath own3(space, own3_s);
    TimedPath lion2 = hold_path(space, sum_pt(pt(0.2, 0.0), pt(1.0)), 1.0);
    PathSegment dash = man->commit(make_history(space, own3, lion2, 0.55, 0.55));
    CHECK(dash.samples[1].t == doctest::Approx(1.05).epsilon(1e-12));
    CHECK(dash.samples[1].p.parts[0].x == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(dash.samples[1].p.parts[0].y == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(dash.samples[1].p.parts[1].x == 0.0);
  }

  SUBCASE("free lion sends the run to the second target") {
    auto man = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    TimedPath lion = hold_path(space, sum_pt(pt(0.2, 0.0), pt(1.0)), 1.0);
    TimedPath own(space, {{0.0, start}});
    man->commit(make_history(space, own, lion, 0.0, 0.0));
    TimedPath own2(space, {{0.0, start}, {0.05, start}});
    PathSegment run = man->commit(make_history(space, own2, lion, 0.05, 0.05));
    CHECK(run.samples[1].p.parts[0].x == doctest::Approx(0.5).epsilon(1e-12));
  }

  SUBCASE("rejects spaces without a leading disc") {
    auto man = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    Space flipped = Space::linf_sum(Space::interval(0.0, 1.0), Space::closed_disc(1.0));
    Point s2 = sum_pt(pt(0.0), pt(0.0, 0.0));
    TimedPath own(flipped, {{0.0, s2}});
    TimedPath lion(flipped, {{0.0, s2}});
    CHECK_THROWS_AS(man->commit(make_history(flipped, own, lion, 0.0, 0.0)), DomainError);
  }
}

TEST_CASE("escape device on the box: pole runs picked by the lion's coordinate") {
  Space box = Space::linf_box(1.0);

  SUBCASE("lion above: run to the south pole") {
    auto man = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    TimedPath own(box, {{0.0, pt(0.3, 0.2)}});
    TimedPath lion(box, {{0.0, pt(0.3, 0.9)}});
    PathSegment seg = man->commit(make_history(box, own, lion, 0.0, 0.0));
    CHECK(seg.samples[1].t == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(seg.samples[1].p.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(seg.samples[1].p.y == doctest::Approx(-1.0).epsilon(1e-15));
  }
  SUBCASE("lion below: run to the north pole") {
    auto man = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    TimedPath own(box, {{0.0, pt(0.3, 0.2)}});
    TimedPath lion(box, {{0.0, pt(0.3, -0.5)}});
    PathSegment seg = man->commit(make_history(box, own, lion, 0.0, 0.0));
    CHECK(seg.samples[1].t == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(seg.samples[1].p.y == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("at a pole the candidates rotate to the other axis") {
    auto man = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    TimedPath own(box, {{0.0, pt(0.0, -1.0)}});
    TimedPath lion(box, {{0.0, pt(0.5, 0.3)}});
    PathSegment seg = man->commit(make_history(box, own, lion, 0.0, 0.0));
    CHECK(seg.samples[1].p.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(seg.samples[1].p.y == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("coordinate tie: probe, then the ascent detector picks the pole") {
    auto man = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    TimedPath own(box, {{0.0, pt(0.3, 0.2)}});
    TimedPath lion0 = hold_path(box, pt(0.9, 0.2), 1.0);
    PathSegment probe = man->commit(make_history(box, own, lion0, 0.0, 0.0));
    CHECK(probe.samples[1].t == doctest::Approx(0.05).epsilon(1e-15));
    CHECK(probe.samples[1].p.x == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(probe.samples[1].p.y == doctest::Approx(0.2).epsilon(1e-15));

    // Lion rides the identity ascent during the probe: south pole.
    std::vector<TimedPoint> ride;
    for (int k = 0; k <= 5; ++k) ride.push_back({0.01 * k, pt(0.9, 0.2 + 0.01 * k)});
    TimedPath lion1(box, ride);
    TimedPath own2(box, {{0.0, pt(0.3, 0.2)}, {0.05, pt(0.25, 0.2)}});
    PathSegment run = man->commit(make_history(box, own2, lion1, 0.05, 0.05));
    CHECK(run.samples[1].p.y == doctest::Approx(-1.0).epsilon(1e-15));

    // A lion that stays put instead: north pole.
    auto man2 = escape_underneath_man(0.05, pt(-0.5, 0.0), pt(0.5, 0.0), 0.5);
    man2->commit(make_history(box, own, lion0, 0.0, 0.0));
    PathSegment run2 = man2->commit(make_history(box, own2, lion0, 0.05, 0.05));
    CHECK(run2.samples[1].p.y == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("porter: waits on slack and runs when a corner draws level") {
  Space box = Space::euclidean_box(1.0);

  SUBCASE("symmetric student: wait for the shared slack") {
    auto p = porter("left");
    TimedPath own(box, {{0.0, pt(-1.0, 0.0)}});
    TimedPath student(box, {{0.0, pt(0.0, 0.0)}});
    PathSegment seg = p->commit(make_history(box, own, student, 0.0, 0.0));
    REQUIRE(seg.samples.size() == 2);
    CHECK(seg.samples[1].t == doctest::Approx(0.41421356237309515).epsilon(1e-12));
    CHECK(seg.samples[1].p.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(seg.samples[1].p.y == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("level at the top corner: run toward it for half the other slack") {
    auto p = porter("left");
    TimedPath own(box, {{0.0, pt(-1.0, 0.5)}});
    TimedPath student(box, {{0.0, pt(-0.7, 0.6)}});
    PathSegment seg = p->commit(make_history(box, own, student, 0.0, 0.0));
    CHECK(seg.samples[1].t == doctest::Approx(0.0639410298049854).epsilon(1e-9));
    CHECK(seg.samples[1].p.x == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(seg.samples[1].p.y == doctest::Approx(0.5 + 0.0639410298049854).epsilon(1e-9));
  }
  SUBCASE("the top-edge porter sees the same game rotated") {
    auto p = porter("top");
    TimedPath own(box, {{0.0, pt(0.5, 1.0)}});
    TimedPath student(box, {{0.0, pt(0.6, 0.7)}});
    PathSegment seg = p->commit(make_history(box, own, student, 0.0, 0.0));
    CHECK(seg.samples[1].t == doctest::Approx(0.0639410298049854).epsilon(1e-9));
    CHECK(seg.samples[1].p.x == doctest::Approx(0.5 + 0.0639410298049854).epsilon(1e-9));
    CHECK(seg.samples[1].p.y == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("faults when off its edge or when domination is lost") {
    auto p = porter("left");
    TimedPath own(box, {{0.0, pt(-0.5, 0.0)}});
    TimedPath student(box, {{0.0, pt(0.5, 0.0)}});
    CHECK_THROWS_AS(p->commit(make_history(box, own, student, 0.0, 0.0)), StrategyFaultError);

    auto p2 = porter("left");
    TimedPath own2(box, {{0.0, pt(-1.0, 0.0)}});
    TimedPath close(box, {{0.0, pt(-0.9, 0.95)}});
    CHECK_THROWS_AS(p2->commit(make_history(box, own2, close, 0.0, 0.0)), StrategyFaultError);
    CHECK_THROWS_AS(porter("diagonal"), DomainError);
  }
}

TEST_CASE("porter: holds corner domination against a dashing student") {
  Space box = Space::euclidean_box(1.0);
  TimedPath student = edge_dash_student_path(box, pt(0.5, 0.0), "left", 6.0, 1e-3, 3);
  auto p = porter("left");

  std::vector<TimedPoint> own{{0.0, pt(-1.0, 0.0)}};
  bool met = false;
  for (int k = 0; k < 100000 && own.back().t < 5.9; ++k) {
    TimedPath own_path(box, own);
    double now = own_path.horizon();
    Point s = student.eval(now);
    if (box.distance(own.back().p, s) <= 1e-3) {
      met = true;
      break;
    }
    History h{box, PathView(own_path), PathView(student).prefix(now), now};
    PathSegment seg = p->commit(h);
    for (std::size_t i = 1; i < seg.samples.size(); ++i) own.push_back(seg.samples[i]);

    double t2 = own.back().t;
    Point pe = own.back().p;
    Point s2 = student.eval(std::min(t2, student.horizon()));
    double top = std::hypot(s2.x + 1.0, s2.y - 1.0) - (1.0 - pe.y);
    double bot = std::hypot(s2.x + 1.0, s2.y + 1.0) - (pe.y + 1.0);
    CHECK(top >= -1e-9);
    CHECK(bot >= -1e-9);
  }
  CHECK(met);  // the porter is standing on the student's landing point
}

TEST_CASE("race: responder closed form against a waiting opponent") {
  Space space = Space::half_plane_race();
  TimedPath waiter(space, {{0.0, pt(1.0, 0.0)}, {2.0, pt(1.0, 0.0)}});
  TimedPath resp = race_response_path(waiter, 1e-3);

  // With r fixed at 1 the closed form is s = 1 - 2t/3, angle t/3. Off-grid
  // times interpolate between samples, hence the absolute tolerance.
  for (double t : {0.3, 0.6, 1.0, 1.45}) {
    double s = 1.0 - 2.0 * t / 3.0;
    double phi = t / 3.0;
    Point got = resp.eval(t);
    CHECK(std::abs(got.x - s * std::cos(phi)) <= 2e-6);
    CHECK(std::abs(got.y - s * std::sin(phi)) <= 2e-6);
  }
  // Arrival at t = 3/2, then hold.
  Point end = resp.eval(1.5 + 1e-6);
  CHECK(end.x == 0.0);
  CHECK(end.y == 0.0);
  CHECK(resp.eval(2.0).x == 0.0);

  SUBCASE("the reactive form matches one step of the same formula") {
    auto a = race_a();
    TimedPath own(space, {{0.0, pt(1.0, 0.0)}});
    Point out = a->next_position(make_history(space, own, waiter, 0.0, 0.0), 0.1);
    double s = 1.0 - 2.0 * 0.1 / 3.0;
    CHECK(out.x == doctest::Approx(s * std::cos(0.1 + s - 1.0)).epsilon(1e-12));
    CHECK(out.y == doctest::Approx(s * std::sin(0.1 + s - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("race: responder stays strictly closer to the target and wins") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    double wait = 0.05 + 0.1 * seed;
    double bulge = 0.3 + 0.2 * seed;
    TimedPath opp = race_opponent_path(wait, bulge, 1.0, 4.0, 1e-3);
    TimedPath resp = race_response_path(opp, 1e-3);

    // B's arrival: first sample at the origin.
    double b_arrival = opp.horizon();
    for (const TimedPoint& s : opp.samples()) {
      if (std::hypot(s.p.x, s.p.y) <= 1e-12) {
        b_arrival = s.t;
        break;
      }
    }
    // A's arrival: first response sample at the origin.
    double a_arrival = resp.horizon();
    for (const TimedPoint& s : resp.samples()) {
      if (s.t > 0.0 && std::hypot(s.p.x, s.p.y) == 0.0) {
        a_arrival = s.t;
        break;
      }
    }
    CHECK(a_arrival < b_arrival);

    // Strict radial dominance at every pre-arrival sample.
    for (const TimedPoint& s : resp.samples()) {
      if (s.t <= 0.0 || s.t >= a_arrival) continue;
      double sa = std::hypot(s.p.x, s.p.y);
      double rb = std::hypot(opp.eval(s.t).x, opp.eval(s.t).y);
      CHECK(sa < rb);
    }
  }

  SUBCASE("opponents must start at (1, 0)") {
    Space space = Space::half_plane_race();
    TimedPath bad(space, {{0.0, pt(0.5, 0.5)}, {1.0, pt(0.5, 0.5)}});
    CHECK_THROWS_AS(race_response_path(bad, 1e-3), DomainError);
  }
}

TEST_CASE("constant and scripted strategies follow their inputs") {
  Space disc = Space::closed_disc(1.0);
  auto c = constant();
  TimedPath own(disc, {{0.0, pt(0.2, 0.1)}});
  TimedPath opp(disc, {{0.0, pt(-0.5, 0.0)}});
  Point out = c->next_position(make_history(disc, own, opp, 0.0, 0.0), 0.1);
  CHECK(out.x == 0.2);
  CHECK(out.y == 0.1);

  TimedPath script = circle_runner_path(disc, 2.0, 1e-2);
  auto sp = scripted_path(script);
  TimedPath sown(disc, {{0.0, pt(1.0, 0.0)}});
  Point first = sp->next_position(make_history(disc, sown, opp, 0.0, 0.0), 0.5);
  Point expect = script.eval(0.5);
  CHECK(first.x == expect.x);
  CHECK(first.y == expect.y);

  SUBCASE("the committing form releases the script in windows") {
    auto sc = scripted_committer(script, 0.25);
    PathSegment seg = sc->commit(make_history(disc, sown, opp, 0.0, 0.0));
    REQUIRE(seg.samples.size() >= 2);
    CHECK(seg.samples.front().t == 0.0);
    CHECK(seg.samples.back().t == doctest::Approx(0.25).epsilon(1e-15));
    Point se = script.eval(0.25);
    CHECK(seg.samples.back().p.x == se.x);
    CHECK(seg.samples.back().p.y == se.y);
    // Interior samples are the script's own.
    for (const TimedPoint& s : seg.samples) {
      Point at = script.eval(s.t);
      CHECK(disc.distance(s.p, at) <= 1e-12);
    }
  }
  SUBCASE("past the script horizon the committer holds position") {
    TimedPath tiny(disc, {{0.0, pt(0.3, 0.0)}, {0.2, pt(0.4, 0.0)}});
    auto sc = scripted_committer(tiny, 0.5);
    TimedPath town(disc, {{0.0, pt(0.3, 0.0)}});
    PathSegment s1 = sc->commit(make_history(disc, town, opp, 0.0, 0.0));
    CHECK(s1.samples.back().t == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(s1.samples.back().p.x == doctest::Approx(0.4).epsilon(1e-15));
    REQUIRE(s1.samples.size() == 3);  // start, script end, hold
  }
}

TEST_CASE("strategies are blind to the opponent's future") {
  Space disc = Space::closed_disc(1.0);
  // Two opponent paths equal on [0, 0.5] and wildly different after.
  std::vector<TimedPoint> common = {{0.0, pt(0.5, 0.0)}, {0.5, pt(0.5, 0.5)}};
  std::vector<TimedPoint> fut_a = common;
  fut_a.push_back({1.5, pt(-0.5, 0.5)});
  std::vector<TimedPoint> fut_b = common;
  fut_b.push_back({1.5, pt(0.5, -0.5)});
  TimedPath opp_a(disc, fut_a);
  TimedPath opp_b(disc, fut_b);
  TimedPath own(disc, {{0.0, pt(0.0, 0.0)}, {0.5, pt(0.1, 0.0)}});

  auto check_same = [&](ReactiveStrategy& s1, ReactiveStrategy& s2) {
    Point p1 = s1.next_position(make_history(disc, own, opp_a, 0.5, 0.5), 0.1);
    Point p2 = s2.next_position(make_history(disc, own, opp_b, 0.5, 0.5), 0.1);
    CHECK(p1.x == p2.x);
    CHECK(p1.y == p2.y);
  };
  auto r1 = radius_lion();
  auto r2 = radius_lion();
  check_same(*r1, *r2);
  auto p1 = pursuit_lion();
  auto p2 = pursuit_lion();
  check_same(*p1, *p2);

  auto b1 = besicovitch(0.4);
  auto b2 = besicovitch(0.4);
  PathSegment s1 = b1->commit(make_history(disc, own, opp_a, 0.5, 0.5));
  PathSegment s2 = b2->commit(make_history(disc, own, opp_b, 0.5, 0.5));
  REQUIRE(s1.samples.size() == s2.samples.size());
  CHECK(s1.samples[1].t == s2.samples[1].t);
  CHECK(s1.samples[1].p.x == s2.samples[1].p.x);
  CHECK(s1.samples[1].p.y == s2.samples[1].p.y);
}

TEST_CASE("path generators produce valid paths") {
  SUBCASE("boundary runner has unit speed and the right radius") {
    Space disc = Space::closed_disc(2.0);
    TimedPath run = circle_runner_path(disc, 3.0, 1e-2);
    CHECK(run.horizon() == 3.0);
    for (double t = 0.0; t <= 3.0; t += 0.37) {
      CHECK(std::hypot(run.eval(t).x, run.eval(t).y) == doctest::Approx(2.0).epsilon(1e-9));
    }
  }
  SUBCASE("random wanderers stay in the space and vary by seed") {
    Space spaces[] = {Space::closed_disc(1.0), Space::linf_box(1.0),
                      Space::linf_sum(Space::closed_disc(1.0), Space::interval(0.0, 1.0))};
    Point starts[] = {pt(0.0, 0.0), pt(0.0, 0.0), sum_pt(pt(0.0, 0.0), pt(0.5))};
    for (int i = 0; i < 3; ++i) {
      TimedPath w1 = random_lipschitz_path(spaces[i], starts[i], 2.0, 1e-2, 11);
      TimedPath w2 = random_lipschitz_path(spaces[i], starts[i], 2.0, 1e-2, 12);
      CHECK(w1.horizon() == 2.0);
      CHECK(spaces[i].distance(w1.eval(2.0), w2.eval(2.0)) > 1e-6);
    }
  }
  SUBCASE("students end holding a point of the guarded edge") {
    Space box = Space::euclidean_box(1.0);
    for (std::uint64_t seed : {1ull, 2ull, 9ull}) {
      TimedPath s = edge_dash_student_path(box, pt(0.5, 0.0), "left", 6.0, 1e-3, seed);
      Point end = s.eval(6.0);
      CHECK(end.x == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(std::abs(end.y) <= 0.9 + 1e-12);
    }
  }
  SUBCASE("race opponents trace a valid arc to the origin") {
    TimedPath opp = race_opponent_path(0.2, 0.9, 0.8, 4.0, 1e-3);
    CHECK(opp.eval(0.0).x == 1.0);
    CHECK(std::hypot(opp.eval(4.0).x, opp.eval(4.0).y) == 0.0);
    CHECK_THROWS_AS(race_opponent_path(0.0, 0.5, 1.2, 4.0, 1e-3), DomainError);
    CHECK_THROWS_AS(race_opponent_path(0.0, 0.5, 0.5, 1.0, 1e-3), UsageError);
  }
}
