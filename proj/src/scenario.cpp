#include "pursuitlab/scenario.h"

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pursuitlab/analysis.h"
#include "pursuitlab/errors.h"
#include "pursuitlab/io.h"
#include "pursuitlab/solver.h"
#include "pursuitlab/strategies.h"

namespace pursuitlab {
namespace {

using nlohmann::json;

std::string sub(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw UsageError(where.empty() ? what : where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(where, std::string("missing required field '") + key + "'");
  return *it;
}

// Numeric scenario fields are decimal strings; bare JSON numbers are also
// accepted on input.
double to_number(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    errno = 0;
    char* end = nullptr;
    double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
      bad(where, "'" + s + "' is not a decimal number");
    return x;
  }
  bad(where, "expected a decimal string");
}

long to_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_number()) bad(where, "expected an integer");
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    errno = 0;
    char* end = nullptr;
    long x = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
      bad(where, "'" + s + "' is not an integer");
    return x;
  }
  bad(where, "expected an integer");
}

std::uint64_t to_seed(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    long long x = v.get<long long>();
    if (x < 0) bad(where, "seed must be non-negative");
    return static_cast<std::uint64_t>(x);
  }
  if (v.is_string()) {
    const std::string& s = v.get_ref<const std::string&>();
    errno = 0;
    char* end = nullptr;
    unsigned long long x = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || s[0] == '-')
      bad(where, "'" + s + "' is not an unsigned integer");
    return x;
  }
  bad(where, "expected an unsigned integer");
}

std::string to_text(const json& v, const std::string& where) {
  if (!v.is_string()) bad(where, "expected a string");
  return v.get<std::string>();
}

double num_field(const json& obj, const char* key, const std::string& where) {
  return to_number(field(obj, key, where), sub(where, key));
}

double num_or(const json& obj, const char* key, const std::string& where, double fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : to_number(*it, sub(where, key));
}

long int_field(const json& obj, const char* key, const std::string& where) {
  return to_integer(field(obj, key, where), sub(where, key));
}

long int_or(const json& obj, const char* key, const std::string& where, long fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : to_integer(*it, sub(where, key));
}

std::string str_field(const json& obj, const char* key, const std::string& where) {
  return to_text(field(obj, key, where), sub(where, key));
}

std::string str_or(const json& obj, const char* key, const std::string& where,
                   const std::string& fallback) {
  auto it = obj.find(key);
  return it == obj.end() ? fallback : to_text(*it, sub(where, key));
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return it.key() == k; }) == allowed.end()) {
      std::ostringstream os;
      os << "unknown field (allowed:";
      for (const char* k : allowed) os << " " << k;
      os << ")";
      bad(sub(where, it.key()), os.str());
    }
  }
}

Point parse_point(const json& v, const std::string& where) {
  if (v.is_array()) {
    if (v.size() == 1) return pt(to_number(v[0], where + "[0]"));
    if (v.size() == 2)
      return pt(to_number(v[0], where + "[0]"), to_number(v[1], where + "[1]"));
    bad(where, "expected 1 or 2 coordinates");
  }
  if (v.is_object() && v.contains("sum")) {
    check_keys(v, {"sum"}, where);
    const json& s = v["sum"];
    if (!s.is_array() || s.size() != 2) bad(sub(where, "sum"), "expected two component points");
    return sum_pt(parse_point(s[0], where + ".sum[0]"), parse_point(s[1], where + ".sum[1]"));
  }
  if (v.is_object() && v.contains("edge")) {
    check_keys(v, {"edge", "offset"}, where);
    return graph_pt(static_cast<int>(int_field(v, "edge", where)),
                    num_field(v, "offset", where));
  }
  bad(where, "expected a coordinate array, {edge, offset}, or {sum: [a, b]}");
}

Space parse_space(const json& v, const std::string& where) {
  if (!v.is_object()) bad(where, "expected a space object with a 'kind'");
  std::string kind = str_field(v, "kind", where);
  try {
    if (kind == "closed_disc") {
      check_keys(v, {"kind", "radius"}, where);
      return Space::closed_disc(num_field(v, "radius", where));
    }
    if (kind == "linf_box") {
      check_keys(v, {"kind", "halfwidth"}, where);
      return Space::linf_box(num_field(v, "halfwidth", where));
    }
    if (kind == "euclidean_box") {
      check_keys(v, {"kind", "halfwidth"}, where);
      return Space::euclidean_box(num_field(v, "halfwidth", where));
    }
    if (kind == "interval") {
      check_keys(v, {"kind", "lo", "hi"}, where);
      return Space::interval(num_field(v, "lo", where), num_field(v, "hi", where));
    }
    if (kind == "linf_sum") {
      check_keys(v, {"kind", "first", "second"}, where);
      return Space::linf_sum(parse_space(field(v, "first", where), sub(where, "first")),
                             parse_space(field(v, "second", where), sub(where, "second")));
    }
    if (kind == "half_plane_race") {
      check_keys(v, {"kind"}, where);
      return Space::half_plane_race();
    }
    if (kind == "metric_graph") {
      check_keys(v, {"kind", "nodes", "edges"}, where);
      const json& ej = field(v, "edges", where);
      if (!ej.is_array() || ej.empty()) bad(sub(where, "edges"), "expected a non-empty array");
      std::vector<GraphEdge> edges;
      for (std::size_t i = 0; i < ej.size(); ++i) {
        std::string ew = sub(where, "edges[" + std::to_string(i) + "]");
        check_keys(ej[i], {"a", "b", "length"}, ew);
        edges.push_back({static_cast<int>(int_field(ej[i], "a", ew)),
                         static_cast<int>(int_field(ej[i], "b", ew)),
                         num_field(ej[i], "length", ew)});
      }
      return Space::metric_graph(static_cast<int>(int_field(v, "nodes", where)),
                                 std::move(edges));
    }
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    bad(where, e.what());
  }
  bad(sub(where, "kind"), "unknown space kind '" + kind +
                              "' (closed_disc, linf_box, euclidean_box, interval, "
                              "linf_sum, half_plane_race, metric_graph)");
}

MoveOrder parse_order(const std::string& s, const std::string& where) {
  if (s == "lion_first") return MoveOrder::LionFirst;
  if (s == "man_first") return MoveOrder::ManFirst;
  bad(where, "expected 'lion_first' or 'man_first'");
}

bool known_strategy(const std::string& id) {
  static const char* kIds[] = {"besicovitch",   "escape_underneath", "porter",
                               "radius_lion",   "pursuit_lion",      "linf_sweep",
                               "race_a",        "constant",          "run_away",
                               "scripted_path"};
  return std::find_if(std::begin(kIds), std::end(kIds),
                      [&](const char* k) { return id == k; }) != std::end(kIds);
}

// True when the strategy plays the committing side: the window-committing
// strategies always do, scripted paths do exactly when they carry a window.
bool commits_windows(const json& player, const std::string& where) {
  std::string id = str_field(player, "strategy", where);
  if (!known_strategy(id))
    bad(sub(where, "strategy"),
        "unknown strategy '" + id +
            "' (besicovitch, escape_underneath, porter, radius_lion, pursuit_lion, "
            "linf_sweep, race_a, constant, run_away, scripted_path)");
  if (id == "besicovitch" || id == "escape_underneath" || id == "porter") return true;
  if (id == "scripted_path")
    return player.contains("params") && player["params"].is_object() &&
           player["params"].contains("window");
  return false;
}

// Ambient values strategy parameters default to.
struct BuildContext {
  Space space;
  double horizon = 1.0;
  double dt = 1e-3;
  std::uint64_t seed = 0;
};

json params_of(const json& player) {
  return player.contains("params") ? player["params"] : json::object();
}

TimedPath build_script(const json& params, const Point& start, const BuildContext& ctx,
                       const std::string& where) {
  std::string gen = str_field(params, "generator", where);
  double step = num_or(params, "step", where, ctx.dt);
  double horizon = num_or(params, "horizon", where, ctx.horizon);
  if (gen == "circle") {
    check_keys(params, {"generator", "step", "horizon", "window"}, where);
    return circle_runner_path(ctx.space, horizon, step);
  }
  if (gen == "random_walk") {
    check_keys(params, {"generator", "step", "horizon", "seed", "window"}, where);
    std::uint64_t seed = params.contains("seed") ? to_seed(params["seed"], sub(where, "seed"))
                                                 : ctx.seed;
    return random_lipschitz_path(ctx.space, start, horizon, step, seed);
  }
  if (gen == "edge_dash") {
    check_keys(params, {"generator", "step", "horizon", "seed", "side", "window"}, where);
    std::uint64_t seed = params.contains("seed") ? to_seed(params["seed"], sub(where, "seed"))
                                                 : ctx.seed;
    return edge_dash_student_path(ctx.space, start, str_field(params, "side", where), horizon,
                                  step, seed);
  }
  if (gen == "race_arc") {
    check_keys(params, {"generator", "step", "horizon", "wait", "bulge", "speed", "window"},
               where);
    return race_opponent_path(num_field(params, "wait", where),
                              num_field(params, "bulge", where),
                              num_field(params, "speed", where), horizon, step);
  }
  bad(sub(where, "generator"),
      "unknown generator '" + gen + "' (circle, random_walk, edge_dash, race_arc)");
}

void check_script_start(const TimedPath& script, const Point& start, const BuildContext& ctx,
                        const std::string& where) {
  if (ctx.space.metric(script.eval(0.0), start) > kEqTol)
    bad(sub(where, "start"),
        "must equal the scripted path's start " + describe(script.eval(0.0)));
}

std::unique_ptr<ReactiveStrategy> make_reactive(const json& player, const Point& start,
                                                const BuildContext& ctx,
                                                const std::string& where) {
  std::string id = str_field(player, "strategy", where);
  json params = params_of(player);
  std::string pw = sub(where, "params");
  if (id == "radius_lion") {
    check_keys(params, {}, pw);
    return radius_lion();
  }
  if (id == "pursuit_lion") {
    check_keys(params, {}, pw);
    return pursuit_lion();
  }
  if (id == "linf_sweep") {
    check_keys(params, {}, pw);
    return linf_sweep_lion();
  }
  if (id == "race_a") {
    check_keys(params, {}, pw);
    return race_a();
  }
  if (id == "constant") {
    check_keys(params, {}, pw);
    return constant();
  }
  if (id == "run_away") {
    check_keys(params, {}, pw);
    return run_away();
  }
  if (id == "scripted_path") {
    TimedPath script = build_script(params, start, ctx, pw);
    check_script_start(script, start, ctx, where);
    return scripted_path(std::move(script));
  }
  bad(sub(where, "strategy"), "'" + id + "' commits windows; it cannot play the reacting side");
}

std::unique_ptr<LocallyFiniteStrategy> make_committer(const json& player, const Point& start,
                                                      const BuildContext& ctx,
                                                      const std::string& where) {
  std::string id = str_field(player, "strategy", where);
  json params = params_of(player);
  std::string pw = sub(where, "params");
  if (id == "besicovitch") {
    check_keys(params, {"scale", "tie_break"}, pw);
    return besicovitch(num_field(params, "scale", pw),
                       static_cast<int>(int_or(params, "tie_break", pw, 1)));
  }
  if (id == "escape_underneath") {
    check_keys(params, {"probe", "first_target", "second_target", "scale", "tie_break"}, pw);
    return escape_underneath_man(
        num_field(params, "probe", pw),
        parse_point(field(params, "first_target", pw), sub(pw, "first_target")),
        parse_point(field(params, "second_target", pw), sub(pw, "second_target")),
        num_field(params, "scale", pw), static_cast<int>(int_or(params, "tie_break", pw, 1)));
  }
  if (id == "porter") {
    check_keys(params, {"side"}, pw);
    return porter(str_field(params, "side", pw));
  }
  if (id == "scripted_path") {
    double window = num_field(params, "window", pw);
    TimedPath script = build_script(params, start, ctx, pw);
    check_script_start(script, start, ctx, where);
    return scripted_committer(std::move(script), window);
  }
  bad(sub(where, "strategy"), "'" + id + "' cannot commit windows");
}

std::string resolve_out(const RunOptions& options, const std::string& rel) {
  std::filesystem::path p(rel);
  if (p.is_absolute() || options.out_dir.empty()) return rel;
  return (std::filesystem::path(options.out_dir) / p).string();
}

void emit(RunOutcome& out, const RunOptions& options, const std::string& rel,
          const std::string& content) {
  std::string path = resolve_out(options, rel);
  std::filesystem::path parent = std::filesystem::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty()) std::filesystem::create_directories(parent, ec);
  write_text_file(path, content);
  out.artifacts.push_back(path);
}

json outputs_of(const json& doc, std::initializer_list<const char*> allowed) {
  if (!doc.contains("outputs")) return json::object();
  const json& o = doc["outputs"];
  check_keys(o, allowed, "outputs");
  for (auto it = o.begin(); it != o.end(); ++it) to_text(*it, sub("outputs", it.key()));
  return o;
}

// --- per-mode preparation (shared by validation and execution) ---

struct PlayPrep {
  GameConfig config;
  bool discrete = false;
  double eps = 0.0;
  MoveOrder order = MoveOrder::LionFirst;
  Role committer_role = Role::Man;
  std::unique_ptr<LocallyFiniteStrategy> committer;
  std::unique_ptr<ReactiveStrategy> reactor;
  std::unique_ptr<ReactiveStrategy> lion_reactive;
  std::unique_ptr<ReactiveStrategy> man_reactive;
};

PlayPrep prepare_play(const json& doc, const RunOptions& options, bool discrete) {
  const json& lion = field(doc, "lion", "");
  const json& man = field(doc, "man", "");
  check_keys(lion, {"strategy", "start", "params"}, "lion");
  check_keys(man, {"strategy", "start", "params"}, "man");

  Space space = parse_space(field(doc, "space", ""), "space");
  Point lion_start = parse_point(field(lion, "start", "lion"), "lion.start");
  Point man_start = parse_point(field(man, "start", "man"), "man.start");

  GameConfig config{space,
                    lion_start,
                    man_start,
                    num_field(doc, "horizon", ""),
                    options.dt ? *options.dt : num_or(doc, "dt", "", 1e-3),
                    options.tol ? *options.tol : num_or(doc, "capture_tol", "", -1.0)};
  PlayPrep prep{std::move(config), discrete, 0.0, MoveOrder::LionFirst, Role::Man,
                nullptr,           nullptr,  nullptr, nullptr};

  BuildContext ctx{space, prep.config.horizon, prep.config.dt,
                   options.seed ? *options.seed
                                : (doc.contains("seed") ? to_seed(doc["seed"], "seed") : 0)};

  if (discrete) {
    prep.eps = num_field(doc, "eps", "");
    prep.order = parse_order(str_or(doc, "order", "", "lion_first"), "order");
    if (commits_windows(lion, "lion") || commits_windows(man, "man"))
      bad("mode", "discrete play needs two reacting strategies");
    prep.lion_reactive = make_reactive(lion, lion_start, ctx, "lion");
    prep.man_reactive = make_reactive(man, man_start, ctx, "man");
    return prep;
  }

  bool lion_commits = commits_windows(lion, "lion");
  bool man_commits = commits_windows(man, "man");
  if (lion_commits == man_commits)
    bad("committer", lion_commits
                         ? "both strategies commit windows; one side must react"
                         : "neither strategy commits windows; continuum play needs a committer");
  prep.committer_role = lion_commits ? Role::Lion : Role::Man;
  if (doc.contains("committer")) {
    std::string want = to_text(doc["committer"], "committer");
    if (want != "lion" && want != "man") bad("committer", "expected 'lion' or 'man'");
    if ((want == "lion") != lion_commits)
      bad("committer", "the declared committer's strategy does not commit windows");
  }
  const json& cj = lion_commits ? lion : man;
  const json& rj = lion_commits ? man : lion;
  prep.committer = make_committer(cj, lion_commits ? lion_start : man_start, ctx,
                                  lion_commits ? "lion" : "man");
  prep.reactor = make_reactive(rj, lion_commits ? man_start : lion_start, ctx,
                               lion_commits ? "man" : "lion");
  return prep;
}

struct SolvePrep {
  DiscreteGameSpec spec;
  long budget = 10'000'000;
  std::vector<double> eps_list;  // sweep mode only
};

SolvePrep prepare_solve(const json& doc, bool sweep) {
  DiscreteGameSpec base{parse_space(field(doc, "space", ""), "space"),
                        0.1,
                        0.1,
                        0.1,
                        1,
                        MoveOrder::LionFirst,
                        Point{},
                        Point{}};
  SolvePrep prep{std::move(base), 10'000'000, {}};
  if (doc.contains("eps")) {
    if (doc.contains("eps_lion") || doc.contains("eps_man"))
      bad("eps", "give either eps or the eps_lion/eps_man pair, not both");
    prep.spec.eps_lion = prep.spec.eps_man = num_field(doc, "eps", "");
  } else {
    prep.spec.eps_lion = num_field(doc, "eps_lion", "");
    prep.spec.eps_man = num_field(doc, "eps_man", "");
  }
  prep.spec.cell = num_or(doc, "cell", "", std::min(prep.spec.eps_lion, prep.spec.eps_man));
  prep.spec.rounds = int_field(doc, "rounds", "");
  prep.spec.order = parse_order(str_or(doc, "order", "", "lion_first"), "order");
  prep.spec.lion_start = parse_point(field(doc, "lion_start", ""), "lion_start");
  prep.spec.man_start = parse_point(field(doc, "man_start", ""), "man_start");
  prep.budget = int_or(doc, "state_budget", "", 10'000'000);
  if (sweep) {
    const json& lj = field(doc, "eps_list", "");
    if (!lj.is_array() || lj.empty()) bad("eps_list", "expected a non-empty array");
    for (std::size_t i = 0; i < lj.size(); ++i)
      prep.eps_list.push_back(to_number(lj[i], "eps_list[" + std::to_string(i) + "]"));
  }
  return prep;
}

struct FixedPointPrep {
  std::unique_ptr<ReactiveStrategy> man;
  double resolution = 0.0;
  int refinements = 0;
};

FixedPointPrep prepare_fixedpoint(const json& doc, const RunOptions& options) {
  const json& man = field(doc, "man", "");
  check_keys(man, {"strategy", "params"}, "man");
  BuildContext ctx{Space::closed_disc(1.0), 1.0, 1e-3,
                   options.seed ? *options.seed
                                : (doc.contains("seed") ? to_seed(doc["seed"], "seed") : 0)};
  FixedPointPrep prep;
  prep.man = make_reactive(man, pt(0.0, 0.0), ctx, "man");
  prep.resolution = num_field(doc, "resolution", "");
  prep.refinements = static_cast<int>(int_field(doc, "refinements", ""));
  return prep;
}

void check_top_level(const json& doc, const std::string& mode) {
  if (mode == "continuum")
    check_keys(doc,
               {"name", "description", "tags", "mode", "outputs", "space", "horizon", "dt",
                "capture_tol", "seed", "committer", "lion", "man"},
               "");
  else if (mode == "discrete")
    check_keys(doc,
               {"name", "description", "tags", "mode", "outputs", "space", "horizon", "dt",
                "capture_tol", "seed", "eps", "order", "lion", "man"},
               "");
  else if (mode == "solve")
    check_keys(doc,
               {"name", "description", "tags", "mode", "outputs", "space", "eps", "eps_lion",
                "eps_man", "cell", "rounds", "order", "lion_start", "man_start", "state_budget"},
               "");
  else if (mode == "sweep")
    check_keys(doc,
               {"name", "description", "tags", "mode", "outputs", "space", "eps", "eps_lion",
                "eps_man", "cell", "rounds", "order", "lion_start", "man_start", "state_budget",
                "eps_list"},
               "");
  else if (mode == "fixedpoint")
    check_keys(doc, {"name", "description", "tags", "mode", "outputs", "man", "resolution",
                     "refinements", "seed"},
               "");
  else
    bad("mode", "unknown mode '" + mode +
                    "' (continuum, discrete, solve, sweep, fixedpoint)");
}

// Builds everything a run would build, without executing. Keeps validation
// and execution on the same code path.
void validate_doc(const json& doc, const std::string& mode) {
  check_top_level(doc, mode);
  RunOptions none;
  if (mode == "continuum") {
    prepare_play(doc, none, false);
    outputs_of(doc, {"csv", "svg"});
  } else if (mode == "discrete") {
    prepare_play(doc, none, true);
    outputs_of(doc, {"csv", "svg"});
  } else if (mode == "solve") {
    prepare_solve(doc, false);
    outputs_of(doc, {"csv", "cache"});
  } else if (mode == "sweep") {
    prepare_solve(doc, true);
    outputs_of(doc, {"csv"});
  } else {
    prepare_fixedpoint(doc, none);
    outputs_of(doc, {"csv"});
  }
}

RunOutcome run_play_mode(const Scenario& scenario, const RunOptions& options, bool discrete) {
  PlayPrep prep = prepare_play(scenario.doc, options, discrete);
  PlayRecord record =
      discrete ? play_discrete(*prep.lion_reactive, *prep.man_reactive, prep.eps, prep.order,
                               prep.config)
               : play(*prep.committer, *prep.reactor, prep.committer_role, prep.config);

  RunOutcome out;
  json outputs = outputs_of(scenario.doc, {"csv", "svg"});
  if (outputs.contains("csv")) emit(out, options, outputs["csv"].get<std::string>(), play_csv(record));
  if (outputs.contains("svg")) emit(out, options, outputs["svg"].get<std::string>(), play_svg(record));

  std::ostringstream os;
  if (record.fault) {
    out.exit_code = 2;
    os << "fault: " << role_name(record.fault->role) << " at t="
       << decimal9(record.fault->at_time) << ": " << record.fault->message;
  } else if (record.separation.captured) {
    os << "captured=true capture_time=" << decimal9(*record.separation.capture_time)
       << " min_sep=" << decimal9(record.separation.min_distance);
  } else {
    os << "captured=false min_sep=" << decimal9(record.separation.min_distance)
       << " at_t=" << decimal9(record.separation.arg_time)
       << " horizon=" << decimal9(record.lion.horizon());
  }
  out.summary = os.str();
  return out;
}

RunOutcome run_solve_mode(const Scenario& scenario, const RunOptions& options) {
  SolvePrep prep = prepare_solve(scenario.doc, false);
  ValueResult result = solve(prep.spec, prep.budget);

  RunOutcome out;
  json outputs = outputs_of(scenario.doc, {"csv", "cache"});
  if (outputs.contains("cache")) {
    std::string path = resolve_out(options, outputs["cache"].get<std::string>());
    std::filesystem::path parent = std::filesystem::path(path).parent_path();
    std::error_code ec;
    if (!parent.empty()) std::filesystem::create_directories(parent, ec);
    save_value(result, path);
    out.artifacts.push_back(path);
  }
  if (outputs.contains("csv"))
    emit(out, options, outputs["csv"].get<std::string>(),
         sweep_csv({SweepRow{result.eps_lion, result.delta, result.states}}));

  std::ostringstream os;
  os << "delta=" << decimal9(result.delta) << " rounds=" << result.rounds
     << " positions=" << result.position_count << " states=" << result.states;
  out.summary = os.str();
  return out;
}

RunOutcome run_sweep_mode(const Scenario& scenario, const RunOptions& options) {
  SolvePrep prep = prepare_solve(scenario.doc, true);
  std::vector<SweepRow> rows = delta_sweep(prep.spec, prep.eps_list, prep.budget);

  RunOutcome out;
  json outputs = outputs_of(scenario.doc, {"csv"});
  if (outputs.contains("csv"))
    emit(out, options, outputs["csv"].get<std::string>(), sweep_csv(rows));

  std::ostringstream os;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) os << "; ";
    os << "eps=" << decimal9(rows[i].eps) << " delta=" << decimal9(rows[i].delta);
  }
  out.summary = os.str();
  return out;
}

RunOutcome run_fixedpoint_mode(const Scenario& scenario, const RunOptions& options) {
  FixedPointPrep prep = prepare_fixedpoint(scenario.doc, options);
  FixedPointReport report = fixed_point_search(*prep.man, prep.resolution, prep.refinements);

  RunOutcome out;
  json outputs = outputs_of(scenario.doc, {"csv"});
  if (outputs.contains("csv")) {
    std::ostringstream csv;
    csv << "step,residual\n";
    for (std::size_t i = 0; i < report.residual_by_step.size(); ++i)
      csv << i << "," << decimal9(report.residual_by_step[i]) << "\n";
    emit(out, options, outputs["csv"].get<std::string>(), csv.str());
  }

  std::ostringstream os;
  os << "residual=" << decimal9(report.residual) << " at " << describe(report.best)
     << " refinements=" << report.refinements;
  out.summary = os.str();
  return out;
}

}  // namespace

Scenario parse_scenario(const json& doc, const std::string& origin) {
  if (!doc.is_object()) bad(origin, "scenario must be a JSON object");
  Scenario scenario;
  try {
    scenario.name = str_field(doc, "name", "");
    if (scenario.name.empty()) bad("name", "must not be empty");
    scenario.description = str_or(doc, "description", "", "");
    if (doc.contains("tags")) {
      const json& tj = doc["tags"];
      if (!tj.is_array()) bad("tags", "expected an array of strings");
      for (std::size_t i = 0; i < tj.size(); ++i)
        scenario.tags.push_back(to_text(tj[i], "tags[" + std::to_string(i) + "]"));
    }
    scenario.mode = str_field(doc, "mode", "");
    scenario.doc = doc;
    validate_doc(doc, scenario.mode);
  } catch (const Error& e) {
    throw UsageError(origin.empty() ? std::string(e.what()) : origin + ": " + e.what());
  }
  return scenario;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError(path + ": cannot open scenario file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  return parse_scenario(doc, path);
}

void save_scenario(const Scenario& scenario, const std::string& path) {
  write_text_file(path, scenario.doc.dump(2) + "\n");
}

RunOutcome run_scenario(const Scenario& scenario, const RunOptions& options) {
  if (scenario.mode == "continuum") return run_play_mode(scenario, options, false);
  if (scenario.mode == "discrete") return run_play_mode(scenario, options, true);
  if (scenario.mode == "solve") return run_solve_mode(scenario, options);
  if (scenario.mode == "sweep") return run_sweep_mode(scenario, options);
  if (scenario.mode == "fixedpoint") return run_fixedpoint_mode(scenario, options);
  bad("mode", "unknown mode '" + scenario.mode + "'");
}

std::vector<BatteryRow> run_battery(const std::vector<Scenario>& scenarios,
                                    const RunOptions& options) {
  std::vector<BatteryRow> rows;
  for (const Scenario& scenario : scenarios) {
    BatteryRow row;
    row.name = scenario.name;
    try {
      RunOutcome outcome = run_scenario(scenario, options);
      row.passed = outcome.exit_code == 0;
      row.detail = outcome.summary;
    } catch (const Error& e) {
      row.passed = false;
      row.detail = std::string("error: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pursuitlab
