#include "pursuitlab/solver.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "pursuitlab/errors.h"

namespace pursuitlab {

namespace {

constexpr double kGridTol = 1e-9;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

long whole_ratio(double value, double unit, const char* what) {
  long k = std::lround(value / unit);
  if (k < 1 || std::abs(static_cast<double>(k) * unit - value) > kGridTol) {
    throw UsageError(std::string(what) + " (" + fmt(value) + ") must be a whole positive number of " +
                     fmt(unit));
  }
  return k;
}

std::vector<Point> build_grid(const Space& space, double cell) {
  std::vector<Point> pts;
  switch (space.kind()) {
    case Space::Kind::MetricGraph: {
      const MetricGraph& g = space.graph();
      for (int node = 0; node < g.node_count(); ++node) pts.push_back(space.node_point(node));
      for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
        long m = whole_ratio(g.edges()[e].length, cell, "edge length");
        for (long i = 1; i < m; ++i) pts.push_back(graph_pt(e, static_cast<double>(i) * cell));
      }
      break;
    }
    case Space::Kind::Interval: {
      double lo = space.lo();
      double hi = space.hi();
      long m = whole_ratio(hi - lo, cell, "interval length");
      for (long i = 0; i <= m; ++i) {
        pts.push_back(pt(i == m ? hi : lo + static_cast<double>(i) * cell));
      }
      break;
    }
    case Space::Kind::LinfBox:
    case Space::Kind::EuclideanBox:
    case Space::Kind::ClosedDisc: {
      bool disc = space.kind() == Space::Kind::ClosedDisc;
      double w = disc ? space.radius() : space.halfwidth();
      long m = whole_ratio(2.0 * w, cell, "space width");
      std::vector<double> axis(m + 1);
      for (long i = 0; i <= m; ++i) axis[i] = i == m ? w : -w + static_cast<double>(i) * cell;
      for (double vx : axis) {
        for (double vy : axis) {
          Point p = pt(vx, vy);
          if (!disc || space.contains(p)) pts.push_back(p);
        }
      }
      break;
    }
    default:
      throw UsageError("value grids support graphs, intervals, boxes, and discs, not " +
                       space.describe());
  }
  return pts;
}

std::vector<std::vector<int>> move_sets(const Space& space, const std::vector<Point>& pts,
                                        double eps) {
  int count = static_cast<int>(pts.size());
  std::vector<std::vector<int>> moves(count);
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      if (space.distance(pts[i], pts[j]) <= eps + kGridTol) moves[i].push_back(j);
    }
  }
  return moves;
}

int find_id(const Space& space, const std::vector<Point>& pts, const Point& p, const char* what) {
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    if (space.distance(pts[i], p) <= kGridTol) return i;
  }
  throw UsageError(std::string(what) + " " + describe(p) + " must lie on the value grid");
}

void check_spec(const DiscreteGameSpec& spec) {
  if (!(spec.cell > 0.0)) throw UsageError("cell must be positive, got " + fmt(spec.cell));
  if (spec.rounds < 0) throw UsageError("rounds must be nonnegative");
  whole_ratio(spec.eps_lion, spec.cell, "lion move budget");
  whole_ratio(spec.eps_man, spec.cell, "man move budget");
  spec.space.require_member(spec.lion_start, "lion start");
  spec.space.require_member(spec.man_start, "man start");
}

// Looks up tabulated optimal moves by grid position and round. Whether it is
// moving first or second falls out of how far the opponent's visible history
// reaches.
class TablePolicy : public ReactiveStrategy {
 public:
  TablePolicy(const ValueResult* result, double eps) : result_(result), eps_(eps) {
    for (int i = 0; i < result->position_count; ++i) ids_.emplace(key(result->positions[i]), i);
  }

  std::string name() const override { return "table_policy"; }

  Point next_position(const History& h, double) override {
    long round = std::lround(h.now / eps_);
    std::size_t count = static_cast<std::size_t>(result_->position_count);
    int own = lookup(h.own.eval(h.now));
    int opp = lookup(h.opp.eval(h.opp.horizon()));
    bool moving_second = h.opp.horizon() > h.now + 1e-12;
    std::size_t base = static_cast<std::size_t>(round) * count * count;
    int move = moving_second ? result_->second_move[base + static_cast<std::size_t>(opp) * count + own]
                             : result_->first_move[base + static_cast<std::size_t>(own) * count + opp];
    if (move < 0) throw StrategyFaultError("no tabulated move for this state");
    return result_->positions[move];
  }

 private:
  using Key = std::pair<std::uint64_t, std::uint64_t>;

  static std::uint64_t bits(double v) {
    std::uint64_t u = 0;
    std::memcpy(&u, &v, sizeof u);
    return u;
  }

  static Key key(const Point& p) {
    if (p.kind == Point::Kind::Graph) {
      return {(1ull << 62) | static_cast<std::uint64_t>(p.edge), bits(p.offset)};
    }
    if (p.dim == 1) return {bits(p.x), 1ull << 61};
    return {bits(p.x), bits(p.y)};
  }

  int lookup(const Point& p) const {
    auto it = ids_.find(key(p));
    if (it == ids_.end()) throw StrategyFaultError("position " + describe(p) + " is off the grid");
    return it->second;
  }

  const ValueResult* result_;
  double eps_;
  std::map<Key, int> ids_;
};

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw UsageError("value cache is truncated");
  return v;
}

}  // namespace

ValueResult solve(const DiscreteGameSpec& spec, long state_budget) {
  check_spec(spec);
  std::vector<Point> pts = build_grid(spec.space, spec.cell);
  const int count = static_cast<int>(pts.size());
  const std::size_t pp = static_cast<std::size_t>(count) * count;
  const long n = spec.rounds;
  long states = static_cast<long>(pp) * (n + 1);
  if (states > state_budget) {
    throw ResourceError("value table needs " + std::to_string(states) + " entries, over the budget " +
                        std::to_string(state_budget) + "; coarsen the grid or shorten the game");
  }

  const Space& space = spec.space;
  const bool graph = space.kind() == Space::Kind::MetricGraph;
  const bool lion_first = spec.order == MoveOrder::LionFirst;
  std::vector<std::vector<int>> moves_lion = move_sets(space, pts, spec.eps_lion);
  std::vector<std::vector<int>> moves_man = move_sets(space, pts, spec.eps_man);
  const auto& moves_first = lion_first ? moves_lion : moves_man;
  const auto& moves_second = lion_first ? moves_man : moves_lion;

  std::vector<double> dist(pp);
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      dist[static_cast<std::size_t>(a) * count + b] = space.distance(pts[a], pts[b]);
    }
  }

  ValueResult result;
  result.rounds = n;
  result.order = spec.order;
  result.eps_lion = spec.eps_lion;
  result.eps_man = spec.eps_man;
  result.position_count = count;
  result.lion_start_id = find_id(space, pts, spec.lion_start, "lion start");
  result.man_start_id = find_id(space, pts, spec.man_start, "man start");
  result.positions = pts;
  result.states = states;
  result.first_move.assign(static_cast<std::size_t>(n) * pp, -1);
  result.second_move.assign(static_cast<std::size_t>(n) * pp, -1);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> next(pp, inf);  // value with k-1 rounds left
  std::vector<double> reply(pp);      // second mover's folded best this round
  std::vector<double> cur(pp);

  for (long k_left = 1; k_left <= n; ++k_left) {
    std::size_t table_base = static_cast<std::size_t>(n - k_left) * pp;

    // Second mover at b against the first mover already landed at a. The
    // second mover maximizes exactly when the lion moved first.
    const bool second_maximizes = lion_first;
    for (int a = 0; a < count; ++a) {
      for (int b = 0; b < count; ++b) {
        double best = second_maximizes ? -inf : inf;
        int best_move = -1;
        for (int to : moves_second[b]) {
          double v;
          if (graph && route_covers(space, pts[b], pts[to], pts[a])) {
            v = 0.0;
          } else {
            std::size_t at = static_cast<std::size_t>(a) * count + to;
            v = std::min(dist[at], next[at]);
          }
          if (second_maximizes ? v > best : v < best) {
            best = v;
            best_move = to;
          }
        }
        reply[static_cast<std::size_t>(a) * count + b] = best;
        result.second_move[table_base + static_cast<std::size_t>(a) * count + b] = best_move;
      }
    }

    for (int a = 0; a < count; ++a) {
      for (int b = 0; b < count; ++b) {
        double best = second_maximizes ? inf : -inf;
        int best_move = -1;
        for (int to : moves_first[a]) {
          double v;
          if (graph && route_covers(space, pts[a], pts[to], pts[b])) {
            v = 0.0;
          } else {
            v = reply[static_cast<std::size_t>(to) * count + b];
          }
          if (second_maximizes ? v < best : v > best) {
            best = v;
            best_move = to;
          }
        }
        cur[static_cast<std::size_t>(a) * count + b] = best;
        result.first_move[table_base + static_cast<std::size_t>(a) * count + b] = best_move;
      }
    }
    next.swap(cur);
  }

  int first0 = lion_first ? result.lion_start_id : result.man_start_id;
  int second0 = lion_first ? result.man_start_id : result.lion_start_id;
  double d0 = dist[static_cast<std::size_t>(result.lion_start_id) * count + result.man_start_id];
  result.delta = std::min(d0, next[static_cast<std::size_t>(first0) * count + second0]);
  return result;
}

PlayRecord replay(const ValueResult& result, const DiscreteGameSpec& spec) {
  if (result.eps_lion != result.eps_man) {
    throw UsageError("replay needs symmetric move budgets");
  }
  if (result.rounds < 1) throw UsageError("replay needs at least one round");
  double eps = result.eps_lion;
  TablePolicy lion(&result, eps);
  TablePolicy man(&result, eps);
  GameConfig config{spec.space, result.positions[result.lion_start_id],
                    result.positions[result.man_start_id],
                    static_cast<double>(result.rounds) * eps, eps, 0.0};
  return play_discrete(lion, man, eps, result.order, config);
}

std::vector<SweepRow> delta_sweep(const DiscreteGameSpec& base, const std::vector<double>& eps_list,
                                  long state_budget) {
  if (base.eps_lion != base.eps_man) {
    throw UsageError("delta_sweep needs symmetric move budgets");
  }
  long cells_per_eps = whole_ratio(base.eps_lion, base.cell, "move budget");
  double total = static_cast<double>(base.rounds) * base.eps_lion;

  std::vector<SweepRow> rows;
  for (double eps : eps_list) {
    if (!(eps > 0.0)) throw UsageError("sweep eps must be positive, got " + fmt(eps));
    DiscreteGameSpec spec = base;
    spec.eps_lion = eps;
    spec.eps_man = eps;
    spec.cell = eps / static_cast<double>(cells_per_eps);
    spec.rounds = whole_ratio(total, eps, "game duration");
    ValueResult r = solve(spec, state_budget);
    rows.push_back(SweepRow{eps, r.delta, r.states});
  }
  return rows;
}

void save_value(const ValueResult& result, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write value cache " + path);
  os.write("PLSV", 4);
  put<std::uint32_t>(os, 1);
  put<std::uint8_t>(os, result.order == MoveOrder::LionFirst ? 0 : 1);
  put<std::int64_t>(os, result.rounds);
  put<std::int32_t>(os, result.position_count);
  put<std::int32_t>(os, result.lion_start_id);
  put<std::int32_t>(os, result.man_start_id);
  put<double>(os, result.eps_lion);
  put<double>(os, result.eps_man);
  put<double>(os, result.delta);
  put<std::int64_t>(os, result.states);
  for (const Point& p : result.positions) {
    if (p.kind == Point::Kind::Graph) {
      put<std::uint8_t>(os, 2);
      put<std::int32_t>(os, p.edge);
      put<double>(os, p.offset);
    } else if (p.dim == 1) {
      put<std::uint8_t>(os, 1);
      put<double>(os, p.x);
    } else {
      put<std::uint8_t>(os, 0);
      put<double>(os, p.x);
      put<double>(os, p.y);
    }
  }
  for (int v : result.first_move) put<std::int32_t>(os, v);
  for (int v : result.second_move) put<std::int32_t>(os, v);
  if (!os) throw UsageError("failed writing value cache " + path);
}

ValueResult load_value(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw UsageError("cannot read value cache " + path);
  char magic[4] = {};
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "PLSV", 4) != 0) {
    throw UsageError(path + " is not a value cache (bad magic)");
  }
  std::uint32_t version = get<std::uint32_t>(is);
  if (version != 1) {
    throw UsageError("unsupported value cache version " + std::to_string(version));
  }

  ValueResult result;
  result.order = get<std::uint8_t>(is) == 0 ? MoveOrder::LionFirst : MoveOrder::ManFirst;
  result.rounds = get<std::int64_t>(is);
  result.position_count = get<std::int32_t>(is);
  result.lion_start_id = get<std::int32_t>(is);
  result.man_start_id = get<std::int32_t>(is);
  result.eps_lion = get<double>(is);
  result.eps_man = get<double>(is);
  result.delta = get<double>(is);
  result.states = get<std::int64_t>(is);
  if (result.rounds < 0 || result.position_count < 0 ||
      result.lion_start_id < 0 || result.lion_start_id >= result.position_count ||
      result.man_start_id < 0 || result.man_start_id >= result.position_count) {
    throw UsageError("value cache has inconsistent header fields");
  }
  result.positions.reserve(result.position_count);
  for (int i = 0; i < result.position_count; ++i) {
    std::uint8_t tag = get<std::uint8_t>(is);
    if (tag == 2) {
      int edge = get<std::int32_t>(is);
      double off = get<double>(is);
      result.positions.push_back(graph_pt(edge, off));
    } else if (tag == 1) {
      result.positions.push_back(pt(get<double>(is)));
    } else if (tag == 0) {
      double x = get<double>(is);
      double y = get<double>(is);
      result.positions.push_back(pt(x, y));
    } else {
      throw UsageError("value cache has an unknown position tag");
    }
  }
  std::size_t table = static_cast<std::size_t>(result.rounds) * result.position_count *
                      result.position_count;
  result.first_move.resize(table);
  result.second_move.resize(table);
  for (std::size_t i = 0; i < table; ++i) result.first_move[i] = get<std::int32_t>(is);
  for (std::size_t i = 0; i < table; ++i) result.second_move[i] = get<std::int32_t>(is);
  return result;
}

}  // namespace pursuitlab
