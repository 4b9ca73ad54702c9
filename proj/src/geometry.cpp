#include "pursuitlab/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>
#include <sstream>

#include "pursuitlab/errors.h"

namespace pursuitlab {

Point pt(double x) {
  Point p;
  p.kind = Point::Kind::Coord;
  p.dim = 1;
  p.x = x;
  return p;
}

Point pt(double x, double y) {
  Point p;
  p.kind = Point::Kind::Coord;
  p.dim = 2;
  p.x = x;
  p.y = y;
  return p;
}

Point graph_pt(int edge, double offset) {
  Point p;
  p.kind = Point::Kind::Graph;
  p.edge = edge;
  p.offset = offset;
  return p;
}

Point sum_pt(Point a, Point b) {
  Point p;
  p.kind = Point::Kind::Sum;
  p.parts.reserve(2);
  p.parts.push_back(std::move(a));
  p.parts.push_back(std::move(b));
  return p;
}

std::string describe(const Point& p) {
  std::ostringstream os;
  switch (p.kind) {
    case Point::Kind::Coord:
      if (p.dim == 1) {
        os << "(" << p.x << ")";
      } else {
        os << "(" << p.x << ", " << p.y << ")";
      }
      break;
    case Point::Kind::Graph:
      os << "(edge " << p.edge << ", offset " << p.offset << ")";
      break;
    case Point::Kind::Sum:
      os << "(" << (p.parts.size() > 0 ? describe(p.parts[0]) : std::string("?"))
         << "; " << (p.parts.size() > 1 ? describe(p.parts[1]) : std::string("?")) << ")";
      break;
  }
  return os.str();
}

// --- metric graph ---

MetricGraph::MetricGraph(int node_count, std::vector<GraphEdge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ <= 0) throw DomainError("metric graph needs at least one node");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const GraphEdge& e = edges_[i];
    if (e.a < 0 || e.a >= node_count_ || e.b < 0 || e.b >= node_count_) {
      throw DomainError("edge " + std::to_string(i) + " references a node outside 0.." +
                        std::to_string(node_count_ - 1));
    }
    if (!(e.length > 0.0)) {
      throw DomainError("edge " + std::to_string(i) + " must have positive length");
    }
  }
  incident_.assign(node_count_, {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    incident_[edges_[i].a].push_back(static_cast<int>(i));
    if (edges_[i].b != edges_[i].a) incident_[edges_[i].b].push_back(static_cast<int>(i));
  }

  const double inf = std::numeric_limits<double>::infinity();
  dist_.assign(static_cast<std::size_t>(node_count_) * node_count_, inf);
  prev_edge_.assign(dist_.size(), -1);
  prev_node_.assign(dist_.size(), -1);

  // Dijkstra from every node. Relaxation is strict, so the tree is
  // deterministic for a fixed edge order.
  for (int src = 0; src < node_count_; ++src) {
    double* dist = &dist_[static_cast<std::size_t>(src) * node_count_];
    int* pe = &prev_edge_[static_cast<std::size_t>(src) * node_count_];
    int* pn = &prev_node_[static_cast<std::size_t>(src) * node_count_];
    dist[src] = 0.0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    pq.push({0.0, src});
    while (!pq.empty()) {
      auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (int ei : incident_[u]) {
        const GraphEdge& e = edges_[ei];
        int v = (e.a == u) ? e.b : e.a;
        double nd = d + e.length;
        if (nd < dist[v]) {
          dist[v] = nd;
          pe[v] = ei;
          pn[v] = u;
          pq.push({nd, v});
        }
      }
    }
    for (int v = 0; v < node_count_; ++v) {
      if (dist[v] == inf) {
        throw DomainError("metric graph is not connected: node " + std::to_string(v) +
                          " unreachable from node " + std::to_string(src));
      }
    }
  }

  // Different Dijkstra roots can sum the same path in a different order, so
  // force the table to be bit-exactly symmetric.
  for (int u = 0; u < node_count_; ++u) {
    for (int v = u + 1; v < node_count_; ++v) {
      double d = std::min(dist_[static_cast<std::size_t>(u) * node_count_ + v],
                          dist_[static_cast<std::size_t>(v) * node_count_ + u]);
      dist_[static_cast<std::size_t>(u) * node_count_ + v] = d;
      dist_[static_cast<std::size_t>(v) * node_count_ + u] = d;
    }
  }
}

std::vector<int> MetricGraph::node_path(int u, int v) const {
  std::vector<int> rev;
  int cur = v;
  rev.push_back(cur);
  while (cur != u) {
    cur = prev_node_[static_cast<std::size_t>(u) * node_count_ + cur];
    rev.push_back(cur);
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

// --- space ---

struct Space::Impl {
  Kind kind = Kind::ClosedDisc;
  double a = 0.0;  // radius / halfwidth / lo
  double b = 0.0;  // hi
  std::shared_ptr<const class MetricGraph> graph;
  std::vector<Space> parts;
};

Space Space::closed_disc(double radius) {
  if (!(radius > 0.0)) throw DomainError("disc radius must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::ClosedDisc;
  impl->a = radius;
  return Space(impl);
}

Space Space::linf_box(double halfwidth) {
  if (!(halfwidth > 0.0)) throw DomainError("box halfwidth must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::LinfBox;
  impl->a = halfwidth;
  return Space(impl);
}

Space Space::euclidean_box(double halfwidth) {
  if (!(halfwidth > 0.0)) throw DomainError("box halfwidth must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::EuclideanBox;
  impl->a = halfwidth;
  return Space(impl);
}

Space Space::interval(double lo, double hi) {
  if (!(hi > lo)) throw DomainError("interval needs hi > lo");
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Interval;
  impl->a = lo;
  impl->b = hi;
  return Space(impl);
}

Space Space::linf_sum(Space a, Space b) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::LinfSum;
  impl->parts.push_back(std::move(a));
  impl->parts.push_back(std::move(b));
  return Space(impl);
}

Space Space::half_plane_race() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::HalfPlaneRace;
  return Space(impl);
}

Space Space::metric_graph(int node_count, std::vector<GraphEdge> edges) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::MetricGraph;
  impl->graph = std::make_shared<const class MetricGraph>(node_count, std::move(edges));
  return Space(impl);
}

Space::Kind Space::kind() const { return impl_->kind; }

std::string Space::describe() const {
  std::ostringstream os;
  switch (impl_->kind) {
    case Kind::ClosedDisc: os << "closed disc (radius " << impl_->a << ")"; break;
    case Kind::LinfBox: os << "l-inf box (halfwidth " << impl_->a << ")"; break;
    case Kind::EuclideanBox: os << "euclidean box (halfwidth " << impl_->a << ")"; break;
    case Kind::Interval: os << "interval [" << impl_->a << ", " << impl_->b << "]"; break;
    case Kind::LinfSum:
      os << "l-inf sum of " << impl_->parts[0].describe() << " and "
         << impl_->parts[1].describe();
      break;
    case Kind::HalfPlaneRace: os << "open upper half-plane plus (0,0) and (1,0)"; break;
    case Kind::MetricGraph:
      os << "metric graph (" << impl_->graph->node_count() << " nodes, "
         << impl_->graph->edges().size() << " edges)";
      break;
  }
  return os.str();
}

double Space::radius() const { return impl_->a; }
double Space::halfwidth() const { return impl_->a; }
double Space::lo() const { return impl_->a; }
double Space::hi() const { return impl_->b; }
const MetricGraph& Space::graph() const { return *impl_->graph; }
const Space& Space::sum_first() const { return impl_->parts[0]; }
const Space& Space::sum_second() const { return impl_->parts[1]; }

namespace {

// Structural problems only (wrong kind, wrong dimension, invalid edge id):
// enough to make the metric formula well defined.
std::optional<std::string> structure_problem(const Space& s, const Point& p) {
  switch (s.kind()) {
    case Space::Kind::ClosedDisc:
    case Space::Kind::LinfBox:
    case Space::Kind::EuclideanBox:
    case Space::Kind::HalfPlaneRace:
      if (p.kind != Point::Kind::Coord || p.dim != 2) return "expected a 2-d coordinate point";
      return std::nullopt;
    case Space::Kind::Interval:
      if (p.kind != Point::Kind::Coord || p.dim != 1) return "expected a 1-d coordinate point";
      return std::nullopt;
    case Space::Kind::LinfSum: {
      if (p.kind != Point::Kind::Sum || p.parts.size() != 2) {
        return "expected a pair point for a sum space";
      }
      if (auto prob = structure_problem(s.sum_first(), p.parts[0])) {
        return "first component: " + *prob;
      }
      if (auto prob = structure_problem(s.sum_second(), p.parts[1])) {
        return "second component: " + *prob;
      }
      return std::nullopt;
    }
    case Space::Kind::MetricGraph: {
      if (p.kind != Point::Kind::Graph) return "expected a graph point (edge, offset)";
      const MetricGraph& g = s.graph();
      if (p.edge < 0 || p.edge >= static_cast<int>(g.edges().size())) {
        return "edge " + std::to_string(p.edge) + " out of range (graph has " +
               std::to_string(g.edges().size()) + " edges)";
      }
      return std::nullopt;
    }
  }
  return "unknown space kind";
}

// Returns a description of why p is not in the space, or nullopt if it is.
std::optional<std::string> membership_problem(const Space& s, const Point& p) {
  if (auto prob = structure_problem(s, p)) return prob;
  switch (s.kind()) {
    case Space::Kind::ClosedDisc: {
      double r = std::hypot(p.x, p.y);
      if (r > s.radius() + kEqTol) {
        return "point " + describe(p) + " outside disc of radius " + std::to_string(s.radius());
      }
      return std::nullopt;
    }
    case Space::Kind::LinfBox:
    case Space::Kind::EuclideanBox: {
      double w = s.halfwidth();
      if (std::abs(p.x) > w + kEqTol) {
        return "x coordinate " + std::to_string(p.x) + " outside [-" + std::to_string(w) + ", " +
               std::to_string(w) + "]";
      }
      if (std::abs(p.y) > w + kEqTol) {
        return "y coordinate " + std::to_string(p.y) + " outside [-" + std::to_string(w) + ", " +
               std::to_string(w) + "]";
      }
      return std::nullopt;
    }
    case Space::Kind::Interval: {
      if (p.x < s.lo() - kEqTol || p.x > s.hi() + kEqTol) {
        return "coordinate " + std::to_string(p.x) + " outside [" + std::to_string(s.lo()) +
               ", " + std::to_string(s.hi()) + "]";
      }
      return std::nullopt;
    }
    case Space::Kind::HalfPlaneRace: {
      if (p.y > 0.0) return std::nullopt;
      bool added = (p.x == 0.0 && p.y == 0.0) || (p.x == 1.0 && p.y == 0.0);
      if (added) return std::nullopt;
      return "point " + describe(p) +
             " not in space: y must be strictly positive unless the point is exactly (0,0) or (1,0)";
    }
    case Space::Kind::LinfSum: {
      if (auto prob = membership_problem(s.sum_first(), p.parts[0])) {
        return "first component: " + *prob;
      }
      if (auto prob = membership_problem(s.sum_second(), p.parts[1])) {
        return "second component: " + *prob;
      }
      return std::nullopt;
    }
    case Space::Kind::MetricGraph: {
      const MetricGraph& g = s.graph();
      double len = g.edges()[p.edge].length;
      if (p.offset < -kEqTol || p.offset > len + kEqTol) {
        return "offset " + std::to_string(p.offset) + " outside [0, " + std::to_string(len) +
               "] on edge " + std::to_string(p.edge);
      }
      return std::nullopt;
    }
  }
  return "unknown space kind";
}

// Cost from a graph point to each endpoint of its edge.
struct EdgeEnds {
  int node_a;
  double cost_a;
  int node_b;
  double cost_b;
};

EdgeEnds edge_ends(const MetricGraph& g, const Point& p) {
  const GraphEdge& e = g.edges()[p.edge];
  double off = std::clamp(p.offset, 0.0, e.length);
  return {e.a, off, e.b, e.length - off};
}

// Sum in sorted order so the result does not depend on argument order.
double sum3_sorted(double a, double b, double c) {
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  return a + b + c;
}

double graph_distance(const MetricGraph& g, const Point& p, const Point& q) {
  double best = std::numeric_limits<double>::infinity();
  if (p.edge == q.edge) best = std::abs(p.offset - q.offset);
  EdgeEnds pe = edge_ends(g, p);
  EdgeEnds qe = edge_ends(g, q);
  const int pn[2] = {pe.node_a, pe.node_b};
  const double pc[2] = {pe.cost_a, pe.cost_b};
  const int qn[2] = {qe.node_a, qe.node_b};
  const double qc[2] = {qe.cost_a, qe.cost_b};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      best = std::min(best, sum3_sorted(pc[i], g.node_distance(pn[i], qn[j]), qc[j]));
    }
  }
  return best;
}

std::vector<GraphRouteLeg> graph_route(const MetricGraph& g, const Point& p, const Point& q) {
  // Candidate costs in a fixed order; the first within 1e-12 of the minimum
  // wins, which keeps routes deterministic.
  double direct = (p.edge == q.edge) ? std::abs(p.offset - q.offset)
                                     : std::numeric_limits<double>::infinity();
  EdgeEnds pe = edge_ends(g, p);
  EdgeEnds qe = edge_ends(g, q);
  const int pn[2] = {pe.node_a, pe.node_b};
  const double pc[2] = {pe.cost_a, pe.cost_b};
  const int qn[2] = {qe.node_a, qe.node_b};
  const double qc[2] = {qe.cost_a, qe.cost_b};

  double best = direct;
  int bi = -1, bj = -1;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double c = sum3_sorted(pc[i], g.node_distance(pn[i], qn[j]), qc[j]);
      if (c < best - 1e-12) {
        best = c;
        bi = i;
        bj = j;
      }
    }
  }

  std::vector<GraphRouteLeg> legs;
  if (bi < 0) {
    if (direct > 0.0) legs.push_back({p.edge, p.offset, q.offset});
    return legs;
  }

  const GraphEdge& ep = g.edges()[p.edge];
  const GraphEdge& eq = g.edges()[q.edge];
  double p_end_off = (bi == 0) ? 0.0 : ep.length;
  double q_end_off = (bj == 0) ? 0.0 : eq.length;

  if (std::abs(p.offset - p_end_off) > 0.0) {
    legs.push_back({p.edge, p.offset, p_end_off});
  }
  std::vector<int> nodes = g.node_path(pn[bi], qn[bj]);
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    int ei = g.tree_edge(pn[bi], nodes[k + 1]);
    const GraphEdge& e = g.edges()[ei];
    if (e.a == nodes[k]) {
      legs.push_back({ei, 0.0, e.length});
    } else {
      legs.push_back({ei, e.length, 0.0});
    }
  }
  if (std::abs(q.offset - q_end_off) > 0.0) {
    legs.push_back({q.edge, q_end_off, q.offset});
  }
  return legs;
}

}  // namespace

bool Space::contains(const Point& p) const { return !membership_problem(*this, p); }

void Space::require_member(const Point& p, const char* what) const {
  if (auto prob = membership_problem(*this, p)) {
    throw DomainError(std::string(what) + " not in " + describe() + ": " + *prob);
  }
}

double Space::distance(const Point& a, const Point& b) const {
  require_member(a, "first point");
  require_member(b, "second point");
  return metric(a, b);
}

double Space::metric(const Point& a, const Point& b) const {
  if (auto prob = structure_problem(*this, a)) throw DomainError("first point: " + *prob);
  if (auto prob = structure_problem(*this, b)) throw DomainError("second point: " + *prob);
  switch (impl_->kind) {
    case Kind::ClosedDisc:
    case Kind::EuclideanBox:
    case Kind::HalfPlaneRace:
      return std::hypot(a.x - b.x, a.y - b.y);
    case Kind::LinfBox:
      return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
    case Kind::Interval:
      return std::abs(a.x - b.x);
    case Kind::LinfSum:
      return std::max(impl_->parts[0].metric(a.parts[0], b.parts[0]),
                      impl_->parts[1].metric(a.parts[1], b.parts[1]));
    case Kind::MetricGraph:
      return graph_distance(*impl_->graph, a, b);
  }
  throw DomainError("unknown space kind");
}

Point Space::geodesic_step(const Point& from, const Point& toward, double budget) const {
  if (budget < 0.0) throw DomainError("geodesic step budget must be >= 0");
  require_member(from, "start point");
  require_member(toward, "target point");
  double d = distance(from, toward);
  if (budget >= d) return toward;
  if (d == 0.0) return from;

  switch (impl_->kind) {
    case Kind::ClosedDisc:
    case Kind::LinfBox:
    case Kind::EuclideanBox: {
      double f = budget / d;
      return pt(from.x + f * (toward.x - from.x), from.y + f * (toward.y - from.y));
    }
    case Kind::Interval: {
      double f = budget / d;
      return pt(from.x + f * (toward.x - from.x));
    }
    case Kind::HalfPlaneRace: {
      double f = budget / d;
      Point out = pt(from.x + f * (toward.x - from.x), from.y + f * (toward.y - from.y));
      if (auto prob = membership_problem(*this, out)) {
        throw DomainError("no geodesic inside the space from " + pursuitlab::describe(from) +
                          " toward " + pursuitlab::describe(toward) + ": " + *prob);
      }
      return out;
    }
    case Kind::LinfSum: {
      double d0 = impl_->parts[0].distance(from.parts[0], toward.parts[0]);
      double d1 = impl_->parts[1].distance(from.parts[1], toward.parts[1]);
      // Move both components proportionally so the l-inf arc length equals
      // the budget.
      double f = budget / d;
      Point a = impl_->parts[0].geodesic_step(from.parts[0], toward.parts[0], f * d0);
      Point b = impl_->parts[1].geodesic_step(from.parts[1], toward.parts[1], f * d1);
      return sum_pt(std::move(a), std::move(b));
    }
    case Kind::MetricGraph: {
      std::vector<GraphRouteLeg> legs = graph_route(*impl_->graph, from, toward);
      double left = budget;
      for (const GraphRouteLeg& leg : legs) {
        double len = std::abs(leg.to_off - leg.from_off);
        if (left <= len) {
          double dir = (leg.to_off >= leg.from_off) ? 1.0 : -1.0;
          return graph_pt(leg.edge, leg.from_off + dir * left);
        }
        left -= len;
      }
      return toward;
    }
  }
  throw DomainError("unknown space kind");
}

std::vector<GraphRouteLeg> Space::geodesic_route(const Point& from, const Point& toward) const {
  if (impl_->kind != Kind::MetricGraph) {
    throw DomainError("geodesic_route is only available on metric graphs");
  }
  require_member(from, "start point");
  require_member(toward, "target point");
  return graph_route(*impl_->graph, from, toward);
}

int Space::component_count() const {
  switch (impl_->kind) {
    case Kind::LinfBox: return 2;
    case Kind::LinfSum:
      return impl_->parts[0].component_count() + impl_->parts[1].component_count();
    default: return 1;
  }
}

Space Space::component(int i) const {
  switch (impl_->kind) {
    case Kind::LinfBox:
      return Space::interval(-impl_->a, impl_->a);
    case Kind::LinfSum: {
      int ca = impl_->parts[0].component_count();
      if (i < ca) return impl_->parts[0].component(i);
      return impl_->parts[1].component(i - ca);
    }
    default:
      if (i != 0) throw DomainError("component index out of range");
      return *this;
  }
}

Point Space::get_component(const Point& p, int i) const {
  switch (impl_->kind) {
    case Kind::LinfBox:
      return pt(i == 0 ? p.x : p.y);
    case Kind::LinfSum: {
      int ca = impl_->parts[0].component_count();
      if (i < ca) return impl_->parts[0].get_component(p.parts[0], i);
      return impl_->parts[1].get_component(p.parts[1], i - ca);
    }
    default:
      if (i != 0) throw DomainError("component index out of range");
      return p;
  }
}

Point Space::replace_component(const Point& p, int i, const Point& value) const {
  switch (impl_->kind) {
    case Kind::LinfBox: {
      Point out = p;
      if (i == 0) {
        out.x = value.x;
      } else {
        out.y = value.x;
      }
      return out;
    }
    case Kind::LinfSum: {
      Point out = p;
      int ca = impl_->parts[0].component_count();
      if (i < ca) {
        out.parts[0] = impl_->parts[0].replace_component(p.parts[0], i, value);
      } else {
        out.parts[1] = impl_->parts[1].replace_component(p.parts[1], i - ca, value);
      }
      return out;
    }
    default:
      if (i != 0) throw DomainError("component index out of range");
      return value;
  }
}

Point Space::node_point(int node) const {
  const MetricGraph& g = graph();
  if (node < 0 || node >= g.node_count()) throw DomainError("node index out of range");
  const std::vector<int>& inc = g.edges_at(node);
  if (inc.empty()) throw DomainError("node " + std::to_string(node) + " has no incident edge");
  int ei = inc.front();
  const GraphEdge& e = g.edges()[ei];
  return graph_pt(ei, e.a == node ? 0.0 : e.length);
}

}  // namespace pursuitlab
