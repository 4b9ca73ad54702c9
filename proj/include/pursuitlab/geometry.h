#pragma once

#include <memory>
#include <string>
#include <vector>

namespace pursuitlab {

// A point in one of the supported spaces. Plain tagged struct:
//   Coord: 1-d (x) or 2-d (x, y) coordinates
//   Graph: position on a metric graph edge, offset measured from the edge's
//          first endpoint, in [0, edge length]
//   Sum:   pair of component points for l-infinity sum spaces
struct Point {
  enum class Kind { Coord, Graph, Sum };
  Kind kind = Kind::Coord;

  int dim = 2;
  double x = 0.0;
  double y = 0.0;

  int edge = -1;
  double offset = 0.0;

  std::vector<Point> parts;  // exactly 2 when kind == Sum
};

Point pt(double x);             // 1-d coordinate point
Point pt(double x, double y);   // 2-d coordinate point
Point graph_pt(int edge, double offset);
Point sum_pt(Point a, Point b);

std::string describe(const Point& p);

struct GraphEdge {
  int a = 0;
  int b = 0;
  double length = 0.0;
};

// Finite connected metric graph. Nodes are 0..node_count-1; parallel edges
// and self loops are allowed. All-pairs shortest node distances and the
// shortest-path trees are precomputed at construction.
class MetricGraph {
 public:
  MetricGraph(int node_count, std::vector<GraphEdge> edges);

  int node_count() const { return node_count_; }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  const std::vector<int>& edges_at(int node) const { return incident_[node]; }

  double node_distance(int u, int v) const { return dist_[u * node_count_ + v]; }
  // Node sequence of a shortest path u -> v (both inclusive).
  std::vector<int> node_path(int u, int v) const;
  // Edge used to arrive at v in the shortest-path tree rooted at u (-1 at u).
  int tree_edge(int u, int v) const { return prev_edge_[u * node_count_ + v]; }

 private:
  int node_count_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<double> dist_;
  std::vector<int> prev_edge_;
  std::vector<int> prev_node_;
};

// One leg of a geodesic on a metric graph: walk `edge` from from_off to
// to_off (offsets from the edge's first endpoint; direction may be either).
struct GraphRouteLeg {
  int edge = -1;
  double from_off = 0.0;
  double to_off = 0.0;
};

// Immutable handle to a metric space. Cheap to copy and safe to share.
class Space {
 public:
  enum class Kind {
    ClosedDisc,      // Euclidean disc of given radius, centre origin
    LinfBox,         // [-w, w]^2 with the max metric
    EuclideanBox,    // [-w, w]^2 with the Euclidean metric
    Interval,        // [lo, hi] on the line
    LinfSum,         // product of two spaces with the max metric
    HalfPlaneRace,   // open upper half-plane plus the points (0,0) and (1,0)
    MetricGraph,
  };

  static Space closed_disc(double radius);
  static Space linf_box(double halfwidth);
  static Space euclidean_box(double halfwidth);
  static Space interval(double lo, double hi);
  static Space linf_sum(Space a, Space b);
  static Space half_plane_race();
  static Space metric_graph(int node_count, std::vector<GraphEdge> edges);

  Kind kind() const;
  std::string describe() const;

  // Throws DomainError if either point does not belong to the space.
  double distance(const Point& a, const Point& b) const;
  // Metric formula alone: validates point structure (kind, dimension, edge
  // ids) but not containment. Lets callers order their own checks.
  double metric(const Point& a, const Point& b) const;
  bool contains(const Point& p) const;
  // Throws DomainError (with the offending detail) if p is not in the space.
  void require_member(const Point& p, const char* what) const;

  // Point at arc length min(budget, distance) along a geodesic from `from`
  // toward `toward`. budget must be >= 0.
  Point geodesic_step(const Point& from, const Point& toward, double budget) const;

  // Graph geodesic as explicit legs (graph spaces only); used for exact
  // crossing detection. Empty for from == to.
  std::vector<GraphRouteLeg> geodesic_route(const Point& from, const Point& toward) const;

  // l-infinity product structure. Non-product spaces report one component
  // (themselves). LinfBox reports its two axes as Interval components;
  // LinfSum flattens recursively.
  int component_count() const;
  Space component(int i) const;
  Point get_component(const Point& p, int i) const;
  Point replace_component(const Point& p, int i, const Point& value) const;

  // Parameter access (valid for the matching kinds).
  double radius() const;
  double halfwidth() const;
  double lo() const;
  double hi() const;
  const MetricGraph& graph() const;
  const Space& sum_first() const;
  const Space& sum_second() const;

  // Canonical point for a graph node (graph spaces only).
  Point node_point(int node) const;

 private:
  struct Impl;
  explicit Space(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Tolerance used for membership slack and exact-equality style comparisons.
inline constexpr double kEqTol = 1e-9;

}  // namespace pursuitlab
