#include "pursuitlab/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pursuitlab/errors.h"

namespace pursuitlab {

namespace {

// Sorted union of both paths' sample times over the common horizon.
std::vector<double> merged_times(const TimedPath& a, const TimedPath& b) {
  std::vector<double> times;
  times.reserve(a.samples().size() + b.samples().size());
  for (const TimedPoint& s : a.samples()) times.push_back(s.t);
  for (const TimedPoint& s : b.samples()) times.push_back(s.t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double u, double v) { return std::abs(u - v) <= 1e-12; }),
              times.end());
  return times;
}

void append_header(std::ostringstream& os, const Space& space, const std::string& who) {
  switch (space.kind()) {
    case Space::Kind::MetricGraph:
      os << ',' << who << "_edge," << who << "_off";
      return;
    case Space::Kind::Interval:
      os << ',' << who << 'x';
      return;
    case Space::Kind::LinfSum:
      for (int i = 0; i < space.component_count(); ++i) {
        append_header(os, space.component(i), who + std::to_string(i));
      }
      return;
    default:
      os << ',' << who << "x," << who << 'y';
      return;
  }
}

void append_cells(std::ostringstream& os, const Space& space, const Point& p) {
  if (space.kind() == Space::Kind::MetricGraph) {
    os << ',' << p.edge << ',' << decimal9(p.offset);
    return;
  }
  if (space.kind() == Space::Kind::LinfSum) {
    for (int i = 0; i < space.component_count(); ++i) {
      append_cells(os, space.component(i), space.get_component(p, i));
    }
    return;
  }
  if (space.kind() == Space::Kind::Interval) {
    os << ',' << decimal9(p.x);
    return;
  }
  os << ',' << decimal9(p.x) << ',' << decimal9(p.y);
}

}  // namespace

std::string decimal9(double v) {
  if (v == 0.0) v = 0.0;  // canonical +0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 9);
  return std::string(buf, res.ptr);
}

std::string play_csv(const PlayRecord& record) {
  const Space& space = record.lion.space();
  std::ostringstream os;
  os << 't';
  append_header(os, space, "l");
  append_header(os, space, "m");
  os << ",dist\n";
  for (double t : merged_times(record.lion, record.man)) {
    Point l = record.lion.eval(t);
    Point m = record.man.eval(t);
    os << decimal9(t);
    append_cells(os, space, l);
    append_cells(os, space, m);
    os << ',' << decimal9(space.distance(l, m)) << '\n';
  }
  return os.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "eps,delta,states\n";
  for (const SweepRow& row : rows) {
    os << decimal9(row.eps) << ',' << decimal9(row.delta) << ',' << row.states << '\n';
  }
  return os.str();
}

std::string play_svg(const PlayRecord& record) {
  const Space& space = record.lion.space();
  double w;
  switch (space.kind()) {
    case Space::Kind::ClosedDisc:
      w = space.radius();
      break;
    case Space::Kind::LinfBox:
    case Space::Kind::EuclideanBox:
      w = space.halfwidth();
      break;
    default:
      throw UsageError("plots need a 2-d coordinate space, not " + space.describe());
  }

  auto sx = [&](double x) { return 0.05 + 0.9 * (x + w) / (2.0 * w); };
  auto sy = [&](double y) { return 0.05 + 0.9 * (w - y) / (2.0 * w); };
  auto polyline = [&](const TimedPath& path, const char* color) {
    std::ostringstream os;
    os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"0.004\" points=\"";
    std::size_t n = path.samples().size();
    std::size_t stride = n > 2000 ? n / 2000 + 1 : 1;
    for (std::size_t i = 0; i < n; i += stride) {
      const Point& p = path.samples()[i].p;
      os << sx(p.x) << ',' << sy(p.y) << ' ';
    }
    const Point& last = path.samples().back().p;
    os << sx(last.x) << ',' << sy(last.y) << "\"/>\n";
    return os.str();
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\">\n";
  os << "  <rect x=\"0.05\" y=\"0.05\" width=\"0.9\" height=\"0.9\" fill=\"none\" "
        "stroke=\"#999\" stroke-width=\"0.002\"/>\n";
  if (space.kind() == Space::Kind::ClosedDisc) {
    os << "  <circle cx=\"0.5\" cy=\"0.5\" r=\"0.45\" fill=\"none\" stroke=\"#999\" "
          "stroke-width=\"0.002\"/>\n";
  }
  os << polyline(record.lion, "red");
  os << polyline(record.man, "blue");
  if (record.separation.captured && record.separation.capture_time) {
    Point c = record.lion.eval(std::min(*record.separation.capture_time, record.lion.horizon()));
    os << "  <circle cx=\"" << sx(c.x) << "\" cy=\"" << sy(c.y)
       << "\" r=\"0.012\" fill=\"black\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw UsageError("cannot write " + path);
  os << content;
  if (!os) throw UsageError("failed writing " + path);
}

}  // namespace pursuitlab
