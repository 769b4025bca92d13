#include "infodesign/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace infodesign::geometry {

Polyline convex_hull(Polyline points, double eps) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [eps](const Point& a, const Point& b) { return (a - b).norm() <= eps; }),
               points.end());
  if (points.size() <= 2) return points;

  Polyline hull(2 * points.size());
  std::size_t k = 0;
  auto turn = [&](const Point& o, const Point& a, const Point& b) { return cross(a - o, b - o); };
  for (const Point& p : points) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= eps) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = points.size() - 1; i-- > 0;) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], points[i]) <= eps) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

double point_segment_distance(const Point& p, const Point& a, const Point& b) {
  const Point ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

double point_polyline_distance(const Point& p, const Polyline& line, bool closed) {
  if (line.empty()) return std::numeric_limits<double>::infinity();
  if (line.size() == 1) return (p - line.front()).norm();
  double best = std::numeric_limits<double>::infinity();
  const std::size_t edges = closed ? line.size() : line.size() - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    best = std::min(best, point_segment_distance(p, line[i], line[(i + 1) % line.size()]));
  }
  return best;
}

double signed_distance(const Point& p, const Polyline& polygon) {
  const double d = point_polyline_distance(p, polygon, true);
  if (polygon.size() < 3) return d;
  for (std::size_t i = 0; i < polygon.size(); ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % polygon.size()];
    if (cross(b - a, p - a) < 0.0) return d;
  }
  return -d;
}

Polyline densify(const Polyline& line, bool closed, double step) {
  if (line.size() < 2) return line;
  Polyline out;
  const std::size_t edges = closed ? line.size() : line.size() - 1;
  for (std::size_t i = 0; i < edges; ++i) {
    const Point& a = line[i];
    const Point& b = line[(i + 1) % line.size()];
    const auto pieces = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a).norm() / step)));
    for (std::size_t k = 0; k < pieces; ++k) {
      out.push_back(a + (b - a) * (static_cast<double>(k) / static_cast<double>(pieces)));
    }
  }
  if (!closed) out.push_back(line.back());
  return out;
}

double hausdorff(const Polyline& a, const Polyline& b, bool a_closed, bool b_closed, double step) {
  double h = 0.0;
  for (const Point& p : densify(a, a_closed, step)) {
    h = std::max(h, point_polyline_distance(p, b, b_closed));
  }
  for (const Point& p : densify(b, b_closed, step)) {
    h = std::max(h, point_polyline_distance(p, a, a_closed));
  }
  return h;
}

Polyline clip_right_of(const Polyline& polygon, double x0) {
  Polyline out;
  const std::size_t n = polygon.size();
  if (n == 1) {
    if (polygon.front().x() >= x0) out.push_back(polygon.front());
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point& cur = polygon[i];
    const Point& next = polygon[(i + 1) % n];
    const bool cur_in = cur.x() >= x0;
    const bool next_in = next.x() >= x0;
    if (cur_in) out.push_back(cur);
    if (cur_in != next_in) {
      const double t = (x0 - cur.x()) / (next.x() - cur.x());
      out.push_back(cur + t * (next - cur));
    }
  }
  return out;
}

}  // namespace infodesign::geometry
