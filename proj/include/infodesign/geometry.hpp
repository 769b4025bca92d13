#pragma once

#include <Eigen/Core>

#include <vector>

namespace infodesign::geometry {

using Point = Eigen::Vector2d;
using Polyline = std::vector<Point>;

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Counterclockwise hull without collinear vertices. Degenerate inputs return
// one or two points.
Polyline convex_hull(Polyline points, double eps = 1e-13);

double point_segment_distance(const Point& p, const Point& a, const Point& b);
double point_polyline_distance(const Point& p, const Polyline& line, bool closed);

// Signed distance to a convex CCW polygon: negative inside.
double signed_distance(const Point& p, const Polyline& polygon);

// Symmetric Hausdorff distance, with both polylines densified to `step`.
double hausdorff(const Polyline& a, const Polyline& b, bool a_closed, bool b_closed,
                 double step = 1e-3);

// Part of a convex CCW polygon with x >= x0.
Polyline clip_right_of(const Polyline& polygon, double x0);

Polyline densify(const Polyline& line, bool closed, double step);

}  // namespace infodesign::geometry
