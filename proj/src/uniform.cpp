#include "infodesign/uniform.hpp"

namespace infodesign::uniform {

std::vector<BoundaryPoint> right_boundary_curve(const Market& mkt, std::size_t n) {
  require(n >= 2, ErrorCode::InvalidArgument, "curve needs at least two samples");
  std::vector<BoundaryPoint> out;
  out.reserve(n);
  const double r = mkt.ratio();
  for (std::size_t i = 0; i < n; ++i) {
    const double y = r + (1.0 - r) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(boundary_point_from(CutoffPair{0.0, i + 1 == n ? 1.0 : y}, mkt));
  }
  return out;
}

std::vector<BoundaryPoint> left_boundary_curve(const Market& mkt, std::size_t n) {
  require(n >= 2, ErrorCode::InvalidArgument, "curve needs at least two samples");
  std::vector<BoundaryPoint> out;
  out.reserve(n);
  const double r = mkt.ratio();
  for (std::size_t i = 0; i < n; ++i) {
    const double x = r * (1.0 - static_cast<double>(i) / static_cast<double>(n - 1));
    out.push_back(boundary_point_from(CutoffPair{i + 1 == n ? 0.0 : x, 1.0}, mkt));
  }
  return out;
}

}  // namespace infodesign::uniform
