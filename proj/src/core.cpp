#include "infodesign/core.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "infodesign/geometry.hpp"

namespace infodesign {

namespace {

constexpr double kMassTolerance = 1e-12;

bool inside(double v, double a, double b, Endpoints ends) {
  const bool left = (ends == Endpoints::Closed || ends == Endpoints::OpenRight) ? v >= a : v > a;
  const bool right = (ends == Endpoints::Closed || ends == Endpoints::OpenLeft) ? v <= b : v < b;
  return left && right;
}

void check_interval(double a, double b) {
  require(a <= b, ErrorCode::InvalidInterval, "interval requires a <= b");
}

}  // namespace

TypeDistribution TypeDistribution::point_mass(double theta) {
  require(theta >= 0.0 && theta <= 1.0, ErrorCode::InvalidArgument, "point mass must lie in [0,1]");
  TypeDistribution d;
  d.kind_ = Kind::PointMass;
  d.atoms_ = {{theta, 1.0}};
  d.finish();
  return d;
}

TypeDistribution TypeDistribution::atoms(std::vector<Atom> atoms) {
  require(!atoms.empty(), ErrorCode::InvalidArgument, "atom list is empty");
  double total = 0.0;
  for (const Atom& a : atoms) {
    require(a.theta >= 0.0 && a.theta <= 1.0, ErrorCode::InvalidArgument,
            "atom locations must lie in [0,1]");
    require(a.weight >= 0.0, ErrorCode::InvalidArgument, "atom weights must be nonnegative");
    total += a.weight;
  }
  require(std::abs(total - 1.0) <= kMassTolerance, ErrorCode::InvalidArgument,
          "atom weights must sum to 1");
  TypeDistribution d;
  d.kind_ = Kind::DiscreteAtoms;
  d.atoms_ = std::move(atoms);
  d.finish();
  return d;
}

TypeDistribution TypeDistribution::uniform() {
  TypeDistribution d;
  d.kind_ = Kind::Uniform01;
  d.pieces_ = {{0.0, 1.0, 1.0}};
  d.knots_ = {{0.0, 0.0}, {1.0, 1.0}};
  d.finish();
  return d;
}

TypeDistribution TypeDistribution::piecewise_linear(std::vector<Knot> knots) {
  require(knots.size() >= 2, ErrorCode::InvalidArgument, "need at least two knots");
  require(knots.front().x == 0.0 && knots.back().x == 1.0, ErrorCode::InvalidArgument,
          "knots must start at 0 and end at 1");
  require(std::abs(knots.back().cdf - 1.0) <= kMassTolerance, ErrorCode::InvalidArgument,
          "CDF must reach 1 at the last knot");
  knots.back().cdf = 1.0;
  require(knots.front().cdf >= 0.0, ErrorCode::InvalidArgument, "CDF must be nonnegative");
  TypeDistribution d;
  d.kind_ = Kind::PiecewiseLinearCdf;
  if (knots.front().cdf > 0.0) d.atoms_.push_back({0.0, knots.front().cdf});
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    const Knot& a = knots[i];
    const Knot& b = knots[i + 1];
    require(b.x >= a.x && b.cdf >= a.cdf, ErrorCode::InvalidArgument,
            "knots must be nondecreasing in position and CDF");
    const double rise = b.cdf - a.cdf;
    if (rise <= 0.0) continue;
    if (b.x == a.x) {
      d.atoms_.push_back({a.x, rise});
    } else {
      d.pieces_.push_back({a.x, b.x, rise / (b.x - a.x)});
    }
  }
  d.knots_ = std::move(knots);
  d.finish();
  return d;
}

void TypeDistribution::finish() {
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.theta < b.theta; });
  std::vector<Atom> merged;
  for (const Atom& a : atoms_) {
    if (a.weight <= 0.0) continue;
    if (!merged.empty() && merged.back().theta == a.theta) {
      merged.back().weight += a.weight;
    } else {
      merged.push_back(a);
    }
  }
  atoms_ = std::move(merged);
  mean_ = first_moment(0.0, 1.0);
}

double TypeDistribution::mass(double a, double b, Endpoints ends) const {
  check_interval(a, b);
  double total = 0.0;
  for (const Atom& atom : atoms_) {
    if (inside(atom.theta, a, b, ends)) total += atom.weight;
  }
  for (const Piece& p : pieces_) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (hi > lo) total += p.density * (hi - lo);
  }
  return total;
}

double TypeDistribution::first_moment(double a, double b, Endpoints ends) const {
  check_interval(a, b);
  double total = 0.0;
  for (const Atom& atom : atoms_) {
    if (inside(atom.theta, a, b, ends)) total += atom.theta * atom.weight;
  }
  for (const Piece& p : pieces_) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (hi > lo) total += p.density * 0.5 * (hi - lo) * (hi + lo);
  }
  return total;
}

double TypeDistribution::cdf(double x) const {
  if (x < 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return std::min(1.0, mass(0.0, x));
}

double TypeDistribution::quantile(double u) const {
  require(u >= 0.0 && u <= 1.0, ErrorCode::InvalidArgument, "quantile level must lie in [0,1]");
  if (kind_ == Kind::Uniform01) return u;
  // Walk atoms and pieces left to right; an atom at x precedes a piece
  // starting at x because the CDF is right-continuous.
  std::size_t ai = 0;
  std::size_t pi = 0;
  double cum = 0.0;
  double last = 0.0;
  while (ai < atoms_.size() || pi < pieces_.size()) {
    const bool take_atom =
        pi >= pieces_.size() || (ai < atoms_.size() && atoms_[ai].theta <= pieces_[pi].lo);
    if (take_atom) {
      const Atom& a = atoms_[ai++];
      last = a.theta;
      if (cum + a.weight >= u && a.weight > 0.0) return a.theta;
      cum += a.weight;
    } else {
      const Piece& p = pieces_[pi++];
      const double m = p.density * (p.hi - p.lo);
      last = p.hi;
      if (cum + m >= u && m > 0.0) {
        return std::min(p.hi, p.lo + std::max(0.0, u - cum) / p.density);
      }
      cum += m;
    }
  }
  return last;
}

bool TypeDistribution::has_full_support() const {
  if (pieces_.empty()) return false;
  double covered = 0.0;
  for (const Piece& p : pieces_) {
    if (p.density <= 0.0 || p.lo > covered) return false;
    covered = std::max(covered, p.hi);
  }
  return covered >= 1.0;
}

std::string TypeDistribution::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Uniform01:
      os << "uniform";
      break;
    case Kind::PointMass:
      os << "point:" << atoms_.front().theta;
      break;
    case Kind::DiscreteAtoms:
      os << "atoms:";
      for (std::size_t i = 0; i < atoms_.size(); ++i) {
        os << (i ? "," : "") << atoms_[i].theta << '@' << atoms_[i].weight;
      }
      break;
    case Kind::PiecewiseLinearCdf:
      os << "plcdf:";
      for (std::size_t i = 0; i < knots_.size(); ++i) {
        os << (i ? "," : "") << knots_[i].x << '@' << knots_[i].cdf;
      }
      break;
  }
  return os.str();
}

double mean_type(const TypeDistribution& dist) { return dist.mean(); }

double integrate_over_types(const TypeDistribution& dist, const std::function<double(double)>& f,
                            double a, double b, Endpoints ends) {
  check_interval(a, b);
  double total = 0.0;
  for (const auto& atom : dist.atom_list()) {
    if (inside(atom.theta, a, b, ends)) total += atom.weight * f(atom.theta);
  }
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
  for (const auto& p : dist.pieces()) {
    const double lo = std::max(a, p.lo);
    const double hi = std::min(b, p.hi);
    if (hi > lo) total += p.density * Quadrature::integrate(f, lo, hi, 15, 1e-12);
  }
  return total;
}

OutcomeSet::OutcomeSet(std::vector<WelfareOutcome> boundary, double prior)
    : boundary_(std::move(boundary)), prior_(prior) {
  require(!boundary_.empty(), ErrorCode::InvalidArgument, "outcome set needs a boundary");
}

namespace {
geometry::Polyline to_polyline(const std::vector<WelfareOutcome>& pts) {
  geometry::Polyline out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(p.vec());
  return out;
}
}  // namespace

bool OutcomeSet::is_convex(double tol) const {
  const std::size_t n = boundary_.size();
  if (n < 3) return true;
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d a = boundary_[i].vec();
    const Eigen::Vector2d b = boundary_[(i + 1) % n].vec();
    const Eigen::Vector2d c = boundary_[(i + 2) % n].vec();
    if (geometry::cross(b - a, c - b) < -tol) return false;
  }
  return true;
}

double OutcomeSet::signed_distance(const WelfareOutcome& p) const {
  return geometry::signed_distance(p.vec(), to_polyline(boundary_));
}

bool OutcomeSet::contains(const WelfareOutcome& p, double tol) const {
  return signed_distance(p) <= tol;
}

}  // namespace infodesign
