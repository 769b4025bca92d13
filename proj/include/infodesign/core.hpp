#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "infodesign/error.hpp"
#include "infodesign/numeric.hpp"

namespace infodesign {

// Binary-value market: the buyer's value is either low or high.
template <typename Scalar>
class MarketT {
 public:
  MarketT(Scalar low, Scalar high) : low_(low), high_(high) {
    require(Scalar(0) < low_ && low_ < high_, ErrorCode::InvalidArgument,
            "market requires 0 < L < H");
  }

  const Scalar& low() const { return low_; }
  const Scalar& high() const { return high_; }
  Scalar ratio() const { return Scalar(low_ / high_); }
  Scalar spread() const { return Scalar(high_ - low_); }

 private:
  Scalar low_;
  Scalar high_;
};

using Market = MarketT<double>;

// Pr[s_H | v=L] = alpha, Pr[s_H | v=H] = beta, normalized so alpha <= beta.
template <typename Scalar>
struct BinarySignalT {
  Scalar alpha;
  Scalar beta;

  BinarySignalT(Scalar a, Scalar b) : alpha(a), beta(b) {
    const Scalar tol = probability_tolerance<Scalar>();
    require(alpha >= Scalar(-tol) && beta <= Scalar(1 + tol) &&
                alpha <= Scalar(beta + tol),
            ErrorCode::InvalidArgument, "binary signal requires 0 <= alpha <= beta <= 1");
  }

  static BinarySignalT uninformative() { return {Scalar(0), Scalar(0)}; }
  static BinarySignalT fully_informative() { return {Scalar(0), Scalar(1)}; }
};

using BinarySignal = BinarySignalT<double>;

// Likelihood matrix: one row per buyer value (ascending), one column per
// realization.
template <typename Scalar>
class FiniteSignalT {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit FiniteSignalT(Matrix likelihood) : likelihood_(std::move(likelihood)) {
    require(likelihood_.rows() >= 1 && likelihood_.cols() >= 1,
            ErrorCode::InvalidArgument, "signal needs at least one realization");
    const Scalar tol = probability_tolerance<Scalar>();
    for (Eigen::Index r = 0; r < likelihood_.rows(); ++r) {
      Scalar sum(0);
      for (Eigen::Index c = 0; c < likelihood_.cols(); ++c) {
        Scalar& p = likelihood_(r, c);
        require(p >= Scalar(-tol) && p <= Scalar(1 + tol), ErrorCode::InvalidArgument,
                "likelihood entries must lie in [0,1]");
        if (p < Scalar(0)) p = Scalar(0);
        if (p > Scalar(1)) p = Scalar(1);
        sum += p;
      }
      Scalar gap = sum - Scalar(1);
      if (gap < Scalar(0)) gap = -gap;
      require(gap <= tol, ErrorCode::InvalidArgument, "likelihood rows must sum to 1");
    }
  }

  static FiniteSignalT from_binary(const BinarySignalT<Scalar>& s) {
    Matrix m(2, 2);
    m << Scalar(1 - s.alpha), s.alpha, Scalar(1 - s.beta), s.beta;
    return FiniteSignalT(std::move(m));
  }

  static FiniteSignalT uninformative(Eigen::Index values) {
    return FiniteSignalT(Matrix::Constant(values, 1, Scalar(1)));
  }

  static FiniteSignalT fully_informative(Eigen::Index values) {
    Matrix m = Matrix::Zero(values, values);
    for (Eigen::Index i = 0; i < values; ++i) m(i, i) = Scalar(1);
    return FiniteSignalT(std::move(m));
  }

  Eigen::Index value_count() const { return likelihood_.rows(); }
  Eigen::Index realization_count() const { return likelihood_.cols(); }
  const Matrix& likelihood() const { return likelihood_; }
  const Scalar& operator()(Eigen::Index value, Eigen::Index realization) const {
    return likelihood_(value, realization);
  }

  // Merges realization j into realization i.
  FiniteSignalT pooled(Eigen::Index i, Eigen::Index j) const {
    require(i != j && i < realization_count() && j < realization_count(),
            ErrorCode::InvalidArgument, "pooling needs two distinct realizations");
    Matrix m(value_count(), realization_count() - 1);
    Eigen::Index out = 0;
    for (Eigen::Index c = 0; c < realization_count(); ++c) {
      if (c == j) continue;
      m.col(out) = likelihood_.col(c);
      if (c == i) m.col(out) += likelihood_.col(j);
      ++out;
    }
    return FiniteSignalT(std::move(m));
  }

 private:
  Matrix likelihood_;
};

using FiniteSignal = FiniteSignalT<double>;

template <typename Scalar>
struct WelfareOutcomeT {
  Scalar buyer_surplus{0};
  Scalar seller_profit{0};

  Eigen::Matrix<Scalar, 2, 1> vec() const { return {buyer_surplus, seller_profit}; }
  static WelfareOutcomeT from(const Eigen::Matrix<Scalar, 2, 1>& v) { return {v.x(), v.y()}; }
};

using WelfareOutcome = WelfareOutcomeT<double>;

inline WelfareOutcome operator+(const WelfareOutcome& a, const WelfareOutcome& b) {
  return {a.buyer_surplus + b.buyer_surplus, a.seller_profit + b.seller_profit};
}
inline WelfareOutcome operator*(double w, const WelfareOutcome& a) {
  return {w * a.buyer_surplus, w * a.seller_profit};
}

// Which endpoints of an interval carry their atoms.
enum class Endpoints { Closed, OpenLeft, OpenRight, Open };

// Seller-type distribution on [0,1].
class TypeDistribution {
 public:
  enum class Kind { PointMass, DiscreteAtoms, Uniform01, PiecewiseLinearCdf };

  struct Atom {
    double theta;
    double weight;
  };
  // CDF value at a knot; equal consecutive positions encode a jump.
  struct Knot {
    double x;
    double cdf;
  };
  // Constant-density segment of the continuous part.
  struct Piece {
    double lo;
    double hi;
    double density;
  };

  static TypeDistribution point_mass(double theta);
  static TypeDistribution atoms(std::vector<Atom> atoms);
  static TypeDistribution uniform();
  static TypeDistribution piecewise_linear(std::vector<Knot> knots);

  Kind kind() const { return kind_; }
  double mean() const { return mean_; }
  const std::vector<Atom>& atom_list() const { return atoms_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<Knot>& knots() const { return knots_; }

  double cdf(double x) const;
  // Generalized inverse: smallest x with cdf(x) >= u.
  double quantile(double u) const;
  // Every nonempty open subinterval of [0,1] has positive mass.
  bool has_full_support() const;

  // Mass and first moment of the types in [a,b] under the endpoint rule.
  double mass(double a, double b, Endpoints ends = Endpoints::Closed) const;
  double first_moment(double a, double b, Endpoints ends = Endpoints::Closed) const;

  std::string describe() const;

 private:
  TypeDistribution() = default;
  void finish();

  Kind kind_ = Kind::Uniform01;
  std::vector<Atom> atoms_;
  std::vector<Piece> pieces_;
  std::vector<Knot> knots_;
  double mean_ = 0.5;
};

double mean_type(const TypeDistribution& dist);

// ∫_[a,b] f dF: exact atom sums plus Gauss-Kronrod on each density piece.
double integrate_over_types(const TypeDistribution& dist, const std::function<double(double)>& f,
                            double a, double b, Endpoints ends = Endpoints::Closed);

// Convex region in the (U, Π) plane, boundary counterclockwise.
class OutcomeSet {
 public:
  OutcomeSet(std::vector<WelfareOutcome> boundary, double prior);

  const std::vector<WelfareOutcome>& boundary() const { return boundary_; }
  double prior() const { return prior_; }
  bool is_convex(double tol = 1e-9) const;
  // Positive outside, negative inside (distance to the boundary).
  double signed_distance(const WelfareOutcome& p) const;
  bool contains(const WelfareOutcome& p, double tol = 1e-9) const;

 private:
  std::vector<WelfareOutcome> boundary_;
  double prior_;
};

}  // namespace infodesign
