#pragma once

#include <vector>

#include "infodesign/core.hpp"

// Closed forms for uniformly distributed seller types. A binary signal is
// summarized by its cutoffs: types below x price L after both realizations,
// types above y price H after both, types in between obey.
namespace infodesign::uniform {

template <typename Scalar>
struct CutoffPairT {
  Scalar x;
  Scalar y;
};

using CutoffPair = CutoffPairT<double>;

template <typename Scalar>
struct BoundaryPointT {
  CutoffPairT<Scalar> cutoffs;
  BinarySignalT<Scalar> signal;
  WelfareOutcomeT<Scalar> outcome;
};

using BoundaryPoint = BoundaryPointT<double>;

namespace detail {
template <typename Scalar>
Scalar clamp(const Scalar& v, const Scalar& lo, const Scalar& hi) {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}
}  // namespace detail

template <typename Scalar>
void validate(const CutoffPairT<Scalar>& c, const MarketT<Scalar>& mkt) {
  const Scalar tol = probability_tolerance<Scalar>();
  const Scalar r = mkt.ratio();
  require(c.x >= Scalar(-tol) && c.x <= Scalar(r + tol) && c.y >= Scalar(r - tol) &&
              c.y <= Scalar(1 + tol),
          ErrorCode::InvalidArgument, "cutoffs require 0 <= x <= L/H <= y <= 1");
}

// (L/H, y) and (x, L/H) all describe the uninformative signal; they map to (0, L/H).
template <typename Scalar>
CutoffPairT<Scalar> canonical(const CutoffPairT<Scalar>& c, const MarketT<Scalar>& mkt) {
  const Scalar r = mkt.ratio();
  if (c.x == r || c.y == r) return {Scalar(0), r};
  return c;
}

template <typename Scalar>
BinarySignalT<Scalar> cutoffs_to_signal(const CutoffPairT<Scalar>& c, const MarketT<Scalar>& mkt) {
  validate(c, mkt);
  require(c.y != c.x, ErrorCode::DegenerateCutoffs,
          "cutoffs coincide; the signal is uninformative");
  const Scalar& L = mkt.low();
  const Scalar& H = mkt.high();
  const Scalar hy = H * c.y - L;
  const Scalar gap = c.y - c.x;
  Scalar alpha = c.x * hy / (L * gap);
  Scalar beta = hy * (Scalar(1) - c.x) / (gap * (H - L));
  alpha = detail::clamp(alpha, Scalar(0), Scalar(1));
  beta = detail::clamp(beta, alpha, Scalar(1));
  return {alpha, beta};
}

template <typename Scalar>
CutoffPairT<Scalar> signal_to_cutoffs(const BinarySignalT<Scalar>& s, const MarketT<Scalar>& mkt) {
  const Scalar& L = mkt.low();
  const Scalar& H = mkt.high();
  const Scalar x_den = s.alpha * L + s.beta * (H - L);
  const Scalar x = s.alpha == Scalar(0) ? Scalar(0) : Scalar(s.alpha * L / x_den);
  const Scalar y_den = H - x_den;
  const Scalar y = y_den == Scalar(0) ? Scalar(1) : Scalar((Scalar(1) - s.alpha) * L / y_den);
  return {x, y};
}

template <typename Scalar>
Scalar profit_xy(const CutoffPairT<Scalar>& c, const MarketT<Scalar>& mkt) {
  const Scalar& L = mkt.low();
  const Scalar& H = mkt.high();
  const Scalar hy = H * c.y - L;
  const Scalar half(Scalar(1) / Scalar(2));
  return Scalar(L * c.y + half * hy * (c.y + c.x) - hy * c.x + half * H * (Scalar(1) - c.y * c.y));
}

template <typename Scalar>
Scalar surplus_xy(const CutoffPairT<Scalar>& c, const MarketT<Scalar>& mkt) {
  const Scalar& L = mkt.low();
  const Scalar& H = mkt.high();
  const Scalar half(Scalar(1) / Scalar(2));
  return Scalar(half * (H - L) * c.y * c.y -
                half * (H * c.y - L) * (Scalar(1) - c.x) * (c.y + c.x));
}

template <typename Scalar>
WelfareOutcomeT<Scalar> outcome_xy(const CutoffPairT<Scalar>& c, const MarketT<Scalar>& mkt) {
  return {surplus_xy(c, mkt), profit_xy(c, mkt)};
}

template <typename Scalar>
BoundaryPointT<Scalar> boundary_point_from(const CutoffPairT<Scalar>& raw,
                                           const MarketT<Scalar>& mkt) {
  const CutoffPairT<Scalar> c = canonical(raw, mkt);
  const BinarySignalT<Scalar> s = c.y == mkt.ratio() ? BinarySignalT<Scalar>::uninformative()
                                                     : cutoffs_to_signal(c, mkt);
  return {c, s, outcome_xy(c, mkt)};
}

// Maximizer of λ_U U + λ_Π Π for λ_U > 0, with r = λ_Π / λ_U: high-value flagging.
template <typename Scalar>
BoundaryPointT<Scalar> right_boundary_point(const Scalar& r, const MarketT<Scalar>& mkt) {
  const Scalar y = detail::clamp(Scalar((Scalar(1) + r) / Scalar(2)), mkt.ratio(), Scalar(1));
  return boundary_point_from(CutoffPairT<Scalar>{Scalar(0), y}, mkt);
}

// Maximizer for λ_U < 0, with r = λ_Π / λ_U: low-value flagging.
template <typename Scalar>
BoundaryPointT<Scalar> left_boundary_point(const Scalar& r, const MarketT<Scalar>& mkt) {
  const Scalar x = detail::clamp(Scalar(r / Scalar(2)), Scalar(0), mkt.ratio());
  return boundary_point_from(CutoffPairT<Scalar>{x, Scalar(1)}, mkt);
}

template <typename Scalar>
BoundaryPointT<Scalar> buyer_optimal(const MarketT<Scalar>& mkt) {
  return right_boundary_point(Scalar(0), mkt);
}

// Boundary curves from the no-data point to full information, n >= 2 samples.
std::vector<BoundaryPoint> right_boundary_curve(const Market& mkt, std::size_t n);
std::vector<BoundaryPoint> left_boundary_curve(const Market& mkt, std::size_t n);

}  // namespace infodesign::uniform
