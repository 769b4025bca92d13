#pragma once

#include "infodesign/core.hpp"

namespace infodesign {

enum class TieBreak { Low, High };
enum class Price { Low, High };

namespace detail {
template <typename Scalar>
void require_interior_prior(const Scalar& mu0) {
  require(Scalar(0) < mu0 && mu0 < Scalar(1), ErrorCode::DegeneratePrior,
          "prior mean must lie strictly inside (0,1)");
}
}  // namespace detail

// Type theta's posterior that v = H after a realization that moves the
// basic prior mu0 to mu.
template <typename Scalar>
Scalar posterior_update(const Scalar& mu, const Scalar& theta, const Scalar& mu0) {
  detail::require_interior_prior(mu0);
  const Scalar num = theta * mu * (Scalar(1) - mu0);
  const Scalar den = num + (Scalar(1) - theta) * (Scalar(1) - mu) * mu0;
  if (den == Scalar(0)) return theta;
  return Scalar(num / den);
}

// The type indifferent between L and H at basic belief mu.
template <typename Scalar>
Scalar threshold_type(const Scalar& mu, const MarketT<Scalar>& mkt, const Scalar& mu0) {
  detail::require_interior_prior(mu0);
  const Scalar a = mu * (Scalar(1) - mu0);
  const Scalar b = (Scalar(1) - mu) * mu0;
  const Scalar lb = mkt.low() * b;
  return Scalar(lb / (lb + mkt.spread() * a));
}

// Inverse of threshold_type: the basic belief at which `theta` is indifferent.
template <typename Scalar>
Scalar belief_at_threshold(const Scalar& theta, const MarketT<Scalar>& mkt, const Scalar& mu0) {
  detail::require_interior_prior(mu0);
  const Scalar low_side = mkt.low() * (Scalar(1) - theta) * mu0;
  const Scalar high_side = theta * (Scalar(1) - mu0) * mkt.spread();
  return Scalar(low_side / (low_side + high_side));
}

template <typename Scalar>
Price optimal_price_binary(const Scalar& t, const MarketT<Scalar>& mkt,
                           TieBreak tie = TieBreak::Low) {
  const Scalar cut = mkt.ratio();
  if (t > cut) return Price::High;
  if (t < cut) return Price::Low;
  return tie == TieBreak::Low ? Price::Low : Price::High;
}

}  // namespace infodesign
