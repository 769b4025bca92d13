#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "infodesign/core.hpp"

// Buyer values on a finite grid v_1 < ... < v_n; seller types are points of
// the simplex over that grid.
namespace infodesign::many {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
class MultiMarketT {
 public:
  explicit MultiMarketT(Vector<Scalar> values) : values_(std::move(values)) {
    require(values_.size() >= 2, ErrorCode::InvalidArgument, "need at least two values");
    require(values_(0) > Scalar(0), ErrorCode::InvalidArgument, "values must be positive");
    for (Eigen::Index i = 1; i < values_.size(); ++i) {
      require(values_(i - 1) < values_(i), ErrorCode::InvalidArgument,
              "values must be strictly increasing");
    }
  }

  Eigen::Index size() const { return values_.size(); }
  const Vector<Scalar>& values() const { return values_; }
  const Scalar& value(Eigen::Index i) const { return values_(i); }

 private:
  Vector<Scalar> values_;
};

template <typename Scalar>
class SimplexTypeT {
 public:
  explicit SimplexTypeT(Vector<Scalar> probs) : probs_(std::move(probs)) {
    Scalar sum(0);
    for (Eigen::Index i = 0; i < probs_.size(); ++i) {
      require(probs_(i) >= Scalar(0), ErrorCode::InvalidArgument,
              "type probabilities must be nonnegative");
      sum += probs_(i);
    }
    Scalar gap = sum - Scalar(1);
    if (gap < Scalar(0)) gap = -gap;
    require(gap <= probability_tolerance<Scalar>(), ErrorCode::InvalidArgument,
            "type probabilities must sum to 1");
  }

  Eigen::Index size() const { return probs_.size(); }
  const Vector<Scalar>& probs() const { return probs_; }
  const Scalar& operator()(Eigen::Index i) const { return probs_(i); }

 private:
  Vector<Scalar> probs_;
};

template <typename Scalar>
struct MultiMenuT {
  std::vector<SimplexTypeT<Scalar>> types;
  std::vector<Scalar> weights;
  std::vector<FiniteSignalT<Scalar>> signals;

  void validate(const MultiMarketT<Scalar>& mkt) const {
    require(!types.empty() && types.size() == weights.size() && types.size() == signals.size(),
            ErrorCode::InvalidArgument, "menu needs one weight and one signal per type");
    Scalar sum(0);
    for (std::size_t k = 0; k < types.size(); ++k) {
      require(types[k].size() == mkt.size() && signals[k].value_count() == mkt.size(),
              ErrorCode::InvalidArgument, "menu dimensions must match the value grid");
      require(weights[k] >= Scalar(0), ErrorCode::InvalidArgument, "weights must be nonnegative");
      sum += weights[k];
    }
    Scalar gap = sum - Scalar(1);
    if (gap < Scalar(0)) gap = -gap;
    require(gap <= probability_tolerance<Scalar>(), ErrorCode::InvalidArgument,
            "menu weights must sum to 1");
  }
};

using MultiMarket = MultiMarketT<double>;
using SimplexType = SimplexTypeT<double>;
using MultiMenu = MultiMenuT<double>;

enum class PriceTie { Lowest, Highest };

template <typename Scalar>
struct PriceChoice {
  Eigen::Index index = 0;
  Scalar profit{0};
};

// Joint masses θ(v)·π(s|v) for one realization.
template <typename Scalar>
Vector<Scalar> realization_masses(const SimplexTypeT<Scalar>& theta,
                                  const FiniteSignalT<Scalar>& sig, Eigen::Index s) {
  Vector<Scalar> m(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) m(i) = theta(i) * sig(i, s);
  return m;
}

template <typename Scalar>
SimplexTypeT<Scalar> posterior_many(const SimplexTypeT<Scalar>& theta,
                                    const FiniteSignalT<Scalar>& sig, Eigen::Index s) {
  require(s >= 0 && s < sig.realization_count(), ErrorCode::InvalidArgument,
          "realization index out of range");
  Vector<Scalar> m = realization_masses(theta, sig, s);
  const Scalar total = m.sum();
  require(total > Scalar(0), ErrorCode::ZeroProbabilityRealization,
          "realization has zero probability under this type");
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Scalar(m(i) / total);
  return SimplexTypeT<Scalar>(std::move(m));
}

// Best posted price against (possibly unnormalized) value masses; profit is
// in the same units as the masses.
template <typename Scalar>
PriceChoice<Scalar> optimal_price_masses(const Vector<Scalar>& masses,
                                         const MultiMarketT<Scalar>& mkt,
                                         PriceTie tie = PriceTie::Lowest) {
  PriceChoice<Scalar> best;
  Scalar tail(0);
  std::vector<Scalar> profit(static_cast<std::size_t>(mkt.size()));
  for (Eigen::Index j = mkt.size() - 1; j >= 0; --j) {
    tail += masses(j);
    profit[static_cast<std::size_t>(j)] = mkt.value(j) * tail;
  }
  best.index = 0;
  best.profit = profit[0];
  for (Eigen::Index j = 1; j < mkt.size(); ++j) {
    const Scalar& p = profit[static_cast<std::size_t>(j)];
    if (p > best.profit || (tie == PriceTie::Highest && p == best.profit)) {
      best.index = j;
      best.profit = p;
    }
  }
  return best;
}

template <typename Scalar>
PriceChoice<Scalar> optimal_price_many(const SimplexTypeT<Scalar>& belief,
                                       const MultiMarketT<Scalar>& mkt,
                                       PriceTie tie = PriceTie::Lowest) {
  return optimal_price_masses(belief.probs(), mkt, tie);
}

// Expected profit of a type that prices optimally after each realization.
template <typename Scalar>
Scalar type_signal_value(const SimplexTypeT<Scalar>& theta, const FiniteSignalT<Scalar>& sig,
                         const MultiMarketT<Scalar>& mkt, PriceTie tie = PriceTie::Lowest) {
  Scalar total(0);
  for (Eigen::Index s = 0; s < sig.realization_count(); ++s) {
    total += optimal_price_masses(realization_masses(theta, sig, s), mkt, tie).profit;
  }
  return total;
}

template <typename Scalar>
struct ManyIcReport {
  bool ok = true;
  Matrix<Scalar> gains;  // gains(i,j): value of θ_i from signal j minus own
  Scalar worst{0};
  std::size_t strict_violations = 0;
};

template <typename Scalar>
ManyIcReport<Scalar> menu_ic_check_many(const MultiMenuT<Scalar>& menu,
                                        const MultiMarketT<Scalar>& mkt,
                                        PriceTie tie = PriceTie::Lowest) {
  menu.validate(mkt);
  const auto n = static_cast<Eigen::Index>(menu.types.size());
  ManyIcReport<Scalar> report;
  report.gains = Matrix<Scalar>::Zero(n, n);
  Scalar tol(0);
  if constexpr (!std::numeric_limits<Scalar>::is_exact) tol = Scalar(1e-9);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& theta = menu.types[static_cast<std::size_t>(i)];
    const Scalar own = type_signal_value(theta, menu.signals[static_cast<std::size_t>(i)], mkt, tie);
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar gain =
          type_signal_value(theta, menu.signals[static_cast<std::size_t>(j)], mkt, tie) - own;
      report.gains(i, j) = gain;
      if (gain > report.worst) report.worst = gain;
      if (gain > tol) {
        report.ok = false;
        ++report.strict_violations;
      }
    }
  }
  return report;
}

// Every buyer value with positive probability is served after every
// realization, given truthful selection and optimal pricing.
template <typename Scalar>
bool efficient_outcome_check(const MultiMenuT<Scalar>& menu, const MultiMarketT<Scalar>& mkt,
                             PriceTie tie = PriceTie::Lowest) {
  menu.validate(mkt);
  for (std::size_t k = 0; k < menu.types.size(); ++k) {
    const auto& sig = menu.signals[k];
    for (Eigen::Index s = 0; s < sig.realization_count(); ++s) {
      const Vector<Scalar> m = realization_masses(menu.types[k], sig, s);
      const Eigen::Index p = optimal_price_masses(m, mkt, tie).index;
      for (Eigen::Index i = 0; i < p; ++i) {
        if (m(i) > Scalar(0)) return false;
      }
    }
  }
  return true;
}

template <typename Scalar>
struct MenuWelfare {
  Scalar buyer_surplus{0};
  Scalar seller_profit{0};
  std::vector<Scalar> type_profits;
};

template <typename Scalar>
MenuWelfare<Scalar> menu_welfare(const MultiMenuT<Scalar>& menu, const MultiMarketT<Scalar>& mkt,
                                 PriceTie tie = PriceTie::Lowest) {
  menu.validate(mkt);
  MenuWelfare<Scalar> out;
  for (std::size_t k = 0; k < menu.types.size(); ++k) {
    const auto& sig = menu.signals[k];
    Scalar profit(0);
    Scalar surplus(0);
    for (Eigen::Index s = 0; s < sig.realization_count(); ++s) {
      const Vector<Scalar> m = realization_masses(menu.types[k], sig, s);
      const PriceChoice<Scalar> choice = optimal_price_masses(m, mkt, tie);
      profit += choice.profit;
      const Scalar& price = mkt.value(choice.index);
      for (Eigen::Index i = choice.index; i < mkt.size(); ++i) {
        surplus += m(i) * (mkt.value(i) - price);
      }
    }
    out.type_profits.push_back(profit);
    out.seller_profit += menu.weights[k] * profit;
    out.buyer_surplus += menu.weights[k] * surplus;
  }
  return out;
}

namespace detail {

template <typename Scalar>
Scalar abs_value(const Scalar& v) {
  return v < Scalar(0) ? Scalar(-v) : v;
}

template <typename Scalar>
Scalar feasibility_tolerance() {
  if constexpr (std::numeric_limits<Scalar>::is_exact) {
    return Scalar(0);
  } else {
    return Scalar(1e-9);
  }
}

// Solves the square system a·x = b by elimination with partial pivoting;
// nullopt when singular.
template <typename Scalar>
std::optional<Vector<Scalar>> solve_square(Matrix<Scalar> a, Vector<Scalar> b) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (abs_value<Scalar>(a(r, col)) > abs_value<Scalar>(a(pivot, col))) pivot = r;
    }
    if (abs_value<Scalar>(a(pivot, col)) <= Scalar(std::numeric_limits<Scalar>::is_exact ? 0 : 1e-12)) {
      return std::nullopt;
    }
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      std::swap(b(pivot), b(col));
    }
    for (Eigen::Index r = col + 1; r < n; ++r) {
      const Scalar f = a(r, col) / a(col, col);
      if (f == Scalar(0)) continue;
      for (Eigen::Index c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b(r) -= f * b(col);
    }
  }
  Vector<Scalar> x(n);
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    Scalar acc = b(r);
    for (Eigen::Index c = r + 1; c < n; ++c) acc -= a(r, c) * x(c);
    x(r) = acc / a(r, r);
  }
  return x;
}

}  // namespace detail

// Maximizes c·x over {a·x <= b} by enumerating vertices; ties on c go to the
// larger tie_c·x. Intended for a handful of variables.
template <typename Scalar>
std::optional<Vector<Scalar>> maximize_by_vertices(const Vector<Scalar>& c,
                                                   const Vector<Scalar>& tie_c,
                                                   const Matrix<Scalar>& a,
                                                   const Vector<Scalar>& b) {
  const Eigen::Index d = a.cols();
  const Eigen::Index m = a.rows();
  const Scalar tol = detail::feasibility_tolerance<Scalar>();
  std::optional<Vector<Scalar>> best;
  Scalar best_value(0);
  Scalar best_tie(0);
  std::vector<Eigen::Index> pick(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) pick[static_cast<std::size_t>(i)] = i;
  if (d > m) return std::nullopt;
  while (true) {
    Matrix<Scalar> sub(d, d);
    Vector<Scalar> rhs(d);
    for (Eigen::Index r = 0; r < d; ++r) {
      sub.row(r) = a.row(pick[static_cast<std::size_t>(r)]);
      rhs(r) = b(pick[static_cast<std::size_t>(r)]);
    }
    if (auto x = detail::solve_square<Scalar>(sub, rhs)) {
      bool feasible = true;
      for (Eigen::Index r = 0; r < m && feasible; ++r) {
        Scalar lhs(0);
        for (Eigen::Index k = 0; k < d; ++k) lhs += a(r, k) * (*x)(k);
        feasible = lhs <= Scalar(b(r) + tol);
      }
      if (feasible) {
        Scalar value(0);
        Scalar tie(0);
        for (Eigen::Index k = 0; k < d; ++k) {
          value += c(k) * (*x)(k);
          tie += tie_c(k) * (*x)(k);
        }
        const bool better = !best || value > Scalar(best_value + tol) ||
                            (value >= Scalar(best_value - tol) && tie > Scalar(best_tie + tol));
        if (better) {
          best = std::move(x);
          best_value = value;
          best_tie = tie;
        }
      }
    }
    // Next combination of d rows out of m.
    Eigen::Index i = d - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - d + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (Eigen::Index k = i + 1; k < d; ++k) {
      pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
  }
  return best;
}

template <typename Scalar>
struct MinRentResult {
  FiniteSignalT<Scalar> signal;  // column 0 recommends the lowest price
  Scalar profit;                 // target type's profit
};

// Two-realization public signal: every v_1 buyer and as many higher-value
// buyers as obedience allows go to the low-price realization; the target
// type's profit is minimized and the residual realization priced optimally
// for it. Exact for up to four values.
template <typename Scalar>
MinRentResult<Scalar> min_rent_efficient_public(const MultiMarketT<Scalar>& mkt,
                                                const std::vector<SimplexTypeT<Scalar>>& types,
                                                std::size_t target) {
  const Eigen::Index n = mkt.size();
  require(n <= 4, ErrorCode::InvalidArgument, "vertex enumeration limited to four values");
  require(target < types.size(), ErrorCode::InvalidArgument, "target type out of range");
  const Eigen::Index nx = n - 1;  // x_i = π(s_0 | v_i), i = 2..n
  const Eigen::Index d = nx + 1;  // plus the epigraph variable z
  const Scalar& v1 = mkt.value(0);
  const auto& tt = types[target];

  std::vector<Vector<Scalar>> rows;
  std::vector<Scalar> rhs;
  auto add = [&](Vector<Scalar> row, Scalar bound) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(bound));
  };
  // Obedience at s_0: v_1·mass(s_0) >= v_j·mass(v >= v_j, s_0).
  for (const auto& th : types) {
    for (Eigen::Index j = 1; j < n; ++j) {
      Vector<Scalar> row = Vector<Scalar>::Zero(d);
      for (Eigen::Index i = 1; i < n; ++i) {
        row(i - 1) = ((i >= j) ? Scalar(mkt.value(j) - v1) : Scalar(-v1)) * th(i);
      }
      add(std::move(row), Scalar(v1 * th(0)));
    }
  }
  for (Eigen::Index i = 0; i < nx; ++i) {
    Vector<Scalar> up = Vector<Scalar>::Zero(d);
    up(i) = Scalar(1);
    add(up, Scalar(1));
    Vector<Scalar> down = Vector<Scalar>::Zero(d);
    down(i) = Scalar(-1);
    add(down, Scalar(0));
  }
  // z >= target profit for each residual price.
  for (Eigen::Index j = 0; j < n; ++j) {
    Vector<Scalar> row = Vector<Scalar>::Zero(d);
    Scalar constant = v1 * tt(0);
    for (Eigen::Index i = 1; i < n; ++i) {
      const Scalar residual_coeff = i >= j ? Scalar(mkt.value(j) * tt(i)) : Scalar(0);
      row(i - 1) = v1 * tt(i) - residual_coeff;
      constant += residual_coeff;
    }
    row(nx) = Scalar(-1);
    add(std::move(row), Scalar(-constant));
  }
  {
    Vector<Scalar> cap = Vector<Scalar>::Zero(d);
    cap(nx) = Scalar(1);
    add(cap, Scalar(Scalar(2) * mkt.value(n - 1)));
  }

  Matrix<Scalar> a(static_cast<Eigen::Index>(rows.size()), d);
  Vector<Scalar> b(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
    b(static_cast<Eigen::Index>(r)) = rhs[r];
  }
  Vector<Scalar> c = Vector<Scalar>::Zero(d);
  c(nx) = Scalar(-1);
  Vector<Scalar> tie_c = Vector<Scalar>::Ones(d);
  tie_c(nx) = Scalar(0);
  const auto x = maximize_by_vertices<Scalar>(c, tie_c, a, b);
  require(x.has_value(), ErrorCode::InfeasibleConstraints, "no obedient pooling signal");

  Matrix<Scalar> lik(n, 2);
  lik(0, 0) = Scalar(1);
  lik(0, 1) = Scalar(0);
  for (Eigen::Index i = 1; i < n; ++i) {
    lik(i, 0) = (*x)(i - 1);
    lik(i, 1) = Scalar(1) - (*x)(i - 1);
  }
  FiniteSignalT<Scalar> sig(std::move(lik));
  const Scalar profit = type_signal_value(tt, sig, mkt, PriceTie::Lowest);
  return {std::move(sig), profit};
}

// Efficient direct signal for a single type that pools as much higher-value
// mass as obedience allows into each price recommendation, lowest first.
// Column j recommends price v_j.
template <typename Scalar>
FiniteSignalT<Scalar> efficient_pooling_signal(const SimplexTypeT<Scalar>& theta,
                                               const MultiMarketT<Scalar>& mkt) {
  const Eigen::Index n = mkt.size();
  require(n <= 4, ErrorCode::InvalidArgument, "vertex enumeration limited to four values");
  Matrix<Scalar> lik = Matrix<Scalar>::Zero(n, n);
  Vector<Scalar> left = Vector<Scalar>::Ones(n);  // unassigned fraction per value
  for (Eigen::Index j = 0; j + 1 < n; ++j) {
    lik(j, j) = left(j);
    const Scalar base = theta(j) * left(j);
    const Eigen::Index d = n - 1 - j;
    std::vector<Vector<Scalar>> rows;
    std::vector<Scalar> rhs;
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Vector<Scalar> row(d);
      for (Eigen::Index i = j + 1; i < n; ++i) {
        const Scalar mass = theta(i) * left(i);
        row(i - j - 1) = (i >= k ? Scalar(mkt.value(k) - mkt.value(j)) : Scalar(-mkt.value(j))) * mass;
      }
      rows.push_back(row);
      rhs.push_back(Scalar(mkt.value(j) * base));
    }
    for (Eigen::Index i = 0; i < d; ++i) {
      Vector<Scalar> up = Vector<Scalar>::Zero(d);
      up(i) = Scalar(1);
      rows.push_back(up);
      rhs.push_back(Scalar(1));
      Vector<Scalar> down = Vector<Scalar>::Zero(d);
      down(i) = Scalar(-1);
      rows.push_back(down);
      rhs.push_back(Scalar(0));
    }
    Matrix<Scalar> a(static_cast<Eigen::Index>(rows.size()), d);
    Vector<Scalar> b(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      a.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
      b(static_cast<Eigen::Index>(r)) = rhs[r];
    }
    Vector<Scalar> c(d);
    for (Eigen::Index i = j + 1; i < n; ++i) c(i - j - 1) = theta(i) * left(i);
    const auto y = maximize_by_vertices<Scalar>(c, Vector<Scalar>::Zero(d), a, b);
    require(y.has_value(), ErrorCode::InfeasibleConstraints, "no obedient pooling");
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const Scalar moved = left(i) * (*y)(i - j - 1);
      lik(i, j) = moved;
      left(i) -= moved;
    }
    left(j) = Scalar(0);
  }
  lik(n - 1, n - 1) = left(n - 1);
  return FiniteSignalT<Scalar>(std::move(lik));
}

// The three-type, three-value counterexample menu, in any scalar type.
template <typename Scalar>
struct ExampleSetup {
  MultiMarketT<Scalar> market;
  MultiMenuT<Scalar> menu;
  FiniteSignalT<Scalar> pooled;  // the min-rent efficient public signal
};

template <typename Scalar>
ExampleSetup<Scalar> three_type_example(const Vector<Scalar>& values) {
  const Scalar half = Scalar(1) / Scalar(2);
  const Scalar third = Scalar(1) / Scalar(3);
  const Scalar quarter = Scalar(1) / Scalar(4);
  auto vec3 = [](Scalar a, Scalar b, Scalar c) {
    Vector<Scalar> v(3);
    v << a, b, c;
    return v;
  };
  auto mat = [](Scalar a, Scalar b, Scalar c, Scalar d, Scalar e, Scalar f) {
    Matrix<Scalar> m(3, 2);
    m << a, b, c, d, e, f;
    return m;
  };
  MultiMenuT<Scalar> menu;
  menu.types = {SimplexTypeT<Scalar>(vec3(half, quarter, quarter)),
                SimplexTypeT<Scalar>(vec3(half, half, Scalar(0))),
                SimplexTypeT<Scalar>(vec3(half, Scalar(0), half))};
  menu.weights = {third, third, Scalar(Scalar(1) - third - third)};
  const FiniteSignalT<Scalar> shared(mat(Scalar(1), Scalar(0), half, half, half, half));
  const FiniteSignalT<Scalar> third_type(
      mat(Scalar(1), Scalar(0), Scalar(Scalar(2) / Scalar(3)), third, third,
          Scalar(Scalar(2) / Scalar(3))));
  menu.signals = {shared, shared, third_type};
  const FiniteSignalT<Scalar> pooled(
      mat(Scalar(1), Scalar(0), half, half, third, Scalar(Scalar(2) / Scalar(3))));
  return {MultiMarketT<Scalar>(values), std::move(menu), pooled};
}

}  // namespace infodesign::many
