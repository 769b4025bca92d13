#pragma once

// Eigen traits for GMP rationals.

#include <gmpxx.h>

#include <Eigen/Core>

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};
}  // namespace Eigen

namespace infodesign {

// Exact scalar for the templated modules; needs gmp and gmpxx at link time.
using Rational = mpq_class;

}  // namespace infodesign
