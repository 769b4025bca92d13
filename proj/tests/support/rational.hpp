#pragma once

#include "infodesign/rational.hpp"

namespace infodesign::test {

using Q = Rational;

inline Q q(long num, long den = 1) {
  Q r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace infodesign::test
