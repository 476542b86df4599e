#pragma once

#include <cmath>

#include "jacobitk/check.hpp"

namespace test_support {

using namespace jacobitk;

inline double worst(const Comparison& c, const Samples& s) { return max_of(c.per_point(s)); }

inline double worst_equal(const Expr& a, const Expr& b, const Samples& s) {
  Comparison c;
  c.equal(a, b);
  return worst(c, s);
}

template <Variance V>
double worst_equal(const Alternating<V>& a, const Alternating<V>& b, const Samples& s) {
  Comparison c;
  c.equal(a, b);
  return worst(c, s);
}

template <Variance V>
double worst_zero(const Alternating<V>& a, const Samples& s) {
  Comparison c;
  c.zero(a);
  return worst(c, s);
}

inline double worst_zero(const Expr& a, const Samples& s) {
  Comparison c;
  c.zero(a);
  return worst(c, s);
}

}  // namespace test_support
