#pragma once

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "c0model/inner.hpp"
#include "c0model/linalg.hpp"
#include "c0model/types.hpp"

namespace c0::test {

inline BlaschkeProduct simple(std::initializer_list<Complex> roots) {
  std::vector<Complex> r(roots);
  return BlaschkeProduct::from_roots(r);
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

template <class F>
Complex circle_inner(F f, F g, int points = 4096) {
  Complex acc = 0.0;
  for (int k = 0; k < points; ++k) {
    const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / points);
    acc += f(z) * std::conj(g(z));
  }
  return acc / static_cast<double>(points);
}

#define CHECK_THROWS_CODE(expr, errc)                   \
  do {                                                  \
    bool thrown_ = false;                               \
    try {                                               \
      (void)(expr);                                     \
    } catch (const ::c0::Error& e_) {                   \
      thrown_ = true;                                   \
      CHECK_MESSAGE(e_.code() == (errc), std::string(e_.what()));    \
    }                                                   \
    CHECK_MESSAGE(thrown_, "expected c0::Error");       \
  } while (0)

}  // namespace c0::test
