#pragma once

#include <gtest/gtest.h>

#include <array>
#include <string>

#include "kcomm/kcomm.hpp"

namespace kcomm::test {

inline Rational q(const char* s) { return parse_rational(s); }
inline Gaussian qi(const char* re, const char* im) { return Gaussian(q(re), q(im)); }

template <class T = Rational>
Mat2<T> E(int i, int j) {
  return Mat2<T>::unit(i, j);
}

inline Mat2<Rational> mq(long a, long b, long c, long d) { return {Rational(a), Rational(b), Rational(c), Rational(d)}; }

// Reference arithmetic on bare nested arrays, independent of Mat2's operators.
namespace oracle {

template <class T>
using Raw = std::array<std::array<T, 2>, 2>;

template <class T>
Raw<T> raw(const Mat2<T>& m) {
  return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

template <class T>
Raw<T> mul(const Raw<T>& a, const Raw<T>& b) {
  Raw<T> c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      T s(0);
      for (int l = 0; l < 2; ++l) s = s + a[i][l] * b[l][j];
      c[i][j] = s;
    }
  return c;
}

template <class T>
Raw<T> sub(const Raw<T>& a, const Raw<T>& b) {
  Raw<T> c{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][j] - b[i][j];
  return c;
}

/// k-fold bracket by repeated AB - BA on raw arrays.
template <class T>
Mat2<T> bracket(const Mat2<T>& a, const Mat2<T>& b, unsigned k) {
  Raw<T> x = raw(a);
  const Raw<T> y = raw(b);
  for (unsigned s = 0; s < k; ++s) x = sub(mul(x, y), mul(y, x));
  return {x[0][0], x[0][1], x[1][0], x[1][1]};
}

template <class T>
Mat2<T> square(const Mat2<T>& a) {
  const Raw<T> x = mul(raw(a), raw(a));
  return {x[0][0], x[0][1], x[1][0], x[1][1]};
}

}  // namespace oracle

}  // namespace kcomm::test
