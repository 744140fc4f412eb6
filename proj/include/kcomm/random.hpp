#pragma once

#include <cstdint>
#include <random>

#include "kcomm/mat2.hpp"

namespace kcomm {

using Rng = std::mt19937_64;

/// Deterministic generator for (seed, stream) so that independent iterations
/// can be replayed in any order.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

namespace detail {

inline Rational random_small_rational(Rng& rng) {
  std::uniform_int_distribution<long> num(-6, 6);
  std::uniform_int_distribution<long> den(1, 5);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace detail

/// Small-height random scalar: rationals with |p| <= 6, 1 <= q <= 5 for the
/// exact fields, uniform on [-1, 1] per component for the float fields.
template <FieldScalar T>
T random_scalar(Rng& rng) {
  constexpr FieldKind kind = scalar_traits<T>::kind;
  if constexpr (kind == FieldKind::RationalQ) {
    return detail::random_small_rational(rng);
  } else if constexpr (kind == FieldKind::GaussianQi) {
    Rational re = detail::random_small_rational(rng);
    Rational im = detail::random_small_rational(rng);
    return Gaussian(std::move(re), std::move(im));
  } else if constexpr (kind == FieldKind::FloatR) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  } else {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double re = u(rng);
    return Complex(re, u(rng));
  }
}

template <FieldScalar T>
T random_nonzero_scalar(Rng& rng, const Field<T>& field = {}) {
  for (;;) {
    T x = random_scalar<T>(rng);
    if (!field.is_zero(x) && scalar_traits<T>::magnitude(x) > 1e-3) return x;
  }
}

template <FieldScalar T>
Mat2<T> random_matrix(Rng& rng) {
  T a = random_scalar<T>(rng);
  T b = random_scalar<T>(rng);
  T c = random_scalar<T>(rng);
  T d = random_scalar<T>(rng);
  return {std::move(a), std::move(b), std::move(c), std::move(d)};
}

template <FieldScalar T>
Vec2<T> random_nonzero_vector(Rng& rng, const Field<T>& field = {}) {
  for (;;) {
    Vec2<T> v{random_scalar<T>(rng), random_scalar<T>(rng)};
    if (std::max(scalar_traits<T>::magnitude(v[0]), scalar_traits<T>::magnitude(v[1])) > 1e-3 &&
        !(field.is_zero(v[0]) && field.is_zero(v[1])))
      return v;
  }
}

template <FieldScalar T>
RankOneFactor<T> random_rank_one(Rng& rng, const Field<T>& field = {}) {
  Vec2<T> x = random_nonzero_vector<T>(rng, field);
  Vec2<T> f = random_nonzero_vector<T>(rng, field);
  return {std::move(x), std::move(f)};
}

/// Random N with N^2 = 0 (possibly zero): x f^* with f^* x = 0.
template <FieldScalar T>
Mat2<T> random_nilpotent(Rng& rng) {
  const T s = random_scalar<T>(rng);
  const T t = random_scalar<T>(rng);
  const T c = random_scalar<T>(rng);
  // x = (s, t), f^* = c * (-t, s) so that f^* x = 0.
  return {-(c * s * t), c * s * s, -(c * t * t), c * s * t};
}

}  // namespace kcomm
