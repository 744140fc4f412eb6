#pragma once

#include <string>
#include <vector>

#include "kcomm/mat2.hpp"

namespace kcomm {

/// Binomial coefficient C(k, i) as an exact integer.
inline Integer binomial(unsigned long k, unsigned long i) {
  Integer c;
  mpz_bin_uiui(c.get_mpz_t(), k, i);
  return c;
}

/// [A,B]_0 = A and [A,B]_k = [[A,B]_{k-1}, B]. This is the reference
/// evaluator every other path is tested against.
template <FieldScalar T>
Mat2<T> kcomm_recursive(const Mat2<T>& a, const Mat2<T>& b, unsigned k) {
  Mat2<T> c = a;
  for (unsigned step = 0; step < k; ++step) c = commutator(c, b);
  return c;
}

/// Alternating binomial sum  sum_i (-1)^i C(k,i) B^i A B^(k-i).
/// Cayley-Hamilton writes B^n = p_n B + q_n I, so each term expands over
/// {BAB, BA, AB, A} and only scalar coefficients depend on i.
template <FieldScalar T>
Mat2<T> kcomm_closed(const Mat2<T>& a, const Mat2<T>& b, unsigned k) {
  const T tr = b.trace();
  const T det = b.det();
  std::vector<T> p{T(0)};
  std::vector<T> q{from_int<T>(1)};
  for (unsigned n = 0; n < k; ++n) {
    p.push_back(tr * p[n] + q[n]);
    q.push_back(-(det * p[n]));
  }

  T c_bab(0), c_ba(0), c_ab(0), c_a(0);
  for (unsigned i = 0; i <= k; ++i) {
    T s = scalar_traits<T>::from_integer(binomial(k, i));
    if (i % 2 == 1) s = -s;
    const T sp = s * p[i];
    const T sq = s * q[i];
    c_bab += sp * p[k - i];
    c_ba += sp * q[k - i];
    c_ab += sq * p[k - i];
    c_a += sq * q[k - i];
  }
  const Mat2<T> ba = b * a;
  const Mat2<T> ab = a * b;
  return c_bab * (ba * b) + c_ba * ba + c_ab * ab + c_a * a;
}

/// Idempotent Q gives [A,Q]_{k+2} = [A,Q]_k for k >= 1, so only [A,Q]_1 or
/// [A,Q]_2 is ever evaluated.
template <FieldScalar T>
Mat2<T> kcomm_idempotent_fast(const Mat2<T>& a, const Mat2<T>& q, unsigned k, const Field<T>& field = {}) {
  if (k == 0) throw Error(ErrorCode::InvalidOrder, "idempotent fast path needs k >= 1");
  if (!is_idempotent(q, field)) throw Error(ErrorCode::NotIdempotent, "second argument is not idempotent");
  return kcomm_recursive(a, q, k % 2 == 1 ? 1u : 2u);
}

/// [A,N]_k = 0 whenever N^2 = 0 and k >= 3.
template <FieldScalar T>
Mat2<T> kcomm_nilpotent_fast(const Mat2<T>& /*a*/, const Mat2<T>& n, unsigned k, const Field<T>& field = {}) {
  if (!is_nilpotent(n, field)) throw Error(ErrorCode::NotNilpotent, "second argument does not square to zero");
  if (k < 3)
    throw Error(ErrorCode::KTooSmall, "nilpotent annihilation needs k >= 3, got k = " + std::to_string(k));
  return Mat2<T>::zero();
}

/// [x f^*, S]_k = (beta - alpha)^k x f^*  when S x = alpha x and S^* f = conj(beta) f.
template <FieldScalar T>
Mat2<T> kcomm_eigenpair(const RankOneFactor<T>& factor, const Mat2<T>& s, const T& alpha, const T& beta, unsigned k,
                        const Field<T>& field = {}) {
  const Vec2<T> sx = s * factor.x;
  const Vec2<T> sf = conj_transpose(s) * factor.f;
  const T cbeta = conj(beta);
  for (std::size_t i = 0; i < 2; ++i) {
    if (!field.eq(sx[i], alpha * factor.x[i]))
      throw Error(ErrorCode::NotAnEigenpair, "S x != alpha x");
    if (!field.eq(sf[i], cbeta * factor.f[i]))
      throw Error(ErrorCode::NotAnEigenpair, "S^* f != conj(beta) f");
  }
  return power(T(beta - alpha), k) * to_matrix(factor);
}

enum class Method { Recursive, Closed, Auto };

/// Auto picks a structural fast path when B is idempotent (k >= 1) or
/// squares to zero (k >= 3), and falls back to the recursion otherwise.
template <FieldScalar T>
Mat2<T> kcomm(const Mat2<T>& a, const Mat2<T>& b, unsigned k, Method method = Method::Recursive,
              const Field<T>& field = {}) {
  switch (method) {
    case Method::Recursive: return kcomm_recursive(a, b, k);
    case Method::Closed: return kcomm_closed(a, b, k);
    case Method::Auto:
      if constexpr (Field<T>::exact()) {
        if (k >= 1 && is_idempotent(b, field)) return kcomm_idempotent_fast(a, b, k, field);
        if (k >= 3 && is_nilpotent(b, field)) return kcomm_nilpotent_fast(a, b, k, field);
      }
      return kcomm_recursive(a, b, k);
  }
  return kcomm_recursive(a, b, k);
}

/// Closed forms of the brackets used to pin down a preserving map on the
/// matrix units. Each returns the expected value of the bracket named in its
/// comment and serves as a golden fixture.
namespace identities {

/// [a E_12, E_11]_k = (-1)^k a E_12
template <FieldScalar T>
Mat2<T> scaled_e12_with_e11(const T& a, unsigned k) {
  const T sign = from_int<T>(k % 2 == 0 ? 1 : -1);
  return (sign * a) * Mat2<T>::unit(1, 2);
}

/// [E_11, E_12 + E_21]_k = 2^(k-1) (E_12 - E_21) for odd k, 2^(k-1) (E_11 - E_22) for even k >= 2.
template <FieldScalar T>
Mat2<T> e11_with_swap(unsigned k) {
  if (k == 0) return Mat2<T>::unit(1, 1);
  const T scale = scalar_traits<T>::from_integer(Integer(1) << (k - 1));
  if (k % 2 == 1) return scale * (Mat2<T>::unit(1, 2) - Mat2<T>::unit(2, 1));
  return scale * (Mat2<T>::unit(1, 1) - Mat2<T>::unit(2, 2));
}

/// [E_21, E_11 + E_12]_k = -E_11 - (1 + (-1)^k) E_12 + E_21 + E_22 for k >= 1.
template <FieldScalar T>
Mat2<T> e21_with_first_row(unsigned k) {
  if (k == 0) return Mat2<T>::unit(2, 1);
  const T c12 = from_int<T>(k % 2 == 0 ? -2 : 0);
  return {from_int<T>(-1), c12, from_int<T>(1), from_int<T>(1)};
}

}  // namespace identities

}  // namespace kcomm
