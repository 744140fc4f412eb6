#pragma once

#include <array>
#include <cassert>
#include <optional>
#include <string>

#include "kcomm/scalar.hpp"

namespace kcomm {

template <FieldScalar T>
using Vec2 = std::array<T, 2>;

/// 2x2 matrix, row-major (a11, a12, a21, a22).
template <FieldScalar T>
class Mat2 {
 public:
  Mat2() : a_{T(0), T(0), T(0), T(0)} {}
  Mat2(T a11, T a12, T a21, T a22) : a_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {}

  static Mat2 zero() { return {}; }
  static Mat2 identity() { return scalar(from_int<T>(1)); }
  static Mat2 scalar(const T& c) { return {c, T(0), T(0), c}; }
  static Mat2 diag(const T& a, const T& b) { return {a, T(0), T(0), b}; }
  /// Matrix unit E_ij with 1-based indices.
  static Mat2 unit(int i, int j) {
    assert(i >= 1 && i <= 2 && j >= 1 && j <= 2);
    Mat2 m;
    m(i - 1, j - 1) = from_int<T>(1);
    return m;
  }

  const T& operator()(int r, int c) const { return a_[static_cast<std::size_t>(2 * r + c)]; }
  T& operator()(int r, int c) { return a_[static_cast<std::size_t>(2 * r + c)]; }
  const std::array<T, 4>& entries() const { return a_; }

  T trace() const { return a_[0] + a_[3]; }
  T det() const { return a_[0] * a_[3] - a_[1] * a_[2]; }

  Mat2& operator+=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) a_[i] = a_[i] + o.a_[i];
    return *this;
  }
  Mat2& operator-=(const Mat2& o) {
    for (std::size_t i = 0; i < 4; ++i) a_[i] = a_[i] - o.a_[i];
    return *this;
  }
  Mat2& operator*=(const T& c) {
    for (auto& x : a_) x = x * c;
    return *this;
  }

  friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
  friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
  friend Mat2 operator-(const Mat2& a) { return {-a.a_[0], -a.a_[1], -a.a_[2], -a.a_[3]}; }
  friend Mat2 operator*(Mat2 a, const T& c) { return a *= c; }
  friend Mat2 operator*(const T& c, Mat2 a) { return a *= c; }
  friend Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
            a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)};
  }
  friend Vec2<T> operator*(const Mat2& a, const Vec2<T>& v) {
    return {a(0, 0) * v[0] + a(0, 1) * v[1], a(1, 0) * v[0] + a(1, 1) * v[1]};
  }

  /// Exact entrywise equality; use approx_equal for float fields.
  friend bool operator==(const Mat2& a, const Mat2& b) { return a.a_ == b.a_; }

 private:
  std::array<T, 4> a_;
};

template <FieldScalar T>
bool approx_equal(const Mat2<T>& a, const Mat2<T>& b, const Field<T>& field = {}) {
  for (std::size_t i = 0; i < 4; ++i)
    if (!field.eq(a.entries()[i], b.entries()[i])) return false;
  return true;
}

template <FieldScalar T>
bool is_zero(const Mat2<T>& a, const Field<T>& field = {}) {
  for (const T& x : a.entries())
    if (!field.is_zero(x)) return false;
  return true;
}

/// Largest entry magnitude.
template <FieldScalar T>
double max_norm(const Mat2<T>& a) {
  double m = 0.0;
  for (const T& x : a.entries()) m = std::max(m, scalar_traits<T>::magnitude(x));
  return m;
}

template <FieldScalar T>
Mat2<T> conj_transpose(const Mat2<T>& a) {
  return {conj(a(0, 0)), conj(a(1, 0)), conj(a(0, 1)), conj(a(1, 1))};
}

template <FieldScalar T>
Mat2<T> power(Mat2<T> base, unsigned long exponent) {
  Mat2<T> result = Mat2<T>::identity();
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// AB - BA expanded for 2x2: six products instead of sixteen.
template <FieldScalar T>
Mat2<T> commutator(const Mat2<T>& a, const Mat2<T>& b) {
  const T da = a(0, 0) - a(1, 1);
  const T db = b(0, 0) - b(1, 1);
  T d = a(0, 1) * b(1, 0) - b(0, 1) * a(1, 0);
  T off12 = b(0, 1) * da - a(0, 1) * db;
  T off21 = a(1, 0) * db - b(1, 0) * da;
  T neg = -d;
  return {std::move(d), std::move(off12), std::move(off21), std::move(neg)};
}

/// Scalar multiple of I (zero off-diagonal, equal diagonal).
template <FieldScalar T>
bool is_scalar(const Mat2<T>& a, const Field<T>& field = {}) {
  return field.is_zero(a(0, 1)) && field.is_zero(a(1, 0)) && field.eq(a(0, 0), a(1, 1));
}

template <FieldScalar T>
bool is_nilpotent(const Mat2<T>& a, const Field<T>& field = {}) {
  const bool squares_to_zero = is_zero(a * a, field);
  if constexpr (Field<T>::exact()) {
    const bool trace_det = a.trace() == T(0) && a.det() == T(0);
    if (squares_to_zero != trace_det) throw std::logic_error("nilpotency characterizations disagree");
  }
  return squares_to_zero;
}

template <FieldScalar T>
bool is_idempotent(const Mat2<T>& a, const Field<T>& field = {}) {
  return approx_equal(a * a, a, field);
}

/// Rank exactly one. Over float fields det is tested against
/// tolerance * (1 + |A|^2) so large entries do not hide a singular matrix.
template <FieldScalar T>
bool is_rank_one(const Mat2<T>& a, const Field<T>& field = {}) {
  if (is_zero(a, field)) return false;
  if constexpr (Field<T>::exact()) {
    return a.det() == T(0);
  } else {
    const double n = max_norm(a);
    return scalar_traits<T>::magnitude(a.det()) <= field.tolerance() * (1.0 + n * n);
  }
}

/// A = x f^*.
template <FieldScalar T>
struct RankOneFactor {
  Vec2<T> x;
  Vec2<T> f;
};

/// f^* x
template <FieldScalar T>
T pairing(const Vec2<T>& x, const Vec2<T>& f) {
  return conj(f[0]) * x[0] + conj(f[1]) * x[1];
}

template <FieldScalar T>
Mat2<T> outer(const Vec2<T>& x, const Vec2<T>& f) {
  return {x[0] * conj(f[0]), x[0] * conj(f[1]), x[1] * conj(f[0]), x[1] * conj(f[1])};
}

template <FieldScalar T>
Mat2<T> to_matrix(const RankOneFactor<T>& r) {
  return outer(r.x, r.f);
}

/// Canonical factorization: x is the first nonzero column scaled so its
/// leading nonzero entry is 1, f carries all of the scale.
template <FieldScalar T>
RankOneFactor<T> rank_one_factor(const Mat2<T>& a, const Field<T>& field = {}) {
  if (!is_rank_one(a, field)) throw Error(ErrorCode::RankNotOne, "matrix is not of rank one");
  const int col = (field.is_zero(a(0, 0)) && field.is_zero(a(1, 0))) ? 1 : 0;
  const int lead = field.is_zero(a(0, col)) ? 1 : 0;
  const T pivot = a(lead, col);
  RankOneFactor<T> r;
  r.x[static_cast<std::size_t>(lead)] = from_int<T>(1);
  r.x[static_cast<std::size_t>(1 - lead)] = lead == 0 ? a(1, col) / pivot : T(0);
  // Row `lead` of A equals x[lead] * f^* = f^*.
  r.f = {conj(a(lead, 0)), conj(a(lead, 1))};
  return r;
}

/// S = lambda*I + N with N^2 = 0; only exists when the discriminant vanishes.
template <FieldScalar T>
struct SpectralSplit {
  T lambda;
  Mat2<T> nilpotent;
  T discriminant;
};

template <FieldScalar T>
T discriminant(const Mat2<T>& s) {
  const T tr = s.trace();
  return tr * tr - from_int<T>(4) * s.det();
}

template <FieldScalar T>
class NotScalarPlusNilpotentError : public Error {
 public:
  explicit NotScalarPlusNilpotentError(T disc)
      : Error(ErrorCode::NotScalarPlusNilpotent,
              "discriminant " + scalar_traits<T>::to_string(disc) + " is nonzero; no scalar-plus-nilpotent split"),
        discriminant_(std::move(disc)) {}
  const T& discriminant() const { return discriminant_; }

 private:
  T discriminant_;
};

template <FieldScalar T>
SpectralSplit<T> spectral_split(const Mat2<T>& s, const Field<T>& field = {}) {
  T disc = discriminant(s);
  if (!field.is_zero(disc)) throw NotScalarPlusNilpotentError<T>(disc);
  T lambda = s.trace() / from_int<T>(2);
  Mat2<T> n = s - Mat2<T>::scalar(lambda);
  return {std::move(lambda), std::move(n), std::move(disc)};
}

}  // namespace kcomm
