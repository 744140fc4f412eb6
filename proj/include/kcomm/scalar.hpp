#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "kcomm/error.hpp"

namespace kcomm {

using Integer = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

enum class FieldKind { RationalQ, GaussianQi, FloatR, FloatC };

inline constexpr double default_tolerance = 1e-9;

/// Runtime description of a scalar field. The tolerance is only consulted
/// by the float variants.
struct FieldTag {
  FieldKind kind = FieldKind::RationalQ;
  double tolerance = default_tolerance;

  friend bool operator==(const FieldTag&, const FieldTag&) = default;
};

constexpr std::string_view field_name(FieldKind kind) {
  switch (kind) {
    case FieldKind::RationalQ: return "Q";
    case FieldKind::GaussianQi: return "Qi";
    case FieldKind::FloatR: return "R64";
    case FieldKind::FloatC: return "C64";
  }
  return "?";
}

inline FieldKind parse_field_name(std::string_view name) {
  if (name == "Q") return FieldKind::RationalQ;
  if (name == "Qi") return FieldKind::GaussianQi;
  if (name == "R64") return FieldKind::FloatR;
  if (name == "C64") return FieldKind::FloatC;
  throw Error(ErrorCode::InvalidInput, "unknown field '" + std::string(name) + "' (expected Q, Qi, R64 or C64)");
}

/// Parses "p/q" or "n" into a canonical rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorCode::InvalidInput, "malformed rational '" + s + "'"); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  Integer num, den = 1;
  auto digits_ok = [](std::string_view d) {
    if (!d.empty() && (d.front() == '-' || d.front() == '+')) d.remove_prefix(1);
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const std::string_view sv(s);
  const auto num_part = sv.substr(0, slash);
  if (!digits_ok(num_part)) throw bad();
  num.set_str(std::string(num_part[0] == '+' ? num_part.substr(1) : num_part), 10);
  if (slash != std::string::npos) {
    const auto den_part = sv.substr(slash + 1);
    if (!digits_ok(den_part)) throw bad();
    den.set_str(std::string(den_part[0] == '+' ? den_part.substr(1) : den_part), 10);
    if (den == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + s + "'");
  }
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// An element re + im*i of the Gaussian rationals.
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Gaussian i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  Gaussian conj() const { return {re_, -im_}; }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }

  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    const Rational n = o.norm();
    if (n == 0) throw std::domain_error("Gaussian division by zero");
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re_ + b.re_, a.im_ + b.im_}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re_ - b.re_, a.im_ - b.im_}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

 private:
  Rational re_{0};
  Rational im_{0};
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr FieldKind kind = FieldKind::RationalQ;
  static constexpr bool exact = true;
  static Rational from_integer(const Integer& z) { return Rational(z); }
  static Rational conj(const Rational& x) { return x; }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
  static std::string to_string(const Rational& x) { return x.get_str(); }
};

template <>
struct scalar_traits<Gaussian> {
  static constexpr FieldKind kind = FieldKind::GaussianQi;
  static constexpr bool exact = true;
  static Gaussian from_integer(const Integer& z) { return Gaussian(Rational(z)); }
  static Gaussian conj(const Gaussian& x) { return x.conj(); }
  static double magnitude(const Gaussian& x) { return std::hypot(x.re().get_d(), x.im().get_d()); }
  static std::string to_string(const Gaussian& x) {
    if (x.im() == 0) return x.re().get_str();
    const std::string im = x.im().get_str() + "i";
    if (x.re() == 0) return im;
    return x.re().get_str() + (x.im() > 0 ? "+" : "") + im;
  }
};

template <>
struct scalar_traits<double> {
  static constexpr FieldKind kind = FieldKind::FloatR;
  static constexpr bool exact = false;
  static double from_integer(const Integer& z) { return z.get_d(); }
  static double conj(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
  static std::string to_string(double x) { return std::to_string(x); }
};

template <>
struct scalar_traits<Complex> {
  static constexpr FieldKind kind = FieldKind::FloatC;
  static constexpr bool exact = false;
  static Complex from_integer(const Integer& z) { return {z.get_d(), 0.0}; }
  static Complex conj(const Complex& x) { return std::conj(x); }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static std::string to_string(const Complex& x) {
    return "(" + std::to_string(x.real()) + "," + std::to_string(x.imag()) + ")";
  }
};

template <class T>
concept FieldScalar = requires(const T& a, const T& b) {
  { scalar_traits<T>::kind } -> std::convertible_to<FieldKind>;
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
};

template <FieldScalar T>
T from_int(long v) {
  return scalar_traits<T>::from_integer(Integer(v));
}

template <FieldScalar T>
T conj(const T& x) {
  return scalar_traits<T>::conj(x);
}

/// A field of scalars of type T together with its comparison policy.
template <FieldScalar T>
class Field {
 public:
  using traits = scalar_traits<T>;

  Field() = default;
  explicit Field(double tolerance) : tolerance_(tolerance) {
    if (!(tolerance >= 0.0)) throw Error(ErrorCode::InvalidInput, "tolerance must be nonnegative");
  }
  /// Adopts the tolerance of `tag`; the kind must match T.
  explicit Field(const FieldTag& tag) : Field(tag.tolerance) {
    if (tag.kind != traits::kind)
      throw Error(ErrorCode::FieldMismatch, "field tag " + std::string(field_name(tag.kind)) +
                                                " does not match scalar type " + std::string(field_name(traits::kind)));
  }

  static constexpr FieldKind kind() { return traits::kind; }
  static constexpr bool exact() { return traits::exact; }
  double tolerance() const { return tolerance_; }
  FieldTag tag() const { return {traits::kind, tolerance_}; }

  bool is_zero(const T& x) const {
    if constexpr (traits::exact)
      return x == T(0);
    else
      return traits::magnitude(x) <= tolerance_;
  }
  bool eq(const T& a, const T& b) const {
    if constexpr (traits::exact)
      return a == b;
    else
      return traits::magnitude(a - b) <= tolerance_;
  }

 private:
  double tolerance_ = default_tolerance;
};

/// Equality under the comparison policy of `field`; throws FieldMismatch if
/// `field` does not describe T.
template <FieldScalar T>
bool scalar_eq(const T& a, const T& b, const FieldTag& field) {
  return Field<T>(field).eq(a, b);
}

template <FieldScalar T>
T power(T base, unsigned long exponent) {
  T result = from_int<T>(1);
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1u;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// All z in the field with z^m = 1, ordered by argument in [0, 2*pi).
template <FieldScalar T>
std::vector<T> roots_of_unity(unsigned long m) {
  if (m == 0) throw Error(ErrorCode::InvalidOrder, "roots of unity need order m >= 1");
  std::vector<T> roots;
  constexpr FieldKind kind = scalar_traits<T>::kind;
  if constexpr (kind == FieldKind::RationalQ || kind == FieldKind::FloatR) {
    roots.push_back(from_int<T>(1));
    if (m % 2 == 0) roots.push_back(from_int<T>(-1));
  } else if constexpr (kind == FieldKind::GaussianQi) {
    // The units of Z[i] are the only roots of unity in Q(i).
    for (const Gaussian& z : {Gaussian(1), Gaussian::i(), Gaussian(-1), -Gaussian::i()})
      if (power(z, m) == Gaussian(1)) roots.push_back(z);
  } else {
    roots.reserve(m);
    for (unsigned long j = 0; j < m; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(m);
      roots.push_back(std::polar(1.0, angle));
    }
  }
  return roots;
}

}  // namespace kcomm
