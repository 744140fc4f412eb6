#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "kcomm/kcommutator.hpp"
#include "kcomm/linalg.hpp"
#include "kcomm/random.hpp"

namespace kcomm {

/// Outcome of a structural test. A failing verdict always names the matrix
/// at which the tested bracket is nonzero (`witness`) and that bracket value
/// (`detail`).
template <FieldScalar T>
struct Verdict {
  bool holds = true;
  std::optional<Mat2<T>> witness;
  std::optional<Mat2<T>> detail;

  static Verdict pass() { return {}; }
  static Verdict fail(Mat2<T> witness, Mat2<T> detail) { return {false, std::move(witness), std::move(detail)}; }
};

// ---------------------------------------------------------------------------
// Scalar detection through rank-one idempotent witnesses.

/// Rank-one idempotents probed by scalar_witness_test. E_11 together with
/// [[1,1],[0,0]] already forces Z to be scalar for every k >= 1; the others
/// are redundancy for float inputs.
template <FieldScalar T>
std::vector<Mat2<T>> scalar_witness_set() {
  const T one = from_int<T>(1);
  const T zero(0);
  const T half = one / from_int<T>(2);
  return {Mat2<T>::unit(1, 1), Mat2<T>::unit(2, 2), Mat2<T>(one, one, zero, zero), Mat2<T>(one, zero, one, zero),
          Mat2<T>(half, half, half, half)};
}

/// Holds iff [Z, A]_k = 0 for every witness A.
template <FieldScalar T>
Verdict<T> scalar_witness_test(const Mat2<T>& z, unsigned k, const Field<T>& field = {}) {
  if (k == 0) throw Error(ErrorCode::InvalidOrder, "scalar witness test needs k >= 1");
  Verdict<T> verdict = Verdict<T>::pass();
  for (const Mat2<T>& a : scalar_witness_set<T>()) {
    Mat2<T> bracket = kcomm_recursive(z, a, k);
    if (!is_zero(bracket, field)) {
      verdict = Verdict<T>::fail(a, std::move(bracket));
      break;
    }
  }
  if constexpr (Field<T>::exact()) {
    if (verdict.holds != is_scalar(z, field))
      throw std::logic_error("scalar witness test disagrees with the direct scalar check");
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Scalar-plus-nilpotent detection.

template <FieldScalar T>
struct SpectralVerdict {
  bool holds = false;
  T discriminant;
  std::optional<SpectralSplit<T>> split;
};

/// Authoritative classifier: S = lambda I + N with N^2 = 0 iff tr^2 - 4 det = 0.
template <FieldScalar T>
SpectralVerdict<T> scalar_plus_nilpotent_spectral(const Mat2<T>& s, const Field<T>& field = {}) {
  try {
    SpectralSplit<T> split = spectral_split(s, field);
    T disc = split.discriminant;
    return {true, std::move(disc), std::move(split)};
  } catch (const NotScalarPlusNilpotentError<T>& e) {
    return {false, e.discriminant(), std::nullopt};
  }
}

inline constexpr unsigned default_certifier_trials = 32;

/// Sampled certifier: checks [A, S]_k = 0 on the four matrix units and on
/// `trials` seeded random rank-one A. A pass is evidence, not proof; the
/// spectral test is the ground truth.
template <FieldScalar T>
Verdict<T> scalar_plus_nilpotent_kcomm(const Mat2<T>& s, unsigned k, unsigned trials = default_certifier_trials,
                                       std::uint64_t seed = 0, const Field<T>& field = {}) {
  if (k < 3) throw Error(ErrorCode::KTooSmall, "k-commutator criterion needs k >= 3, got k = " + std::to_string(k));
  std::vector<Mat2<T>> probes{Mat2<T>::unit(1, 1), Mat2<T>::unit(1, 2), Mat2<T>::unit(2, 1), Mat2<T>::unit(2, 2)};
  Rng rng = make_rng(seed);
  for (unsigned t = 0; t < trials; ++t) probes.push_back(to_matrix(random_rank_one<T>(rng, field)));
  for (Mat2<T>& a : probes) {
    Mat2<T> bracket = kcomm_recursive(a, s, k);
    if (!is_zero(bracket, field)) return Verdict<T>::fail(std::move(a), std::move(bracket));
  }
  return Verdict<T>::pass();
}

// ---------------------------------------------------------------------------
// Sandwich operators  T -> sum_i A_i T B_i.

template <FieldScalar T>
using MatPair = std::pair<Mat2<T>, Mat2<T>>;

/// Row-major vectorization (t11, t12, t21, t22).
template <FieldScalar T>
std::vector<T> vec(const Mat2<T>& m) {
  return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

template <FieldScalar T>
Mat2<T> unvec(const std::vector<T>& v) {
  return {v.at(0), v.at(1), v.at(2), v.at(3)};
}

template <FieldScalar T>
Mat2<T> apply_sandwich(const std::vector<MatPair<T>>& pairs, const Mat2<T>& t) {
  Mat2<T> sum;
  for (const auto& [a, b] : pairs) sum += a * t * b;
  return sum;
}

/// 4x4 matrix M with M * vec(T) = vec(sum_i A_i T B_i):
/// M[(p,q),(r,s)] = sum_i A_i[p][r] * B_i[s][q].
template <FieldScalar T>
Dense<T> sandwich_operator(const std::vector<MatPair<T>>& pairs) {
  if (pairs.empty()) throw Error(ErrorCode::EmptySystem, "sandwich operator of an empty list");
  Dense<T> m(4, 4);
  for (const auto& [a, b] : pairs)
    for (int p = 0; p < 2; ++p)
      for (int q = 0; q < 2; ++q)
        for (int r = 0; r < 2; ++r)
          for (int s = 0; s < 2; ++s) {
            T& cell = m(static_cast<std::size_t>(2 * p + q), static_cast<std::size_t>(2 * r + s));
            cell = cell + a(p, r) * b(s, q);
          }
  return m;
}

template <FieldScalar T>
struct SandwichSystem {
  std::vector<MatPair<T>> left;
  std::vector<MatPair<T>> right;
};

/// Which linear-independence hypothesis to use when extracting coefficients.
/// LeftFactors: A_i independent, solve B_i in span{D_j}.
/// RightFactors: B_i independent, solve A_i in span{C_j}.
enum class SolveMode { LeftFactors, RightFactors, Auto };

template <FieldScalar T>
struct NotAnIdentity {
  Mat2<T> witness;  // rank-one T where the sides differ
  Mat2<T> left_value;
  Mat2<T> right_value;
};

/// coefficients[i][j] expresses the i-th solved matrix in terms of the j-th
/// matrix of the right-hand system (D_j or C_j depending on `mode`).
template <FieldScalar T>
struct Coefficients {
  SolveMode mode = SolveMode::LeftFactors;
  std::vector<std::vector<T>> coefficients;
};

template <FieldScalar T>
using IdentitySolution = std::variant<NotAnIdentity<T>, Coefficients<T>>;

namespace detail {

/// For independent {X_i}, builds functionals phi_i with phi_i(X_l) = delta_il
/// (extended by zero on a complement) and returns phi_i(Y_j). Applying
/// phi_i (x) id to  sum X_i (x) U_i = sum Y_j (x) V_j  gives U_i = sum_j phi_i(Y_j) V_j.
template <FieldScalar T>
std::optional<std::vector<std::vector<T>>> dual_coefficients(const std::vector<Mat2<T>>& independent,
                                                             const std::vector<Mat2<T>>& others,
                                                             const Field<T>& field) {
  const std::size_t n = independent.size();
  if (n > 4) return std::nullopt;
  Dense<T> basis(4, 4);
  std::size_t filled = 0;
  auto try_add = [&](const std::vector<T>& v) {
    Dense<T> trial = basis;
    for (std::size_t r = 0; r < 4; ++r) trial(r, filled) = v[r];
    Dense<T> cols(4, filled + 1);
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c <= filled; ++c) cols(r, c) = trial(r, c);
    if (rank(cols, field) != filled + 1) return false;
    basis = std::move(trial);
    ++filled;
    return true;
  };
  for (const Mat2<T>& x : independent)
    if (!try_add(vec(x))) return std::nullopt;
  for (std::size_t e = 0; e < 4 && filled < 4; ++e) {
    std::vector<T> unit(4, T(0));
    unit[e] = from_int<T>(1);
    try_add(unit);
  }
  const auto inv = inverse(basis, field);
  if (!inv) return std::nullopt;
  std::vector<std::vector<T>> table(n, std::vector<T>(others.size(), T(0)));
  for (std::size_t j = 0; j < others.size(); ++j) {
    const std::vector<T> coords = *inv * vec(others[j]);
    for (std::size_t i = 0; i < n; ++i) table[i][j] = coords[i];
  }
  return table;
}

template <FieldScalar T>
Mat2<T> combine(const std::vector<T>& coeffs, const std::vector<Mat2<T>>& mats) {
  Mat2<T> sum;
  for (std::size_t j = 0; j < mats.size(); ++j) sum += coeffs[j] * mats[j];
  return sum;
}

}  // namespace detail

/// Decides whether sum A_i T B_i = sum C_j T D_j for every rank-one T and,
/// when it does, expresses the factors on one side through the other.
/// Equality is checked on the matrix units E_pq, which are rank one and span.
template <FieldScalar T>
IdentitySolution<T> rank_one_identity_solve(const SandwichSystem<T>& system, SolveMode mode = SolveMode::Auto,
                                            const Field<T>& field = {}) {
  if (system.left.empty() || system.right.empty())
    throw Error(ErrorCode::EmptySystem, "sandwich system needs nonempty left and right sides");
  const Dense<T> lhs = sandwich_operator(system.left);
  const Dense<T> rhs = sandwich_operator(system.right);
  for (int r = 1; r <= 2; ++r)
    for (int s = 1; s <= 2; ++s) {
      const std::size_t col = static_cast<std::size_t>(2 * (r - 1) + (s - 1));
      for (std::size_t row = 0; row < 4; ++row)
        if (!field.eq(lhs(row, col), rhs(row, col))) {
          Mat2<T> t = Mat2<T>::unit(r, s);
          Mat2<T> lv = apply_sandwich(system.left, t);
          Mat2<T> rv = apply_sandwich(system.right, t);
          return NotAnIdentity<T>{std::move(t), std::move(lv), std::move(rv)};
        }
    }

  auto firsts = [](const std::vector<MatPair<T>>& ps) {
    std::vector<Mat2<T>> out;
    for (const auto& p : ps) out.push_back(p.first);
    return out;
  };
  auto seconds = [](const std::vector<MatPair<T>>& ps) {
    std::vector<Mat2<T>> out;
    for (const auto& p : ps) out.push_back(p.second);
    return out;
  };

  auto attempt = [&](SolveMode m) -> std::optional<Coefficients<T>> {
    const bool left_factors = m == SolveMode::LeftFactors;
    const auto independent = left_factors ? firsts(system.left) : seconds(system.left);
    const auto others = left_factors ? firsts(system.right) : seconds(system.right);
    const auto targets = left_factors ? seconds(system.left) : firsts(system.left);
    const auto span = left_factors ? seconds(system.right) : firsts(system.right);
    auto table = detail::dual_coefficients(independent, others, field);
    if (!table) return std::nullopt;
    for (std::size_t i = 0; i < targets.size(); ++i)
      if (!approx_equal(detail::combine((*table)[i], span), targets[i], field))
        throw std::logic_error("recovered coefficients do not reproduce the factor");
    return Coefficients<T>{m, std::move(*table)};
  };

  if (mode != SolveMode::RightFactors)
    if (auto c = attempt(SolveMode::LeftFactors)) return std::move(*c);
  if (mode != SolveMode::LeftFactors)
    if (auto c = attempt(SolveMode::RightFactors)) return std::move(*c);
  throw Error(ErrorCode::SingularSystem,
              "identity holds but the required factors are linearly dependent; no coefficients extracted");
}

}  // namespace kcomm
