#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kcomm/classify.hpp"
#include "kcomm/kcommutator.hpp"
#include "kcomm/random.hpp"

namespace kcomm {

/// A map on M_2 known only through finitely many (input, output) samples.
template <FieldScalar T>
class MapTable {
 public:
  struct Entry {
    Mat2<T> in;
    Mat2<T> out;
  };

  explicit MapTable(unsigned k, Field<T> field = {}, std::string label = {})
      : k_(k), field_(field), label_(std::move(label)) {}

  unsigned k() const { return k_; }
  const Field<T>& field() const { return field_; }
  const std::string& label() const { return label_; }
  void set_label(std::string label) { label_ = std::move(label); }
  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Inputs must be pairwise distinct under the field's comparison.
  void insert(Mat2<T> in, Mat2<T> out) {
    if (index_of(in)) throw Error(ErrorCode::InvalidInput, "duplicate input in map table");
    entries_.push_back({std::move(in), std::move(out)});
  }

  std::optional<std::size_t> index_of(const Mat2<T>& in) const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (approx_equal(entries_[i].in, in, field_)) return i;
    return std::nullopt;
  }

  bool contains(const Mat2<T>& in) const { return index_of(in).has_value(); }

  const Mat2<T>& at(const Mat2<T>& in) const {
    const auto i = index_of(in);
    if (!i) throw Error(ErrorCode::InputNotInTable, "matrix is not an input of the map table");
    return entries_[*i].out;
  }

  void set_output(std::size_t i, Mat2<T> out) { entries_.at(i).out = std::move(out); }

  std::vector<Mat2<T>> inputs() const {
    std::vector<Mat2<T>> v;
    v.reserve(entries_.size());
    for (const auto& e : entries_) v.push_back(e.in);
    return v;
  }

 private:
  unsigned k_;
  Field<T> field_;
  std::string label_;
  std::vector<Entry> entries_;
};

/// Fixed probe inputs a table must cover before it can be decomposed:
/// E_11, E_22, E_12, E_21, E_11 + E_12, E_12 + E_21.
template <FieldScalar T>
std::vector<Mat2<T>> probe_set() {
  using M = Mat2<T>;
  return {M::unit(1, 1), M::unit(2, 2), M::unit(1, 2), M::unit(2, 1), M::unit(1, 1) + M::unit(1, 2),
          M::unit(1, 2) + M::unit(2, 1)};
}

/// Every ordered pair (A, B) of the given matrices, including A = B.
template <FieldScalar T>
std::vector<MatPair<T>> all_pairs(const std::vector<Mat2<T>>& mats) {
  std::vector<MatPair<T>> pairs;
  pairs.reserve(mats.size() * mats.size());
  for (const auto& a : mats)
    for (const auto& b : mats) pairs.emplace_back(a, b);
  return pairs;
}

// ---------------------------------------------------------------------------
// Errors with typed payloads.

template <FieldScalar T>
class LambdaNotRootOfUnityError : public Error {
 public:
  LambdaNotRootOfUnityError(T lambda, T power_value, unsigned exponent)
      : Error(ErrorCode::LambdaNotRootOfUnity,
              "lambda = " + scalar_traits<T>::to_string(lambda) + " has lambda^" + std::to_string(exponent) + " = " +
                  scalar_traits<T>::to_string(power_value) + " != 1"),
        lambda_(std::move(lambda)),
        power_(std::move(power_value)),
        exponent_(exponent) {}
  const T& lambda() const { return lambda_; }
  const T& power_value() const { return power_; }
  unsigned exponent() const { return exponent_; }

 private:
  T lambda_;
  T power_;
  unsigned exponent_;
};

/// Where a decomposition attempt broke down.
enum class Stage {
  DiagonalProbe,  // Phi(E_11) has a nonzero off-diagonal part
  NonzeroLambda,  // Phi(E_11) has equal diagonal entries, so lambda = 0
  ScalarResidue,  // Phi(A) - lambda A is not a multiple of I
};

constexpr std::string_view stage_name(Stage s) {
  switch (s) {
    case Stage::DiagonalProbe: return "diagonal-probe";
    case Stage::NonzeroLambda: return "nonzero-lambda";
    case Stage::ScalarResidue: return "scalar-residue";
  }
  return "?";
}

template <FieldScalar T>
class NotTheoremFormError : public Error {
 public:
  NotTheoremFormError(Stage stage, Mat2<T> input, std::optional<T> lambda, Mat2<T> residue)
      : Error(ErrorCode::NotTheoremForm, "map is not of the form lambda*A + h(A)*I (stage " +
                                             std::string(stage_name(stage)) + ")"),
        stage_(stage),
        input_(std::move(input)),
        lambda_(std::move(lambda)),
        residue_(std::move(residue)) {}
  Stage stage() const { return stage_; }
  const Mat2<T>& input() const { return input_; }
  const std::optional<T>& lambda() const { return lambda_; }
  const Mat2<T>& residue() const { return residue_; }

 private:
  Stage stage_;
  Mat2<T> input_;
  std::optional<T> lambda_;
  Mat2<T> residue_;
};

template <FieldScalar T>
struct PreservationVerdict {
  bool holds = true;
  std::size_t pairs_checked = 0;
  std::optional<MatPair<T>> pair;
  std::optional<Mat2<T>> mapped;    // [Phi(A), Phi(B)]_k
  std::optional<Mat2<T>> original;  // [A, B]_k
};

template <FieldScalar T>
class PreservationFailedError : public Error {
 public:
  explicit PreservationFailedError(PreservationVerdict<T> verdict)
      : Error(ErrorCode::PreservationFailed, "table violates [Phi(A), Phi(B)]_k = [A, B]_k"),
        verdict_(std::move(verdict)) {}
  const PreservationVerdict<T>& verdict() const { return verdict_; }

 private:
  PreservationVerdict<T> verdict_;
};

// ---------------------------------------------------------------------------
// Generation.

template <FieldScalar T>
using HRule = std::function<T(const Mat2<T>&)>;

template <FieldScalar T>
HRule<T> h_zero() {
  return [](const Mat2<T>&) { return T(0); };
}
template <FieldScalar T>
HRule<T> h_trace() {
  return [](const Mat2<T>& a) { return a.trace(); };
}
template <FieldScalar T>
HRule<T> h_det() {
  return [](const Mat2<T>& a) { return a.det(); };
}

/// One seeded random scalar per input, in input order.
template <FieldScalar T>
std::vector<T> random_h_values(std::size_t count, Rng& rng) {
  std::vector<T> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(random_scalar<T>(rng));
  return values;
}

template <FieldScalar T>
bool is_root_of_unity(const T& lambda, unsigned order, const Field<T>& field) {
  return field.eq(power(lambda, order), from_int<T>(1));
}

template <FieldScalar T>
void require_root_of_unity(const T& lambda, unsigned k, const Field<T>& field) {
  T p = power(lambda, k + 1);
  if (!field.eq(p, from_int<T>(1))) throw LambdaNotRootOfUnityError<T>(lambda, std::move(p), k + 1);
}

/// Table of A -> lambda A + h_i I with no constraint on lambda.
template <FieldScalar T>
MapTable<T> generate_map_unchecked(const T& lambda, const std::vector<T>& h_values,
                                   const std::vector<Mat2<T>>& inputs, unsigned k, const Field<T>& field = {}) {
  if (h_values.size() != inputs.size())
    throw Error(ErrorCode::InvalidInput, "h table has " + std::to_string(h_values.size()) + " values for " +
                                             std::to_string(inputs.size()) + " inputs");
  MapTable<T> table(k, field);
  for (std::size_t i = 0; i < inputs.size(); ++i)
    table.insert(inputs[i], lambda * inputs[i] + Mat2<T>::scalar(h_values[i]));
  return table;
}

/// Table of A -> lambda A + h_i I with h_i the i-th value; lambda^(k+1) must be 1.
template <FieldScalar T>
MapTable<T> generate_map(const T& lambda, const std::vector<T>& h_values, const std::vector<Mat2<T>>& inputs,
                         unsigned k, const Field<T>& field = {}) {
  if (k == 0) throw Error(ErrorCode::InvalidOrder, "preserving maps need k >= 1");
  require_root_of_unity(lambda, k, field);
  return generate_map_unchecked(lambda, h_values, inputs, k, field);
}

template <FieldScalar T>
MapTable<T> generate_map(const T& lambda, const HRule<T>& h, const std::vector<Mat2<T>>& inputs, unsigned k,
                         const Field<T>& field = {}) {
  std::vector<T> values;
  values.reserve(inputs.size());
  for (const auto& a : inputs) values.push_back(h(a));
  return generate_map(lambda, values, inputs, k, field);
}

// ---------------------------------------------------------------------------
// Verification.

template <FieldScalar T>
PreservationVerdict<T> verify_preserving(const MapTable<T>& table, const std::vector<MatPair<T>>& pairs) {
  const Field<T>& field = table.field();
  PreservationVerdict<T> verdict;
  for (const auto& [a, b] : pairs) {
    const Mat2<T>& pa = table.at(a);
    const Mat2<T>& pb = table.at(b);
    Mat2<T> mapped = kcomm_recursive(pa, pb, table.k());
    Mat2<T> original = kcomm_recursive(a, b, table.k());
    ++verdict.pairs_checked;
    if (!approx_equal(mapped, original, field)) {
      verdict.holds = false;
      verdict.pair = MatPair<T>{a, b};
      verdict.mapped = std::move(mapped);
      verdict.original = std::move(original);
      return verdict;
    }
  }
  return verdict;
}

template <FieldScalar T>
struct SumTriple {
  Mat2<T> a;
  Mat2<T> b;
  Mat2<T> sum;
};

template <FieldScalar T>
struct CentralShiftVerdict {
  bool holds = true;
  std::vector<T> shifts;  // Phi(A+B) - Phi(A) - Phi(B) = shift * I, per passing triple
  std::optional<SumTriple<T>> witness;
  std::optional<Mat2<T>> residue;
};

/// Checks that Phi(A+B) - Phi(A) - Phi(B) is central for each triple.
template <FieldScalar T>
CentralShiftVerdict<T> central_shift_check(const MapTable<T>& table, const std::vector<SumTriple<T>>& triples) {
  const Field<T>& field = table.field();
  CentralShiftVerdict<T> verdict;
  for (const auto& tr : triples) {
    if (!approx_equal(tr.a + tr.b, tr.sum, field))
      throw Error(ErrorCode::InvalidInput, "triple's third matrix is not the sum of the first two");
    Mat2<T> residue = table.at(tr.sum) - table.at(tr.a) - table.at(tr.b);
    if (!is_scalar(residue, field)) {
      verdict.holds = false;
      verdict.witness = tr;
      verdict.residue = std::move(residue);
      return verdict;
    }
    verdict.shifts.push_back(residue(0, 0));
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Decomposition.

template <FieldScalar T>
struct Decomposition {
  T lambda;
  std::vector<std::pair<Mat2<T>, T>> h_table;
  std::size_t verified_pairs = 0;
};

/// Extracts (lambda, h) with Phi(A) = lambda A + h(A) I from a table covering
/// the probe set. lambda is read off Phi(E_11) alone and then validated
/// against every entry and every probe pair.
template <FieldScalar T>
Decomposition<T> decompose(const MapTable<T>& table) {
  const Field<T>& field = table.field();
  const unsigned k = table.k();
  if (k == 0) throw Error(ErrorCode::InvalidOrder, "preserving maps need k >= 1");

  const std::vector<Mat2<T>> probes = probe_set<T>();
  std::string missing;
  for (std::size_t i = 0; i < probes.size(); ++i)
    if (!table.contains(probes[i])) missing += (missing.empty() ? "" : ", ") + std::to_string(i);
  if (!missing.empty())
    throw Error(ErrorCode::ProbeSetIncomplete, "table lacks probe inputs at probe positions " + missing);

  const Mat2<T> e11 = Mat2<T>::unit(1, 1);
  const Mat2<T>& d = table.at(e11);
  if (!field.is_zero(d(0, 1)) || !field.is_zero(d(1, 0)))
    throw NotTheoremFormError<T>(Stage::DiagonalProbe, e11, std::nullopt, Mat2<T>(T(0), d(0, 1), d(1, 0), T(0)));
  T lambda = d(0, 0) - d(1, 1);
  if (field.is_zero(lambda)) throw NotTheoremFormError<T>(Stage::NonzeroLambda, e11, lambda, d);
  require_root_of_unity(lambda, k, field);
  if (!field.eq(power(T(from_int<T>(1) / lambda), k), lambda))
    throw std::logic_error("lambda^(k+1) = 1 but lambda^(-k) != lambda");

  Decomposition<T> out{lambda, {}, 0};
  for (const auto& e : table.entries()) {
    Mat2<T> residue = e.out - lambda * e.in;
    if (!is_scalar(residue, field)) throw NotTheoremFormError<T>(Stage::ScalarResidue, e.in, lambda, residue);
    out.h_table.emplace_back(e.in, residue(0, 0));
  }

  PreservationVerdict<T> check = verify_preserving(table, all_pairs(probes));
  if (!check.holds) throw PreservationFailedError<T>(std::move(check));
  out.verified_pairs = check.pairs_checked;
  return out;
}

/// Brute-force reference: does some (k+1)-th root of unity lambda make every
/// Phi(A) - lambda A central? Independent of decompose's extraction path.
template <FieldScalar T>
bool fits_theorem_form(const MapTable<T>& table) {
  const Field<T>& field = table.field();
  for (const T& lambda : roots_of_unity<T>(table.k() + 1)) {
    bool all = true;
    for (const auto& e : table.entries())
      if (!is_scalar(Mat2<T>(e.out - lambda * e.in), field)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Randomized campaign.

enum class Perturbation { BadLambda, NonScalarShift, SwappedEntries };

constexpr std::string_view perturbation_name(Perturbation p) {
  switch (p) {
    case Perturbation::BadLambda: return "bad-lambda";
    case Perturbation::NonScalarShift: return "non-scalar-shift";
    case Perturbation::SwappedEntries: return "swapped-entries";
  }
  return "?";
}

template <FieldScalar T>
struct CampaignReport {
  unsigned k = 0;
  unsigned trials = 0;
  std::uint64_t seed = 0;
  unsigned valid_maps = 0;
  unsigned round_trips = 0;
  unsigned perturbed_maps = 0;
  unsigned rejections = 0;
  unsigned accepted_impostors = 0;
  std::vector<unsigned> by_perturbation = std::vector<unsigned>(3, 0);
  std::vector<T> lambdas_used;  // distinct, in first-use order
  std::vector<std::string> anomalies;

  bool ok() const { return anomalies.empty() && accepted_impostors == 0; }
};

namespace detail {

/// Rejections must carry something a reader can recompute from the table.
template <FieldScalar T>
bool rejection_reproduces(const MapTable<T>& table, const std::exception& err) {
  const Field<T>& field = table.field();
  if (const auto* e = dynamic_cast<const NotTheoremFormError<T>*>(&err)) {
    const Mat2<T>& out = table.at(e->input());
    switch (e->stage()) {
      case Stage::DiagonalProbe:
        return !is_zero(e->residue(), field) && field.eq(e->residue()(0, 1), out(0, 1)) &&
               field.eq(e->residue()(1, 0), out(1, 0));
      case Stage::NonzeroLambda: return field.eq(out(0, 0), out(1, 1));
      case Stage::ScalarResidue:
        return e->lambda() && !is_scalar(e->residue(), field) &&
               approx_equal(Mat2<T>(out - *e->lambda() * e->input()), e->residue(), field);
    }
    return false;
  }
  if (const auto* e = dynamic_cast<const LambdaNotRootOfUnityError<T>*>(&err)) {
    const Mat2<T>& d = table.at(Mat2<T>::unit(1, 1));
    return field.eq(e->lambda(), d(0, 0) - d(1, 1)) && field.eq(power(e->lambda(), e->exponent()), e->power_value()) &&
           !field.eq(e->power_value(), from_int<T>(1));
  }
  if (const auto* e = dynamic_cast<const PreservationFailedError<T>*>(&err)) {
    const auto& v = e->verdict();
    if (!v.pair) return false;
    const auto& [a, b] = *v.pair;
    return !approx_equal(kcomm_recursive(table.at(a), table.at(b), table.k()), kcomm_recursive(a, b, table.k()),
                         field);
  }
  return false;
}

template <FieldScalar T>
T random_non_root(Rng& rng, unsigned k, const Field<T>& field) {
  const double margin = Field<T>::exact() ? 0.0 : 10.0 * field.tolerance();
  std::vector<T> candidates{from_int<T>(-1), from_int<T>(2), from_int<T>(1) / from_int<T>(2)};
  if constexpr (scalar_traits<T>::kind == FieldKind::GaussianQi) {
    candidates.push_back(Gaussian::i());
    candidates.push_back(Gaussian(Rational(1), Rational(1)));
  }
  if constexpr (scalar_traits<T>::kind == FieldKind::FloatC) candidates.push_back(std::polar(1.0, 1.0));
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size());
  for (;;) {
    const std::size_t i = pick(rng);
    T lambda = i < candidates.size() ? candidates[i] : random_nonzero_scalar<T>(rng, field);
    const double miss = scalar_traits<T>::magnitude(power(lambda, k + 1) - from_int<T>(1));
    if (miss > margin && !field.eq(power(lambda, k + 1), from_int<T>(1))) return lambda;
  }
}

}  // namespace detail

/// Each trial builds a theorem-form map on the probe set and demands an
/// exact round trip through decompose, then perturbs it (bad lambda,
/// non-scalar additive shift, or two swapped outputs) and demands a
/// rejection whose witness recomputes from the table.
template <FieldScalar T>
CampaignReport<T> probe_campaign(unsigned k, unsigned trials, std::uint64_t seed, const Field<T>& field = {}) {
  if (k == 0) throw Error(ErrorCode::InvalidOrder, "preserving maps need k >= 1");
  CampaignReport<T> report;
  report.k = k;
  report.trials = trials;
  report.seed = seed;
  const auto probes = probe_set<T>();
  const auto roots = roots_of_unity<T>(k + 1);
  const auto pairs = all_pairs(probes);

  for (unsigned t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, t);
    const std::string tag = "trial " + std::to_string(t) + ": ";

    const T lambda = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
    if (std::none_of(report.lambdas_used.begin(), report.lambdas_used.end(),
                     [&](const T& x) { return field.eq(x, lambda); }))
      report.lambdas_used.push_back(lambda);
    const std::vector<T> h = random_h_values<T>(probes.size(), rng);
    const MapTable<T> valid = generate_map(lambda, h, probes, k, field);
    ++report.valid_maps;
    try {
      const Decomposition<T> d = decompose(valid);
      bool same = field.eq(d.lambda, lambda) && d.h_table.size() == h.size();
      for (std::size_t i = 0; same && i < h.size(); ++i) same = field.eq(d.h_table[i].second, h[i]);
      if (!verify_preserving(valid, pairs).holds) report.anomalies.push_back(tag + "valid map fails preservation");
      if (same)
        ++report.round_trips;
      else
        report.anomalies.push_back(tag + "decomposition did not round-trip");
    } catch (const std::exception& e) {
      report.anomalies.push_back(tag + "valid map rejected: " + e.what());
    }

    const auto kind = static_cast<Perturbation>(t % 3);
    std::optional<MapTable<T>> bad;
    for (int attempt = 0; attempt < 64 && !bad; ++attempt) {
      MapTable<T> candidate(k, field);
      switch (kind) {
        case Perturbation::BadLambda:
          candidate = generate_map_unchecked(detail::random_non_root(rng, k, field), h, probes, k, field);
          break;
        case Perturbation::NonScalarShift: {
          candidate = valid;
          const std::size_t j = std::uniform_int_distribution<std::size_t>(0, probes.size() - 1)(rng);
          Mat2<T> shift = random_matrix<T>(rng);
          while (is_scalar(shift, field) || max_norm(shift) < 1e-3) shift = random_matrix<T>(rng);
          candidate.set_output(j, valid.entries()[j].out + shift);
          break;
        }
        case Perturbation::SwappedEntries: {
          candidate = valid;
          std::uniform_int_distribution<std::size_t> idx(0, probes.size() - 1);
          const std::size_t i = idx(rng);
          std::size_t j = idx(rng);
          while (j == i) j = idx(rng);
          candidate.set_output(i, valid.entries()[j].out);
          candidate.set_output(j, valid.entries()[i].out);
          break;
        }
      }
      if (!fits_theorem_form(candidate)) bad = std::move(candidate);
    }
    if (!bad) {
      report.anomalies.push_back(tag + "could not build a perturbed map");
      continue;
    }
    ++report.perturbed_maps;
    ++report.by_perturbation[static_cast<std::size_t>(kind)];
    try {
      (void)decompose(*bad);
      ++report.accepted_impostors;
      report.anomalies.push_back(tag + "accepted impostor (" + std::string(perturbation_name(kind)) + ")");
    } catch (const Error& e) {
      if (detail::rejection_reproduces(*bad, e))
        ++report.rejections;
      else
        report.anomalies.push_back(tag + "rejection witness does not reproduce: " + e.what());
    }
  }
  return report;
}

}  // namespace kcomm
