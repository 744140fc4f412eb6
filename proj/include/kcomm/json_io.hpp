#pragma once

// JSON encodings for scalars, matrices, map tables and results.
//
//   Q    "p/q" or "n"                      Qi   {"re": "p/q", "im": "p/q"}
//   R64  number                            C64  {"re": x, "im": y}
//   matrix   {"field": "Q", "entries": [[a11, a12], [a21, a22]]}
//   table    {"field", "k", "label"?, "entries": [{"in": M, "out": M}, ...]}
//
// Objects are emitted with sorted keys, so exact-field output is byte stable.

#include <nlohmann/json.hpp>

#include <string>
#include <variant>

#include "kcomm/classify.hpp"
#include "kcomm/preserver.hpp"

namespace kcomm::io {

using nlohmann::json;

[[noreturn]] inline void schema_error(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

namespace detail {

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(j.dump()));
  schema_error("expected rational as \"p/q\" string, got " + j.dump());
}

inline double real_from_json(const json& j) {
  if (!j.is_number()) schema_error("expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace detail

template <FieldScalar T>
json to_json(const T& x) {
  constexpr FieldKind kind = scalar_traits<T>::kind;
  if constexpr (kind == FieldKind::RationalQ)
    return x.get_str();
  else if constexpr (kind == FieldKind::GaussianQi)
    return json{{"im", x.im().get_str()}, {"re", x.re().get_str()}};
  else if constexpr (kind == FieldKind::FloatR)
    return x;
  else
    return json{{"im", x.imag()}, {"re", x.real()}};
}

template <FieldScalar T>
T scalar_from_json(const json& j) {
  constexpr FieldKind kind = scalar_traits<T>::kind;
  if constexpr (kind == FieldKind::RationalQ) {
    return detail::rational_from_json(j);
  } else if constexpr (kind == FieldKind::GaussianQi) {
    if (j.is_object()) {
      Rational re = j.contains("re") ? detail::rational_from_json(j.at("re")) : Rational(0);
      Rational im = j.contains("im") ? detail::rational_from_json(j.at("im")) : Rational(0);
      return Gaussian(std::move(re), std::move(im));
    }
    return Gaussian(detail::rational_from_json(j));
  } else if constexpr (kind == FieldKind::FloatR) {
    return detail::real_from_json(j);
  } else {
    if (j.is_object()) {
      const double re = j.contains("re") ? detail::real_from_json(j.at("re")) : 0.0;
      const double im = j.contains("im") ? detail::real_from_json(j.at("im")) : 0.0;
      return {re, im};
    }
    return {detail::real_from_json(j), 0.0};
  }
}

template <FieldScalar T>
json to_json(const Mat2<T>& m) {
  return json{{"entries", json::array({json::array({to_json(m(0, 0)), to_json(m(0, 1))}),
                                       json::array({to_json(m(1, 0)), to_json(m(1, 1))})})},
              {"field", std::string(field_name(scalar_traits<T>::kind))}};
}

inline void check_field(const json& j, FieldKind expected) {
  if (!j.is_object() || !j.contains("field")) return;
  if (!j.at("field").is_string()) schema_error("'field' must be a string");
  const FieldKind got = parse_field_name(j.at("field").get<std::string>());
  if (got != expected)
    throw Error(ErrorCode::FieldMismatch, "expected field " + std::string(field_name(expected)) + ", got " +
                                              std::string(field_name(got)));
}

template <FieldScalar T>
Mat2<T> matrix_from_json(const json& j) {
  check_field(j, scalar_traits<T>::kind);
  const json& e = require(j, "entries");
  if (!e.is_array() || e.size() != 2 || !e[0].is_array() || e[0].size() != 2 || !e[1].is_array() ||
      e[1].size() != 2)
    schema_error("'entries' must be a 2x2 nested array");
  return {scalar_from_json<T>(e[0][0]), scalar_from_json<T>(e[0][1]), scalar_from_json<T>(e[1][0]),
          scalar_from_json<T>(e[1][1])};
}

template <FieldScalar T>
std::vector<Mat2<T>> matrices_from_json(const json& j) {
  if (!j.is_array()) schema_error("expected an array of matrices");
  std::vector<Mat2<T>> out;
  for (const auto& m : j) out.push_back(matrix_from_json<T>(m));
  return out;
}

template <FieldScalar T>
std::vector<MatPair<T>> pairs_from_json(const json& j) {
  if (!j.is_array()) schema_error("expected an array of matrix pairs");
  std::vector<MatPair<T>> out;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2) schema_error("each pair must be a two-element array");
    out.emplace_back(matrix_from_json<T>(p[0]), matrix_from_json<T>(p[1]));
  }
  return out;
}

template <FieldScalar T>
json to_json(const std::vector<MatPair<T>>& pairs) {
  json arr = json::array();
  for (const auto& [a, b] : pairs) arr.push_back(json::array({to_json(a), to_json(b)}));
  return arr;
}

/// Finds the field named by a document: top-level "field", else the first
/// nested matrix that names one.
inline std::optional<FieldKind> find_field(const json& j) {
  if (j.is_object()) {
    if (j.contains("field") && j.at("field").is_string()) return parse_field_name(j.at("field").get<std::string>());
    for (const auto& [key, value] : j.items())
      if (auto f = find_field(value)) return f;
  } else if (j.is_array()) {
    for (const auto& value : j)
      if (auto f = find_field(value)) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Results.

template <FieldScalar T>
json to_json(const Verdict<T>& v) {
  json j{{"holds", v.holds}};
  if (v.witness) j["witness"] = to_json(*v.witness);
  if (v.detail) j["detail"] = to_json(*v.detail);
  return j;
}

template <FieldScalar T>
json to_json(const SpectralVerdict<T>& v) {
  json j{{"holds", v.holds}, {"discriminant", to_json(v.discriminant)}};
  if (v.split) {
    j["lambda"] = to_json(v.split->lambda);
    j["nilpotent"] = to_json(v.split->nilpotent);
  }
  return j;
}

template <FieldScalar T>
json to_json(const Dense<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <FieldScalar T>
SandwichSystem<T> sandwich_system_from_json(const json& j) {
  check_field(j, scalar_traits<T>::kind);
  return {pairs_from_json<T>(require(j, "left")), pairs_from_json<T>(require(j, "right"))};
}

template <FieldScalar T>
json to_json(const SandwichSystem<T>& s) {
  return json{{"left", to_json(s.left)}, {"right", to_json(s.right)}};
}

inline std::string_view mode_name(SolveMode m) {
  switch (m) {
    case SolveMode::LeftFactors: return "left-factors";
    case SolveMode::RightFactors: return "right-factors";
    case SolveMode::Auto: return "auto";
  }
  return "?";
}

inline SolveMode parse_mode(std::string_view s) {
  if (s == "left-factors") return SolveMode::LeftFactors;
  if (s == "right-factors") return SolveMode::RightFactors;
  if (s == "auto") return SolveMode::Auto;
  schema_error("unknown solve mode '" + std::string(s) + "'");
}

template <FieldScalar T>
json to_json(const IdentitySolution<T>& s) {
  if (const auto* n = std::get_if<NotAnIdentity<T>>(&s))
    return json{{"result", "not-an-identity"},
                {"witness", to_json(n->witness)},
                {"left_value", to_json(n->left_value)},
                {"right_value", to_json(n->right_value)}};
  const auto& c = std::get<Coefficients<T>>(s);
  json table = json::array();
  for (const auto& row : c.coefficients) {
    json r = json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    table.push_back(std::move(r));
  }
  return json{{"result", "coefficients"}, {"mode", std::string(mode_name(c.mode))}, {"coefficients", table}};
}

template <FieldScalar T>
json to_json(const MapTable<T>& t) {
  json entries = json::array();
  for (const auto& e : t.entries()) entries.push_back(json{{"in", to_json(e.in)}, {"out", to_json(e.out)}});
  json j{{"field", std::string(field_name(scalar_traits<T>::kind))}, {"k", t.k()}, {"entries", entries}};
  if (!t.label().empty()) j["label"] = t.label();
  return j;
}

template <FieldScalar T>
MapTable<T> map_table_from_json(const json& j, const Field<T>& field = {}) {
  check_field(j, scalar_traits<T>::kind);
  const json& k = require(j, "k");
  if (!k.is_number_integer() || k.get<long long>() < 0) schema_error("'k' must be a nonnegative integer");
  MapTable<T> table(static_cast<unsigned>(k.get<long long>()), field,
                    j.contains("label") && j.at("label").is_string() ? j.at("label").get<std::string>() : "");
  const json& entries = require(j, "entries");
  if (!entries.is_array()) schema_error("'entries' must be an array");
  for (const auto& e : entries) table.insert(matrix_from_json<T>(require(e, "in")), matrix_from_json<T>(require(e, "out")));
  return table;
}

template <FieldScalar T>
json to_json(const Decomposition<T>& d) {
  json h = json::array();
  for (const auto& [in, value] : d.h_table) h.push_back(json{{"in", to_json(in)}, {"value", to_json(value)}});
  return json{{"lambda", to_json(d.lambda)}, {"h", h}, {"verified_pairs", d.verified_pairs}};
}

template <FieldScalar T>
Decomposition<T> decomposition_from_json(const json& j) {
  Decomposition<T> d{scalar_from_json<T>(require(j, "lambda")), {}, 0};
  for (const auto& e : require(j, "h"))
    d.h_table.emplace_back(matrix_from_json<T>(require(e, "in")), scalar_from_json<T>(require(e, "value")));
  if (j.contains("verified_pairs")) d.verified_pairs = j.at("verified_pairs").get<std::size_t>();
  return d;
}

template <FieldScalar T>
json to_json(const PreservationVerdict<T>& v) {
  json j{{"holds", v.holds}, {"pairs_checked", v.pairs_checked}};
  if (v.pair) j["witness"] = json::array({to_json(v.pair->first), to_json(v.pair->second)});
  if (v.mapped) j["detail"] = json{{"mapped", to_json(*v.mapped)}, {"original", to_json(*v.original)}};
  return j;
}

template <FieldScalar T>
json to_json(const CentralShiftVerdict<T>& v) {
  json shifts = json::array();
  for (const auto& s : v.shifts) shifts.push_back(to_json(s));
  json j{{"holds", v.holds}, {"shifts", shifts}};
  if (v.witness) j["witness"] = json::array({to_json(v.witness->a), to_json(v.witness->b), to_json(v.witness->sum)});
  if (v.residue) j["detail"] = to_json(*v.residue);
  return j;
}

template <FieldScalar T>
json to_json(const CampaignReport<T>& r) {
  json lambdas = json::array();
  for (const auto& l : r.lambdas_used) lambdas.push_back(to_json(l));
  return json{{"k", r.k},
              {"field", std::string(field_name(scalar_traits<T>::kind))},
              {"trials", r.trials},
              {"seed", r.seed},
              {"valid_maps", r.valid_maps},
              {"round_trips", r.round_trips},
              {"perturbed_maps", r.perturbed_maps},
              {"rejections", r.rejections},
              {"accepted_impostors", r.accepted_impostors},
              {"perturbations",
               json{{std::string(perturbation_name(Perturbation::BadLambda)), r.by_perturbation[0]},
                    {std::string(perturbation_name(Perturbation::NonScalarShift)), r.by_perturbation[1]},
                    {std::string(perturbation_name(Perturbation::SwappedEntries)), r.by_perturbation[2]}}},
              {"lambdas_used", lambdas},
              {"anomalies", r.anomalies}};
}

/// JSON diagnostic for a library error, including any typed payload.
template <FieldScalar T>
json error_to_json(const Error& e) {
  json j{{"error", std::string(e.name())}, {"message", e.what()}};
  if (const auto* x = dynamic_cast<const NotScalarPlusNilpotentError<T>*>(&e)) {
    j["discriminant"] = to_json(x->discriminant());
  } else if (const auto* x = dynamic_cast<const LambdaNotRootOfUnityError<T>*>(&e)) {
    j["lambda"] = to_json(x->lambda());
    j["power"] = to_json(x->power_value());
    j["exponent"] = x->exponent();
  } else if (const auto* x = dynamic_cast<const NotTheoremFormError<T>*>(&e)) {
    j["stage"] = std::string(stage_name(x->stage()));
    j["input"] = to_json(x->input());
    j["residue"] = to_json(x->residue());
    if (x->lambda()) j["lambda"] = to_json(*x->lambda());
  } else if (const auto* x = dynamic_cast<const PreservationFailedError<T>*>(&e)) {
    j["verdict"] = to_json(x->verdict());
  }
  return j;
}

}  // namespace kcomm::io
