// kcomm2: command-line front end for the k-commutator toolkit.
//
// Every subcommand reads JSON from --input (or stdin) and writes canonical
// JSON to --output (or stdout). Exit status: 0 success / property holds,
// 1 property falsified or structural rejection, 2 input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "kcomm/json_io.hpp"
#include "kcomm/kcomm.hpp"

namespace {

using kcomm::Error;
using kcomm::ErrorCode;
using kcomm::FieldKind;
using kcomm::Mat2;
using nlohmann::json;
namespace io = kcomm::io;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kInputError = 2;

struct Options {
  std::string field;
  std::optional<unsigned> k;
  double tolerance = kcomm::default_tolerance;
  std::uint64_t seed = 0;
  std::optional<unsigned> trials;
  std::string input;
  std::string output;
  std::string method = "recursive";
  std::string lemma;
  std::string mode;
};

/// Exit status and payload of one subcommand.
struct Outcome {
  int status = kOk;
  json body;
};

json read_input(const Options& opt) {
  std::string text;
  if (opt.input.empty() || opt.input == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(opt.input);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open input file '" + opt.input + "'");
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("input is not valid JSON: ") + e.what());
  }
}

FieldKind resolve_field(const Options& opt, const std::optional<json>& doc) {
  if (!opt.field.empty()) return kcomm::parse_field_name(opt.field);
  if (doc)
    if (auto f = io::find_field(*doc)) return *f;
  return FieldKind::RationalQ;
}

template <class F>
Outcome with_field(FieldKind kind, F&& f) {
  switch (kind) {
    case FieldKind::RationalQ: return f.template operator()<kcomm::Rational>();
    case FieldKind::GaussianQi: return f.template operator()<kcomm::Gaussian>();
    case FieldKind::FloatR: return f.template operator()<double>();
    case FieldKind::FloatC: return f.template operator()<kcomm::Complex>();
  }
  throw Error(ErrorCode::InvalidInput, "unknown field");
}

unsigned require_k(const Options& opt, const char* what) {
  if (!opt.k) throw Error(ErrorCode::InvalidInput, std::string(what) + " needs --k");
  return *opt.k;
}

const json& matrix_arg(const json& doc, std::initializer_list<const char*> keys) {
  for (const char* key : keys)
    if (doc.is_object() && doc.contains(key)) return doc.at(key);
  return doc;  // the document itself is the matrix
}

// ---------------------------------------------------------------------------

template <class T>
Outcome run_kcomm(const Options& opt, const json& doc) {
  const kcomm::Field<T> field(opt.tolerance);
  const unsigned k = require_k(opt, "kcomm");
  const auto a = io::matrix_from_json<T>(io::require(doc, "A"));
  const auto b = io::matrix_from_json<T>(io::require(doc, "B"));
  kcomm::Method method;
  if (opt.method == "recursive")
    method = kcomm::Method::Recursive;
  else if (opt.method == "closed")
    method = kcomm::Method::Closed;
  else if (opt.method == "auto")
    method = kcomm::Method::Auto;
  else
    throw Error(ErrorCode::InvalidInput, "unknown --method '" + opt.method + "'");
  return {kOk, io::to_json(kcomm::kcomm(a, b, k, method, field))};
}

template <class T>
Outcome run_classify(const Options& opt, const json& doc) {
  const kcomm::Field<T> field(opt.tolerance);
  const auto m = io::matrix_from_json<T>(matrix_arg(doc, {"matrix", "Z", "S"}));
  if (opt.lemma == "2.2") {
    const auto v = kcomm::scalar_witness_test(m, require_k(opt, "classify --lemma 2.2"), field);
    return {v.holds ? kOk : kRejected, io::to_json(v)};
  }
  if (opt.lemma == "2.3-spectral") {
    const auto v = kcomm::scalar_plus_nilpotent_spectral(m, field);
    return {v.holds ? kOk : kRejected, io::to_json(v)};
  }
  if (opt.lemma == "2.3-kcomm") {
    const auto v = kcomm::scalar_plus_nilpotent_kcomm(m, require_k(opt, "classify --lemma 2.3-kcomm"),
                                                      opt.trials.value_or(kcomm::default_certifier_trials), opt.seed,
                                                      field);
    return {v.holds ? kOk : kRejected, io::to_json(v)};
  }
  throw Error(ErrorCode::InvalidInput, "--lemma must be one of 2.2, 2.3-spectral, 2.3-kcomm");
}

template <class T>
Outcome run_sandwich(const Options& opt, const json& doc) {
  const kcomm::Field<T> field(opt.tolerance);
  const auto system = io::sandwich_system_from_json<T>(doc);
  kcomm::SolveMode mode = kcomm::SolveMode::Auto;
  if (!opt.mode.empty())
    mode = io::parse_mode(opt.mode);
  else if (doc.contains("mode"))
    mode = io::parse_mode(doc.at("mode").get<std::string>());
  const auto solution = kcomm::rank_one_identity_solve(system, mode, field);
  json body = io::to_json(solution);
  body["operator_left"] = io::to_json(kcomm::sandwich_operator(system.left));
  body["operator_right"] = io::to_json(kcomm::sandwich_operator(system.right));
  return {std::holds_alternative<kcomm::Coefficients<T>>(solution) ? kOk : kRejected, body};
}

template <class T>
Outcome run_gen_map(const Options& opt, const json& doc) {
  const kcomm::Field<T> field(opt.tolerance);
  unsigned k = 0;
  if (opt.k)
    k = *opt.k;
  else if (doc.contains("k"))
    k = doc.at("k").get<unsigned>();
  else
    throw Error(ErrorCode::InvalidInput, "gen-map needs --k or a \"k\" key");
  const T lambda = io::scalar_from_json<T>(io::require(doc, "lambda"));
  const auto inputs = doc.contains("inputs") ? io::matrices_from_json<T>(doc.at("inputs")) : kcomm::probe_set<T>();
  const json h = doc.contains("h") ? doc.at("h") : json("zero");
  kcomm::MapTable<T> table(k);
  std::string label;
  if (h.is_array()) {
    std::vector<T> values;
    for (const auto& v : h) values.push_back(io::scalar_from_json<T>(v));
    table = kcomm::generate_map(lambda, values, inputs, k, field);
    label = "h=table";
  } else if (h == "zero") {
    table = kcomm::generate_map(lambda, kcomm::h_zero<T>(), inputs, k, field);
  } else if (h == "trace") {
    table = kcomm::generate_map(lambda, kcomm::h_trace<T>(), inputs, k, field);
  } else if (h == "det") {
    table = kcomm::generate_map(lambda, kcomm::h_det<T>(), inputs, k, field);
  } else if (h == "random") {
    kcomm::Rng rng = kcomm::make_rng(opt.seed);
    table = kcomm::generate_map(lambda, kcomm::random_h_values<T>(inputs.size(), rng), inputs, k, field);
    label = "h=random seed=" + std::to_string(opt.seed);
  } else {
    throw Error(ErrorCode::InvalidInput, "\"h\" must be zero, trace, det, random or an array of scalars");
  }
  if (label.empty()) label = "h=" + h.get<std::string>();
  table.set_label("lambda*A + h(A)*I, " + label);
  return {kOk, io::to_json(table)};
}

template <class T>
kcomm::MapTable<T> table_arg(const Options& opt, const json& doc) {
  auto table = io::map_table_from_json<T>(doc, kcomm::Field<T>(opt.tolerance));
  if (opt.k && *opt.k != table.k())
    throw Error(ErrorCode::InvalidInput, "--k disagrees with the table's \"k\"");
  return table;
}

template <class T>
Outcome run_verify_map(const Options& opt, const json& doc) {
  const auto table = table_arg<T>(opt, doc);
  const auto pairs =
      doc.contains("pairs") ? io::pairs_from_json<T>(doc.at("pairs")) : kcomm::all_pairs(table.inputs());
  const auto v = kcomm::verify_preserving(table, pairs);
  json body = io::to_json(v);
  bool holds = v.holds;
  if (doc.contains("triples")) {
    std::vector<kcomm::SumTriple<T>> triples;
    for (const auto& t : doc.at("triples")) {
      if (!t.is_array() || t.size() != 3) io::schema_error("each triple must be [A, B, A+B]");
      triples.push_back({io::matrix_from_json<T>(t[0]), io::matrix_from_json<T>(t[1]), io::matrix_from_json<T>(t[2])});
    }
    const auto c = kcomm::central_shift_check(table, triples);
    body["central_shift"] = io::to_json(c);
    holds = holds && c.holds;
  }
  return {holds ? kOk : kRejected, body};
}

template <class T>
Outcome run_decompose_map(const Options& opt, const json& doc) {
  return {kOk, io::to_json(kcomm::decompose(table_arg<T>(opt, doc)))};
}

template <class T>
Outcome run_campaign(const Options& opt) {
  const kcomm::Field<T> field(opt.tolerance);
  const auto report =
      kcomm::probe_campaign<T>(require_k(opt, "campaign"), opt.trials.value_or(100), opt.seed, field);
  return {report.ok() ? kOk : kRejected, io::to_json(report)};
}

Outcome run_fixtures() {
  using kcomm::Rational;
  using M = Mat2<Rational>;
  namespace id = kcomm::identities;
  json fixtures = json::array();
  bool consistent = true;
  auto add = [&](const std::string& name, unsigned k, const M& a, const M& b, const M& expected, json extra) {
    const M bracket = kcomm::kcomm_recursive(a, b, k);
    consistent = consistent && bracket == expected && kcomm::kcomm_closed(a, b, k) == expected;
    json f{{"name", name}, {"k", k}, {"A", io::to_json(a)}, {"B", io::to_json(b)}, {"bracket", io::to_json(bracket)}};
    f.update(extra);
    fixtures.push_back(std::move(f));
  };
  for (unsigned k = 1; k <= 10; ++k) {
    for (const char* a : {"1", "2", "-3/5"}) {
      const Rational av = kcomm::parse_rational(a);
      add("scaled-e12-with-e11", k, av * M::unit(1, 2), M::unit(1, 1), id::scaled_e12_with_e11(av, k),
          json{{"a", a}});
    }
    add("e11-with-swap", k, M::unit(1, 1), M::unit(1, 2) + M::unit(2, 1), id::e11_with_swap<Rational>(k), json::object());
    add("e21-with-first-row", k, M::unit(2, 1), M::unit(1, 1) + M::unit(1, 2), id::e21_with_first_row<Rational>(k),
        json::object());
  }
  return {consistent ? kOk : kRejected, json{{"field", "Q"}, {"fixtures", fixtures}}};
}

bool is_rejection(ErrorCode code, const std::string& subcommand) {
  static const std::set<ErrorCode> structural{ErrorCode::NotTheoremForm, ErrorCode::PreservationFailed,
                                              ErrorCode::SingularSystem, ErrorCode::NotScalarPlusNilpotent};
  if (structural.count(code)) return true;
  // A bad lambda is a precondition violation for gen-map but a finding for decompose-map.
  return code == ErrorCode::LambdaNotRootOfUnity && subcommand == "decompose-map";
}

Outcome dispatch(const std::string& sub, const Options& opt) {
  if (sub == "fixtures") return run_fixtures();
  std::optional<json> doc;
  if (sub != "campaign") doc = read_input(opt);
  const FieldKind kind = resolve_field(opt, doc);
  try {
    return with_field(kind, [&]<class T>() -> Outcome {
      if (sub == "kcomm") return run_kcomm<T>(opt, *doc);
      if (sub == "classify") return run_classify<T>(opt, *doc);
      if (sub == "sandwich") return run_sandwich<T>(opt, *doc);
      if (sub == "gen-map") return run_gen_map<T>(opt, *doc);
      if (sub == "verify-map") return run_verify_map<T>(opt, *doc);
      if (sub == "decompose-map") return run_decompose_map<T>(opt, *doc);
      return run_campaign<T>(opt);
    });
  } catch (const Error& e) {
    // Re-render with the typed payload of the active field.
    json body = with_field(kind, [&]<class T>() { return Outcome{0, io::error_to_json<T>(e)}; }).body;
    return {is_rejection(e.code(), sub) ? kRejected : kInputError, body};
  }
}

void emit(const json& body, const std::string& path) {
  const std::string text = body.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot open output file '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kcomm2: k-commutators and strong k-commutativity preservers on 2x2 matrices"};
  app.require_subcommand(1);
  Options opt;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", opt.field, "Scalar field: Q, Qi, R64 or C64");
    sub->add_option("--k", opt.k, "Bracket order k");
    sub->add_option("--tolerance", opt.tolerance, "Absolute tolerance for float fields");
    sub->add_option("--seed", opt.seed, "Seed for randomized steps");
    sub->add_option("--trials", opt.trials, "Number of randomized trials");
    sub->add_option("--input", opt.input, "Input JSON file (default: stdin)");
    sub->add_option("--output", opt.output, "Output JSON file (default: stdout)");
    return sub;
  };

  common(app.add_subcommand("kcomm", "Evaluate [A,B]_k for {\"A\": M, \"B\": M}"))
      ->add_option("--method", opt.method, "recursive, closed or auto");
  common(app.add_subcommand("classify", "Scalar / scalar-plus-nilpotent classifiers"))
      ->add_option("--lemma", opt.lemma, "2.2, 2.3-spectral or 2.3-kcomm")
      ->required();
  common(app.add_subcommand("sandwich", "Decide a rank-one sandwich identity and extract coefficients"))
      ->add_option("--mode", opt.mode, "left-factors, right-factors or auto");
  common(app.add_subcommand("gen-map", "Tabulate A -> lambda*A + h(A)*I"));
  common(app.add_subcommand("verify-map", "Check [Phi(A),Phi(B)]_k = [A,B]_k on a map table"));
  common(app.add_subcommand("decompose-map", "Extract (lambda, h) from a map table"));
  common(app.add_subcommand("campaign", "Randomized round-trip and rejection campaign"));
  common(app.add_subcommand("fixtures", "Emit golden bracket-identity fixtures for k = 1..10"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", "InvalidInput"}, {"message", e.what()}}.dump(2) << "\n";
    return kInputError;
  }

  const std::string sub = app.get_subcommands().front()->get_name();
  Outcome outcome;
  try {
    outcome = dispatch(sub, opt);
  } catch (const Error& e) {
    outcome = {kInputError, json{{"error", std::string(e.name())}, {"message", e.what()}}};
  } catch (const json::exception& e) {
    outcome = {kInputError, json{{"error", "InvalidInput"}, {"message", e.what()}}};
  }
  try {
    emit(outcome.body, outcome.status == kInputError ? std::string() : opt.output);
  } catch (const Error& e) {
    std::cout << json{{"error", std::string(e.name())}, {"message", e.what()}}.dump(2) << "\n";
    return kInputError;
  }
  return outcome.status;
}
