#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nambu/cli/documents.hpp"

namespace nambu::cli {

struct RunConfig {
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;  // per-verb default when unset
  std::uint32_t degree = 2;
  unsigned jobs = 1;
  std::string format = "json";  // or "text"
};

/// Everything after the verb: parsed input documents plus generator parameters.
struct CommandArgs {
  std::vector<Document> documents;
  std::vector<std::string> functions;  // polynomial literals for `bracket nambu`
  std::optional<std::string> family;
  std::optional<int> n;
  std::optional<std::size_t> m;
  std::optional<std::size_t> k;
  std::optional<std::string> phi;
  std::optional<std::string> g;
  std::vector<std::string> a, b;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;  // report or generated document, in the requested format
  std::string error;   // message for exit code 2
};

inline const std::vector<std::string>& known_verbs() {
  static const std::vector<std::string> verbs{
      "check nambu",    "check filippov-linear", "check fi-random", "check algebroid", "check cocycle",
      "check lemma1",   "gen normal-form",       "gen example1",    "gen example3",    "gen example4",
      "lift tangent",   "bracket forms",         "bracket nambu"};
  return verbs;
}

/// Input error surfaced as exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

inline std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("NAMBU_FIXTURE_DIR"); env && *env) return env;
#ifdef NAMBU_DEFAULT_FIXTURE_DIR
  return NAMBU_DEFAULT_FIXTURE_DIR;
#else
  return "fixtures";
#endif
}

/// A path as given, or failing that a file of that name in the fixture directory.
inline std::filesystem::path resolve_input(const std::string& name) {
  std::filesystem::path p(name);
  if (std::filesystem::exists(p)) return p;
  auto in_fixtures = fixture_dir() / name;
  if (std::filesystem::exists(in_fixtures)) return in_fixtures;
  throw UsageError("input '" + name + "' not found (also looked in " + fixture_dir().string() + ")");
}

inline Document load_document(const std::string& name) {
  auto path = resolve_input(name);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.filename().string() + ": " + e.what());
  }
}

namespace detail {

inline Json witness_json(const Witness& w) {
  Json j = Json::object();
  j["description"] = w.description;
  Json inputs = Json::array();
  for (const auto& [k, v] : w.inputs) inputs.push_back({{"name", k}, {"value", v}});
  j["inputs"] = std::move(inputs);
  Json point = Json::array();
  for (const auto& x : w.point) point.push_back(to_string(x));
  j["point"] = std::move(point);
  j["residual_term"] = w.residual_term;
  j["residual_at_point"] = w.residual_at_point;
  return j;
}

inline Json check_json(const CheckReport& r) {
  Json j = Json::object();
  j["check"] = r.check;
  j["pass"] = r.pass;
  Json stats = Json::object();
  for (const auto& [k, v] : r.stats) stats[k] = v;
  j["stats"] = std::move(stats);
  j["notes"] = r.notes;
  if (r.witness) j["witness"] = witness_json(*r.witness);
  return j;
}

inline std::string check_text(const CheckReport& r) {
  std::ostringstream out;
  out << r.check << ": " << (r.pass ? "pass" : "FAIL") << "\n";
  for (const auto& note : r.notes) out << "  note: " << note << "\n";
  for (const auto& [k, v] : r.stats) out << "  " << k << " = " << v << "\n";
  if (r.witness) {
    const auto& w = *r.witness;
    out << "  witness: " << w.description << "\n";
    for (const auto& [k, v] : w.inputs) out << "    " << k << " = " << v << "\n";
    out << "    point = (";
    for (std::size_t i = 0; i < w.point.size(); ++i) out << (i ? ", " : "") << to_string(w.point[i]);
    out << ")\n    residual term = " << w.residual_term << "\n    residual at point = " << w.residual_at_point
        << "\n";
  }
  return out.str();
}

inline std::string document_text(const Document& doc) {
  std::ostringstream out;
  out << doc.kind();
  if (!doc.meta.name.empty()) out << " " << doc.meta.name;
  out << "\n";
  for (const auto& note : doc.meta.notes) out << "  note: " << note << "\n";
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MultiVectorField> || std::is_same_v<T, DiffForm>) {
          out << "  " << format_tensor(p) << "\n";
        } else {
          out << to_json(doc).dump() << "\n";
        }
      },
      doc.payload);
  return out.str();
}

template <class T>
const T& require(const CommandArgs& args, std::size_t i, const char* verb, const char* what) {
  if (args.documents.size() <= i) throw UsageError(std::string(verb) + ": missing input " + what);
  const T* p = args.documents[i].as<T>();
  if (!p)
    throw UsageError(std::string(verb) + ": input " + std::to_string(i + 1) + " is a " + args.documents[i].kind() +
                     " document, expected " + what);
  return *p;
}

inline RatVector parse_rationals(const std::vector<std::string>& items) {
  RatVector out;
  for (const auto& s : items) out.push_back(parse_rational(s));
  return out;
}

inline std::string join_names(const CommandArgs& args) {
  std::string out;
  for (const auto& d : args.documents) out += (out.empty() ? "" : ",") + d.meta.name;
  return out;
}

inline CheckReport lemma1_report(const Lemma1Family& fam) {
  CheckReport r;
  r.check = "lemma1";
  r.stat("members", fam.members.size());
  try {
    auto res = lemma1_dichotomy(fam.members);
    r.stat("span_dim", res.span_dim);
    r.stat("intersection_dim", res.intersection_dim);
    if (res.branch_a) r.notes.push_back("branch (a): supports span " + std::to_string(res.span_dim) + " dimensions");
    if (res.branch_b)
      r.notes.push_back("branch (b): supports share " + std::to_string(res.intersection_dim) + " dimensions");
  } catch (const TheoremViolation& e) {
    Witness w;
    w.description = e.what();
    for (std::size_t i = 0; i < fam.members.size(); ++i)
      w.inputs.emplace_back("member" + std::to_string(i + 1), format_tensor(fam.members[i].field()));
    w.residual_term = "neither branch";
    w.residual_at_point = "neither branch";
    r.fail(std::move(w));
  }
  return r;
}

inline NormalFormParams normal_form_params(const CommandArgs& args, const RunConfig& config) {
  if (!args.documents.empty()) return require<NormalFormParams>(args, 0, "gen normal-form", "normal-form preset");
  if (!args.family || !args.n || !args.m) throw UsageError("gen normal-form: need --family, --n and --m (or a preset)");
  Sampler rng(config.seed);
  auto p = random_normal_form_params(*args.family, *args.n, *args.m, rng);
  if (args.phi) p.phi = parse_poly(*args.phi, p.m);
  if (!args.a.empty()) {
    auto values = parse_rationals(args.a);
    if (p.family == "B2") {
      p.a = values;
    } else if (p.family == "B1" || p.family == "C") {
      if (values.size() != p.matrix.rows() * p.matrix.cols())
        throw UsageError("gen normal-form: --a needs " + std::to_string(p.matrix.rows() * p.matrix.cols()) +
                         " entries (row-major)");
      for (std::size_t i = 0; i < values.size(); ++i) p.matrix(i / p.matrix.cols(), i % p.matrix.cols()) = values[i];
    } else {
      throw UsageError("gen normal-form: family A takes --phi, not --a");
    }
  }
  if (!args.b.empty()) {
    if (p.family != "B2") throw UsageError("gen normal-form: --b applies to family B2 only");
    p.b = parse_rationals(args.b);
  }
  return p;
}

inline std::string params_note(const NormalFormParams& p) {
  std::ostringstream out;
  out << "family " << p.family << ", n = " << p.n << ", m = " << p.m;
  if (!p.phi.is_zero()) out << ", phi = " << format_poly(p.phi);
  if (p.matrix.rows() * p.matrix.cols() > 0) {
    out << ", matrix = [";
    for (std::size_t i = 0; i < p.matrix.rows(); ++i) {
      out << (i ? "; " : "");
      for (std::size_t j = 0; j < p.matrix.cols(); ++j) out << (j ? " " : "") << to_string(p.matrix(i, j));
    }
    out << "]";
  }
  auto list = [&](const char* name, const RatVector& v) {
    if (v.empty()) return;
    out << ", " << name << " = (";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << to_string(v[i]);
    out << ")";
  };
  list("a", p.a);
  list("b", p.b);
  return out.str();
}

}  // namespace detail

/// Serialized report: verdict, per-check results, and the configuration that produced them.
inline std::string render_report(const std::string& verb, const std::string& input,
                                 const std::vector<CheckReport>& checks, const RunConfig& config,
                                 std::optional<std::size_t> trials) {
  const bool pass = std::all_of(checks.begin(), checks.end(), [](const CheckReport& r) { return r.pass; });
  if (config.format == "text") {
    std::ostringstream out;
    out << verb << " " << input << ": " << (pass ? "PASS" : "FAIL") << "\n";
    for (const auto& c : checks) out << detail::check_text(c);
    out << "config: seed=" << config.seed;
    if (trials) out << " trials=" << *trials;
    out << " degree=" << config.degree << " jobs=" << config.jobs << "\n";
    return out.str();
  }
  Json j = Json::object();
  j["schema"] = kSchemaVersion;
  j["kind"] = "report";
  j["verb"] = verb;
  j["input"] = input;
  j["verdict"] = pass ? "pass" : "fail";
  Json cs = Json::array();
  for (const auto& c : checks) cs.push_back(detail::check_json(c));
  j["checks"] = std::move(cs);
  Json cfg = Json::object();
  cfg["seed"] = config.seed;
  if (trials) cfg["trials"] = *trials;
  cfg["degree"] = config.degree;
  cfg["jobs"] = config.jobs;
  j["config"] = std::move(cfg);
  return j.dump(2) + "\n";
}

inline CommandResult run_command(const std::string& verb, const CommandArgs& args, const RunConfig& config) {
  CommandResult result;
  auto report = [&](std::vector<CheckReport> checks, std::optional<std::size_t> trials = std::nullopt) {
    result.output = render_report(verb, detail::join_names(args), checks, config, trials);
    result.exit_code =
        std::all_of(checks.begin(), checks.end(), [](const CheckReport& r) { return r.pass; }) ? 0 : 1;
  };
  auto emit = [&](Document doc) {
    result.output = config.format == "text" ? detail::document_text(doc) : serialize_document(doc);
    result.exit_code = 0;
  };
  try {
    if (verb == "check nambu") {
      report({check_nambu_poisson(detail::require<MultiVectorField>(args, 0, "check nambu", "multivector"),
                                  config.jobs)});
    } else if (verb == "check filippov-linear") {
      if (args.documents.empty()) throw UsageError("check filippov-linear: missing input");
      if (auto s = args.documents[0].as<NAryStructure>())
        report({check_fundamental_identity(*s, config.jobs)});
      else
        report({fi_check_linear_functions(
            detail::require<MultiVectorField>(args, 0, "check filippov-linear", "multivector or structure constants"),
            config.jobs)});
    } else if (verb == "check fi-random") {
      const auto trials = config.trials.value_or(200);
      report({fi_random_test(detail::require<MultiVectorField>(args, 0, "check fi-random", "multivector"),
                             config.degree, trials, config.seed, config.jobs)},
             trials);
    } else if (verb == "check algebroid") {
      const auto samples = config.trials.value_or(20);
      auto calc = calculus_of(detail::require<AlgebroidSpec>(args, 0, "check algebroid", "algebroid"));
      report({check_axiom_anchor(calc, samples, config.seed, config.degree, config.jobs),
              check_axiom_leibniz(calc, samples, config.seed, config.degree, config.jobs),
              check_fi_sections(calc, samples, config.seed, config.degree, config.jobs)},
             samples);
    } else if (verb == "check cocycle") {
      const auto& c = detail::require<CocycleDocument>(args, 0, "check cocycle", "cocycle family");
      report({adjoint_cocycle_check(c.algebra, c.map)});
    } else if (verb == "check lemma1") {
      report({detail::lemma1_report(detail::require<Lemma1Family>(args, 0, "check lemma1", "lemma1 family"))});
    } else if (verb == "gen normal-form") {
      auto p = detail::normal_form_params(args, config);
      Document doc{{"normal-form-" + p.family, std::nullopt, {detail::params_note(p)}}, build_normal_form(p)};
      if (args.documents.empty()) doc.meta.seed = config.seed;
      emit(std::move(doc));
    } else if (verb == "gen example1") {
      const auto& g = detail::require<NAryStructure>(args, 0, "gen example1", "structure constants");
      const auto k = args.k.value_or(1);
      emit({{"example1-k" + std::to_string(k), std::nullopt, {"linear tensor of the algebra wedged with "
                                                              "k constant directions"}},
            example1_build(g, k)});
    } else if (verb == "gen example3") {
      const auto& c = detail::require<NAryStructure>(args, 0, "gen example3", "structure constants");
      const auto m = args.m.value_or(c.m());
      Poly g = args.g ? parse_poly(*args.g, m) : Poly::constant(m, 1);
      emit({{"example3", std::nullopt, {"trivial anchor, bracket g*c with g = " + format_poly(g)}},
            example3_build(c, g)});
    } else if (verb == "gen example4") {
      if (!args.n || !args.m) throw UsageError("gen example4: need --n and --m");
      emit({{"example4-n" + std::to_string(*args.n) + "-m" + std::to_string(*args.m), std::nullopt,
             {"zero frame bracket, anchor dx0^...^dx(n-1) (x) d0"}},
            example4_build(*args.n, *args.m)});
    } else if (verb == "lift tangent") {
      const auto& a = detail::require<MultiVectorField>(args, 0, "lift tangent", "multivector");
      emit({{"tangent-lift", std::nullopt, {"velocities are variables m..2m-1"}}, tangent_lift(a)});
    } else if (verb == "bracket forms") {
      const auto& l = detail::require<MultiVectorField>(args, 0, "bracket forms", "multivector");
      std::vector<DiffForm> mus;
      for (std::size_t i = 1; i < args.documents.size(); ++i)
        mus.push_back(detail::require<DiffForm>(args, i, "bracket forms", "form"));
      if (mus.size() != static_cast<std::size_t>(l.degree()))
        throw UsageError("bracket forms: need " + std::to_string(l.degree()) + " forms, got " +
                         std::to_string(mus.size()));
      emit({{"form-bracket", std::nullopt, {}}, form_bracket(l, mus)});
    } else if (verb == "bracket nambu") {
      const auto& l = detail::require<MultiVectorField>(args, 0, "bracket nambu", "multivector");
      std::vector<Poly> fs;
      for (const auto& f : args.functions) fs.push_back(parse_poly(f, l.m()));
      emit({{"nambu-bracket", std::nullopt, {"a function, written as a 0-form"}},
            DiffForm::function(nambu_bracket(l, fs))});
    } else {
      throw UsageError("unknown verb '" + verb + "'");
    }
  } catch (const TheoremViolation& e) {
    result.exit_code = 1;
    result.error = e.what();
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.error = e.what();
    result.output.clear();
  }
  return result;
}

}  // namespace nambu::cli
