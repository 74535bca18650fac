#pragma once

// JSON documents exchanged by the command-line tool. Every document carries "schema": 1 and a "kind";
// polynomials are lists of {exps, num, den} so rationals travel as exact integer pairs.

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "nambu/algebroid.hpp"
#include "nambu/filippov.hpp"
#include "nambu/normal_forms.hpp"

namespace nambu::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct DocumentMeta {
  std::string name;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> notes;

  friend bool operator==(const DocumentMeta&, const DocumentMeta&) = default;
};

/// Constant n-vectors fed to the dichotomy for decomposable families.
struct Lemma1Family {
  std::size_t m = 0;
  int degree = 0;
  std::vector<ConstMultiVector> members;

  friend bool operator==(const Lemma1Family&, const Lemma1Family&) = default;
};

struct CocycleDocument {
  NAryStructure algebra;
  CocycleMap map;

  friend bool operator==(const CocycleDocument& a, const CocycleDocument& b) {
    return a.algebra == b.algebra && a.map.n() == b.map.n() && a.map.matrix() == b.map.matrix();
  }
};

using Payload = std::variant<MultiVectorField, DiffForm, NAryStructure, AlgebroidSpec, Lemma1Family,
                             NormalFormParams, CocycleDocument>;

struct Document {
  DocumentMeta meta;
  Payload payload;

  friend bool operator==(const Document&, const Document&) = default;

  /// "multivector", "form", "structure_constants", "algebroid" or "family".
  std::string kind() const {
    static const char* names[] = {"multivector", "form", "structure_constants", "algebroid",
                                  "family",      "family", "family"};
    return names[payload.index()];
  }

  template <class T>
  const T* as() const {
    return std::get_if<T>(&payload);
  }
};

namespace detail {

inline Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

inline void put_rational(Json& j, const Rational& r) {
  j["num"] = integer_json(r.get_num());
  j["den"] = integer_json(r.get_den());
}

inline Json rational_json(const Rational& r) {
  Json j = Json::object();
  put_rational(j, r);
  return j;
}

inline Json poly_json(const Poly& p) {
  Json out = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    Json t = Json::object();
    t["exps"] = mono;
    put_rational(t, c);
    out.push_back(std::move(t));
  }
  return out;
}

template <class Kind>
Json tensor_terms_json(const Graded<Kind>& t) {
  Json out = Json::array();
  for (const auto& [idx, c] : t.terms()) {
    Json term = Json::object();
    term["index"] = idx;
    term["coeff"] = poly_json(c);
    out.push_back(std::move(term));
  }
  return out;
}

inline Json const_terms_json(const ConstMultiVector& v) {
  Json out = Json::array();
  for (const auto& [idx, c] : v.field().terms()) {
    Json term = Json::object();
    term["index"] = idx;
    put_rational(term, c.constant_term());
    out.push_back(std::move(term));
  }
  return out;
}

inline void put_structure(Json& j, const NAryStructure& s) {
  j["n"] = s.n();
  j["m"] = s.m();
  Json cs = Json::array();
  for (const auto& [tuple, v] : s.constants())
    for (std::uint32_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      Json c = Json::object();
      c["tuple"] = tuple;
      c["k"] = k;
      put_rational(c, v[k]);
      cs.push_back(std::move(c));
    }
  j["constants"] = std::move(cs);
}

inline Json rational_list_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

/// Walks a parsed JSON value, naming the field path in every semantic error.
class Reader {
 public:
  Reader(const Json& j, std::string path) : j_(j), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path_ + ": " + msg); }

  const Json& json() const { return j_; }
  const std::string& path() const { return path_; }

  Reader field(const char* key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) Reader(j_, path_ + "." + key).fail("missing field");
    return Reader(*it, path_ + "." + key);
  }

  std::optional<Reader> optional_field(const char* key) const {
    if (!j_.is_object()) fail("expected an object");
    auto it = j_.find(key);
    if (it == j_.end()) return std::nullopt;
    return Reader(*it, path_ + "." + key);
  }

  std::vector<Reader> items() const {
    if (!j_.is_array()) fail("expected an array");
    std::vector<Reader> out;
    for (std::size_t i = 0; i < j_.size(); ++i) out.emplace_back(j_[i], path_ + "[" + std::to_string(i) + "]");
    return out;
  }

  std::string string() const {
    if (!j_.is_string()) fail("expected a string");
    return j_.get<std::string>();
  }

  std::uint64_t unsigned_integer(std::uint64_t max = UINT64_MAX) const {
    if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<std::int64_t>() >= 0))
      fail("expected a non-negative integer");
    auto v = j_.get<std::uint64_t>();
    if (v > max) fail("value " + std::to_string(v) + " exceeds " + std::to_string(max));
    return v;
  }

  Integer integer() const {
    if (j_.is_number_integer()) {
      if (j_.is_number_unsigned()) return Integer(j_.get<std::uint64_t>());
      return Integer(static_cast<long>(j_.get<std::int64_t>()));
    }
    if (j_.is_string()) {
      std::string s = j_.get<std::string>();
      std::string_view digits = s;
      if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
        fail("expected an integer");
      return Integer(s);
    }
    fail("expected an integer");
  }

  /// {num, den} members of this object, which must already be in lowest terms.
  Rational rational(bool allow_zero = false) const {
    Integer num = field("num").integer();
    Integer den = field("den").integer();
    if (den <= 0) field("den").fail("denominator must be positive");
    Integer g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (num != 0 && g != 1) fail("rational is not reduced");
    if (num == 0 && den != 1) fail("zero must be written 0/1");
    if (num == 0 && !allow_zero) fail("zero coefficients must be omitted");
    return Rational(num, den);
  }

  MultiIndex index(std::size_t bound, std::optional<std::size_t> length = std::nullopt) const {
    MultiIndex idx;
    for (const auto& item : items()) idx.push_back(static_cast<std::uint32_t>(item.unsigned_integer(UINT32_MAX)));
    if (length && idx.size() != *length)
      fail("expected " + std::to_string(*length) + " indices, got " + std::to_string(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] >= bound) fail("index " + std::to_string(idx[i]) + " out of range (bound " + std::to_string(bound) + ")");
      if (i > 0 && idx[i - 1] >= idx[i]) fail("multi-index must be strictly increasing");
    }
    return idx;
  }

  Poly poly(std::size_t nvars) const {
    Poly p(nvars);
    std::set<Monomial> seen;
    for (const auto& term : items()) {
      auto exps_reader = term.field("exps");
      Monomial mono;
      for (const auto& e : exps_reader.items()) mono.push_back(static_cast<std::uint32_t>(e.unsigned_integer(UINT32_MAX)));
      if (mono.size() != nvars)
        exps_reader.fail("expected " + std::to_string(nvars) + " exponents, got " + std::to_string(mono.size()));
      if (!seen.insert(mono).second) exps_reader.fail("repeated monomial");
      p.add_term(std::move(mono), term.rational());
    }
    return p;
  }

  RatVector rational_list(std::optional<std::size_t> length = std::nullopt) const {
    RatVector out;
    for (const auto& item : items()) out.push_back(item.rational(true));
    if (length && out.size() != *length)
      fail("expected " + std::to_string(*length) + " entries, got " + std::to_string(out.size()));
    return out;
  }

 private:
  const Json& j_;
  std::string path_;
};

template <class Kind>
Graded<Kind> read_tensor(const Reader& r) {
  const auto m = r.field("m").unsigned_integer(1u << 16);
  const auto degree = static_cast<int>(r.field("degree").unsigned_integer(1u << 16));
  Graded<Kind> out(m, degree);
  std::set<MultiIndex> seen;
  for (const auto& term : r.field("terms").items()) {
    auto idx = term.field("index").index(m, static_cast<std::size_t>(degree));
    if (!seen.insert(idx).second) term.field("index").fail("repeated multi-index");
    Poly c = term.field("coeff").poly(m);
    if (c.is_zero()) term.field("coeff").fail("zero coefficients must be omitted");
    out.add_term(std::move(idx), c);
  }
  return out;
}

inline ConstMultiVector read_const_multivector(const Reader& r, std::size_t m, int degree) {
  ConstMultiVector out(m, degree);
  std::set<MultiIndex> seen;
  for (const auto& term : r.items()) {
    auto idx = term.field("index").index(m, static_cast<std::size_t>(degree));
    if (!seen.insert(idx).second) term.field("index").fail("repeated multi-index");
    out.add_term(std::move(idx), term.rational());
  }
  return out;
}

inline NAryStructure read_structure(const Reader& r) {
  const auto n = static_cast<int>(r.field("n").unsigned_integer(1u << 16));
  const auto m = r.field("m").unsigned_integer(1u << 16);
  if (n < 1) r.field("n").fail("arity must be at least 1");
  NAryStructure s(n, m);
  std::set<std::pair<MultiIndex, std::uint32_t>> seen;
  for (const auto& c : r.field("constants").items()) {
    auto tuple = c.field("tuple").index(m, static_cast<std::size_t>(n));
    auto k = static_cast<std::uint32_t>(c.field("k").unsigned_integer(m ? m - 1 : 0));
    if (m == 0) c.field("k").fail("no basis vectors");
    if (!seen.emplace(tuple, k).second) c.fail("repeated structure constant");
    s.add(tuple, k, c.rational());
  }
  return s;
}

inline AlgebroidSpec read_algebroid(const Reader& r) {
  const auto m = r.field("m").unsigned_integer(1u << 16);
  const auto rank = r.field("r").unsigned_integer(1u << 16);
  const auto n = static_cast<int>(r.field("n").unsigned_integer(1u << 16));
  if (n < 1) r.field("n").fail("arity must be at least 1");
  AlgebroidSpec spec(m, rank, n);
  auto read_table = [&](const char* name, const char* out_key, std::size_t tuple_len, std::size_t out_range,
                        bool anchor) {
    std::set<std::pair<MultiIndex, std::uint64_t>> seen;
    for (const auto& e : r.field(name).items()) {
      auto tuple = e.field("tuple").index(rank, tuple_len);
      if (out_range == 0) e.field(out_key).fail("output range is empty");
      auto k = e.field(out_key).unsigned_integer(out_range - 1);
      if (!seen.emplace(tuple, k).second) e.fail("repeated entry");
      Poly c = e.field("coeff").poly(m);
      if (c.is_zero()) e.field("coeff").fail("zero coefficients must be omitted");
      if (anchor)
        spec.add_anchor(tuple, static_cast<std::uint32_t>(k), c);
      else
        spec.add_bracket(tuple, static_cast<std::uint32_t>(k), c);
    }
  };
  read_table("bracket", "k", static_cast<std::size_t>(n), rank, false);
  read_table("anchor", "j", static_cast<std::size_t>(n - 1), m, true);
  return spec;
}

inline Payload read_family(const Reader& r) {
  const auto family = r.field("family").string();
  if (family == "lemma1") {
    Lemma1Family f;
    f.m = r.field("m").unsigned_integer(1u << 16);
    f.degree = static_cast<int>(r.field("degree").unsigned_integer(1u << 16));
    for (const auto& member : r.field("members").items())
      f.members.push_back(read_const_multivector(member, f.m, f.degree));
    return f;
  }
  if (family == "normal-form") {
    NormalFormParams p;
    p.family = r.field("normal_form").string();
    if (p.family != "A" && p.family != "B1" && p.family != "B2" && p.family != "C")
      r.field("normal_form").fail("unknown normal-form family '" + p.family + "'");
    p.n = static_cast<int>(r.field("n").unsigned_integer(1u << 16));
    p.m = r.field("m").unsigned_integer(1u << 16);
    p.phi = r.field("phi").poly(p.m);
    std::vector<RatVector> rows;
    std::size_t cols = 0;
    for (const auto& row : r.field("matrix").items()) {
      rows.push_back(row.rational_list());
      if (rows.size() > 1 && rows.back().size() != cols) row.fail("ragged matrix row");
      cols = rows.back().size();
    }
    p.matrix = RatMatrix::from_rows(rows, cols);
    p.a = r.field("a").rational_list();
    p.b = r.field("b").rational_list();
    return p;
  }
  if (family == "cocycle") {
    auto algebra = read_structure(r.field("algebra"));
    const auto degree = static_cast<int>(r.field("degree").unsigned_integer(1u << 16));
    std::vector<ConstMultiVector> images;
    for (const auto& image : r.field("images").items())
      images.push_back(read_const_multivector(image, algebra.m(), degree));
    if (images.size() != algebra.m())
      r.field("images").fail("expected one image per basis vector (" + std::to_string(algebra.m()) + ")");
    return CocycleDocument{algebra, CocycleMap::from_images(images, degree, algebra.m())};
  }
  r.field("family").fail("unknown family '" + family + "'");
}

/// 1-based line and column of a byte offset.
inline std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace detail

inline Json to_json(const Document& doc) {
  Json j = Json::object();
  j["schema"] = kSchemaVersion;
  j["kind"] = doc.kind();
  Json meta = Json::object();
  meta["name"] = doc.meta.name;
  if (doc.meta.seed) meta["seed"] = *doc.meta.seed;
  meta["notes"] = doc.meta.notes;
  j["meta"] = std::move(meta);
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MultiVectorField> || std::is_same_v<T, DiffForm>) {
          j["m"] = p.m();
          j["degree"] = p.degree();
          j["terms"] = detail::tensor_terms_json(p);
        } else if constexpr (std::is_same_v<T, NAryStructure>) {
          detail::put_structure(j, p);
        } else if constexpr (std::is_same_v<T, AlgebroidSpec>) {
          j["m"] = p.m();
          j["r"] = p.r();
          j["n"] = p.n();
          Json bracket = Json::array(), anchor = Json::array();
          for (const auto& [tuple, comps] : p.bracket_terms())
            for (std::uint32_t k = 0; k < comps.size(); ++k)
              if (!comps[k].is_zero()) bracket.push_back({{"tuple", tuple}, {"k", k}, {"coeff", detail::poly_json(comps[k])}});
          for (const auto& [tuple, comps] : p.anchor_terms())
            for (std::uint32_t jj = 0; jj < comps.size(); ++jj)
              if (!comps[jj].is_zero())
                anchor.push_back({{"tuple", tuple}, {"j", jj}, {"coeff", detail::poly_json(comps[jj])}});
          j["bracket"] = std::move(bracket);
          j["anchor"] = std::move(anchor);
        } else if constexpr (std::is_same_v<T, Lemma1Family>) {
          j["family"] = "lemma1";
          j["m"] = p.m;
          j["degree"] = p.degree;
          Json members = Json::array();
          for (const auto& v : p.members) members.push_back(detail::const_terms_json(v));
          j["members"] = std::move(members);
        } else if constexpr (std::is_same_v<T, NormalFormParams>) {
          j["family"] = "normal-form";
          j["normal_form"] = p.family;
          j["n"] = p.n;
          j["m"] = p.m;
          j["phi"] = detail::poly_json(p.phi);
          Json rows = Json::array();
          for (std::size_t i = 0; i < p.matrix.rows(); ++i) {
            RatVector row(p.matrix.cols());
            for (std::size_t c = 0; c < row.size(); ++c) row[c] = p.matrix(i, c);
            rows.push_back(detail::rational_list_json(row));
          }
          j["matrix"] = std::move(rows);
          j["a"] = detail::rational_list_json(p.a);
          j["b"] = detail::rational_list_json(p.b);
        } else {
          j["family"] = "cocycle";
          Json algebra = Json::object();
          detail::put_structure(algebra, p.algebra);
          j["algebra"] = std::move(algebra);
          j["degree"] = p.map.n();
          Json images = Json::array();
          for (std::uint32_t i = 0; i < p.map.m(); ++i) images.push_back(detail::const_terms_json(p.map.image(i)));
          j["images"] = std::move(images);
        }
      },
      doc.payload);
  return j;
}

inline std::string serialize_document(const Document& doc) { return to_json(doc).dump(2) + "\n"; }

inline Document from_json(const Json& j) {
  detail::Reader root(j, "$");
  if (!j.is_object()) root.fail("expected a JSON object");
  auto schema = root.field("schema");
  if (schema.unsigned_integer() != static_cast<std::uint64_t>(kSchemaVersion))
    schema.fail("unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  Document doc{DocumentMeta{}, MultiVectorField(0, 0)};
  if (auto meta = root.optional_field("meta")) {
    if (auto name = meta->optional_field("name")) doc.meta.name = name->string();
    if (auto seed = meta->optional_field("seed")) doc.meta.seed = seed->unsigned_integer();
    if (auto notes = meta->optional_field("notes"))
      for (const auto& n : notes->items()) doc.meta.notes.push_back(n.string());
  }
  const auto kind = root.field("kind").string();
  try {
    if (kind == "multivector")
      doc.payload = detail::read_tensor<VectorKind>(root);
    else if (kind == "form")
      doc.payload = detail::read_tensor<FormKind>(root);
    else if (kind == "structure_constants")
      doc.payload = detail::read_structure(root);
    else if (kind == "algebroid")
      doc.payload = detail::read_algebroid(root);
    else if (kind == "family")
      doc.payload = detail::read_family(root);
    else
      root.field("kind").fail("unknown kind '" + kind + "'");
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    // shape checks inside the library constructors
    root.fail(e.what());
  }
  return doc;
}

inline Document parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = detail::line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    throw ParseError("JSON syntax error: " + what.substr(what.find(':') + 2), line, column);
  }
  return from_json(j);
}

}  // namespace nambu::cli
