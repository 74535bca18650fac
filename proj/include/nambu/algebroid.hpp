#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/filippov.hpp"
#include "nambu/literal.hpp"
#include "nambu/report.hpp"
#include "nambu/sampling.hpp"

namespace nambu {

/// Components of a section of the trivial bundle R^m × R^r in the frame e_0..e_{r−1}.
using Section = std::vector<Poly>;

/// Coordinates (x_0..x_{m−1}, ξ_0..ξ_{r−1}) on the dual bundle.
struct DualVars {
  std::size_t m = 0;
  std::size_t r = 0;

  std::size_t nvars() const { return m + r; }
  std::uint32_t x(std::size_t j) const { return static_cast<std::uint32_t>(j); }
  std::uint32_t xi(std::size_t i) const { return static_cast<std::uint32_t>(m + i); }
  bool is_xi(std::uint32_t v) const { return v >= m; }

  /// Degree in ξ of every term, or −1 if the polynomial is zero or not ξ-homogeneous.
  std::int64_t xi_degree(const Poly& p) const {
    std::int64_t deg = -1;
    for (const auto& [mono, c] : p.terms()) {
      std::int64_t d = 0;
      for (std::size_t v = m; v < mono.size(); ++v) d += mono[v];
      if (deg >= 0 && d != deg) return -1;
      deg = d;
    }
    return deg;
  }
};

/// Bracket of frame sections (structure functions c^k_I(x)) and anchor (a^j_J(x)) of a candidate
/// Filippov algebroid on a trivial bundle. Stored on increasing tuples; access applies permutation signs.
class AlgebroidSpec {
 public:
  AlgebroidSpec(std::size_t m, std::size_t r, int n) : m_(m), r_(r), n_(n) {
    if (n < 1) throw ShapeError("AlgebroidSpec: arity must be at least 1");
  }

  std::size_t m() const { return m_; }
  std::size_t r() const { return r_; }
  int n() const { return n_; }
  DualVars dual() const { return {m_, r_}; }
  const std::map<MultiIndex, Section>& bracket_terms() const { return bracket_; }
  const std::map<MultiIndex, std::vector<Poly>>& anchor_terms() const { return anchor_; }

  void add_bracket(MultiIndex tuple, std::uint32_t k, const Poly& c) {
    check(tuple, static_cast<std::size_t>(n_), k, r_, c);
    add_to(bracket_, std::move(tuple), k, c, r_);
  }

  void add_anchor(MultiIndex tuple, std::uint32_t j, const Poly& c) {
    check(tuple, static_cast<std::size_t>(n_ - 1), j, m_, c);
    add_to(anchor_, std::move(tuple), j, c, m_);
  }

  /// [e_I] for any tuple I of frame indices.
  Section frame_bracket(MultiIndex tuple) const { return lookup(bracket_, std::move(tuple), r_); }

  /// Components of a(e_J) for any tuple J of frame indices.
  std::vector<Poly> frame_anchor(MultiIndex tuple) const { return lookup(anchor_, std::move(tuple), m_); }

  friend bool operator==(const AlgebroidSpec& a, const AlgebroidSpec& b) {
    return a.m_ == b.m_ && a.r_ == b.r_ && a.n_ == b.n_ && a.bracket_ == b.bracket_ && a.anchor_ == b.anchor_;
  }

 private:
  void check(const MultiIndex& tuple, std::size_t len, std::uint32_t out, std::size_t out_range, const Poly& c) const {
    if (tuple.size() != len) throw ShapeError("AlgebroidSpec: tuple has the wrong length");
    for (auto i : tuple)
      if (i >= r_) throw IndexError("AlgebroidSpec: frame index out of range");
    if (out >= out_range) throw IndexError("AlgebroidSpec: output index out of range");
    if (c.nvars() != m_) throw DimensionError("AlgebroidSpec: structure function must use the base variables");
  }

  static void add_to(std::map<MultiIndex, std::vector<Poly>>& table, MultiIndex tuple, std::uint32_t k, const Poly& c,
                     std::size_t width) {
    const int sign = canonicalize_index(tuple);
    if (sign == 0 || c.is_zero()) return;
    auto [it, inserted] = table.try_emplace(tuple, std::vector<Poly>(width, Poly(c.nvars())));
    it->second[k] += sign > 0 ? c : -c;
    if (std::all_of(it->second.begin(), it->second.end(), [](const Poly& p) { return p.is_zero(); })) table.erase(it);
  }

  std::vector<Poly> lookup(const std::map<MultiIndex, std::vector<Poly>>& table, MultiIndex tuple,
                           std::size_t width) const {
    std::vector<Poly> out(width, Poly(m_));
    for (auto i : tuple)
      if (i >= r_) throw IndexError("AlgebroidSpec: frame index out of range");
    const int sign = canonicalize_index(tuple);
    if (sign == 0) return out;
    auto it = table.find(tuple);
    if (it == table.end()) return out;
    for (std::size_t k = 0; k < width; ++k) out[k] = sign > 0 ? it->second[k] : -it->second[k];
    return out;
  }

  std::size_t m_, r_;
  int n_;
  std::map<MultiIndex, Section> bracket_;
  std::map<MultiIndex, std::vector<Poly>> anchor_;
};

inline void check_sections(const AlgebroidSpec& spec, std::span<const Section> ys, std::size_t expected,
                           const char* who) {
  if (ys.size() != expected)
    throw ShapeError(std::string(who) + ": expected " + std::to_string(expected) + " sections, got " +
                     std::to_string(ys.size()));
  for (const auto& y : ys) {
    if (y.size() != spec.r()) throw ShapeError(std::string(who) + ": section has the wrong rank");
    for (const auto& c : y)
      if (c.nvars() != spec.m()) throw DimensionError(std::string(who) + ": section component over the wrong base");
  }
}

/// ι_Y = Σ_i Y_i(x) ξ_i.
inline Poly iota(const Section& y, const DualVars& vars) {
  if (y.size() != vars.r) throw ShapeError("iota: section has the wrong rank");
  Poly out(vars.nvars());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i].nvars() != vars.m) throw DimensionError("iota: section component over the wrong base");
    out += y[i].embed(vars.nvars()) * Poly::variable(vars.nvars(), vars.xi(i));
  }
  return out;
}

namespace detail {

/// Calls visit(idx, coefficient) for every tuple of pairwise distinct frame indices, one per section,
/// with coefficient Π_t ys[t][idx[t]] nonzero.
template <class Visit>
void for_each_distinct_tuple(std::span<const Section> ys, std::size_t m, Visit visit) {
  MultiIndex idx(ys.size());
  auto rec = [&](auto&& self, std::size_t slot, const Poly& coeff) -> void {
    if (slot == ys.size()) {
      visit(idx, coeff);
      return;
    }
    for (std::uint32_t i = 0; i < ys[slot].size(); ++i) {
      if (ys[slot][i].is_zero()) continue;
      if (std::find(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(slot), i) !=
          idx.begin() + static_cast<std::ptrdiff_t>(slot))
        continue;
      idx[slot] = i;
      self(self, slot + 1, coeff * ys[slot][i]);
    }
  };
  rec(rec, 0, Poly::constant(m, 1));
}

}  // namespace detail

inline MultiVectorField anchor_apply(const AlgebroidSpec& spec, std::span<const Section> xs) {
  check_sections(spec, xs, static_cast<std::size_t>(spec.n() - 1), "anchor_apply");
  MultiVectorField out(spec.m(), 1);
  detail::for_each_distinct_tuple(xs, spec.m(), [&](const MultiIndex& idx, const Poly& coeff) {
    auto a = spec.frame_anchor(idx);
    for (std::uint32_t j = 0; j < spec.m(); ++j)
      if (!a[j].is_zero()) out.add_term({j}, coeff * a[j]);
  });
  return out;
}

/// Multilinear expansion with the Leibniz correction in every slot:
/// [Y_1..Y_N] = Σ_I ΠY_t^{i_t}[e_I] + Σ_s (−1)^{N−s} a(Y_1..Ŷ_s..Y_N)(Y_s^j) e_j.
inline Section bracket_sections(const AlgebroidSpec& spec, std::span<const Section> ys) {
  const auto big_n = static_cast<std::size_t>(spec.n());
  check_sections(spec, ys, big_n, "bracket_sections");
  Section out(spec.r(), Poly(spec.m()));
  detail::for_each_distinct_tuple(ys, spec.m(), [&](const MultiIndex& idx, const Poly& coeff) {
    auto b = spec.frame_bracket(idx);
    for (std::size_t k = 0; k < spec.r(); ++k)
      if (!b[k].is_zero()) out[k] += coeff * b[k];
  });
  if (spec.anchor_terms().empty()) return out;
  for (std::size_t s = 0; s < big_n; ++s) {
    std::vector<Section> rest;
    for (std::size_t t = 0; t < big_n; ++t)
      if (t != s) rest.push_back(ys[t]);
    auto field = anchor_apply(spec, rest);
    if (field.is_zero()) continue;
    // s is 0-based, so (−1)^{N−s} with s counted from 1 is (−1)^{N−1−s}
    const bool negate = (big_n - 1 - s) % 2 == 1;
    for (std::size_t j = 0; j < spec.r(); ++j) {
      Poly d = apply_field(field, ys[s][j]);
      out[j] += negate ? -d : d;
    }
  }
  return out;
}

/// The bracket and anchor a checker exercises. Built from a spec, or assembled from mismatched parts
/// for negative controls.
struct SectionCalculus {
  std::size_t m = 0, r = 0;
  int n = 0;
  std::function<Section(std::span<const Section>)> bracket;
  std::function<MultiVectorField(std::span<const Section>)> anchor;
};

inline SectionCalculus calculus_of(const AlgebroidSpec& spec) {
  return {spec.m(), spec.r(), spec.n(), [spec](std::span<const Section> ys) { return bracket_sections(spec, ys); },
          [spec](std::span<const Section> xs) { return anchor_apply(spec, xs); }};
}

inline AlgebroidSpec example3_build(const NAryStructure& c, const Poly& g) {
  AlgebroidSpec spec(g.nvars(), c.m(), c.n());
  for (const auto& [tuple, v] : c.constants())
    for (std::uint32_t k = 0; k < c.m(); ++k)
      if (v[k] != 0) spec.add_bracket(tuple, k, v[k] * g);
  return spec;
}

/// Arity n+1 on T R^m: zero frame bracket, anchor dx_0∧…∧dx_{n−1} ⊗ ∂_0.
inline AlgebroidSpec example4_build(int n, std::size_t m) {
  if (n < 1 || static_cast<std::size_t>(n) > m) throw ShapeError("example4_build: need 1 <= n <= m");
  AlgebroidSpec spec(m, m, n + 1);
  MultiIndex first(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) first[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
  spec.add_anchor(first, 0, Poly::constant(m, 1));
  return spec;
}

/// Tensor on the dual bundle whose bracket of ξ-linear functions reproduces the section bracket:
/// Σ c^k_I ξ_k ∂_{ξ_I} + Σ a^j_J ∂_{ξ_J} ∧ ∂_{x_j}.
inline MultiVectorField filippov_tensor_of(const AlgebroidSpec& spec) {
  const auto vars = spec.dual();
  const std::size_t nv = vars.nvars();
  MultiVectorField out(nv, spec.n());
  for (const auto& [tuple, comps] : spec.bracket_terms()) {
    MultiIndex idx;
    for (auto i : tuple) idx.push_back(vars.xi(i));
    Poly c(nv);
    for (std::size_t k = 0; k < comps.size(); ++k) c += comps[k].embed(nv) * Poly::variable(nv, vars.xi(k));
    out.add_term(idx, c);
  }
  for (const auto& [tuple, comps] : spec.anchor_terms()) {
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (comps[j].is_zero()) continue;
      MultiIndex idx;
      for (auto i : tuple) idx.push_back(vars.xi(i));
      idx.push_back(vars.x(j));
      out.add_term(idx, comps[j].embed(nv));
    }
  }
  return out;
}

/// Inverse of filippov_tensor_of. Rejects tensors whose bracket on ξ-linear and base functions
/// is not of algebroid type, naming the offending term.
inline AlgebroidSpec algebroid_from_filippov_tensor(const MultiVectorField& lambda, const DualVars& vars) {
  if (lambda.m() != vars.nvars()) throw DimensionError("algebroid_from_filippov_tensor: dimension mismatch");
  if (lambda.degree() < 1) throw ShapeError("algebroid_from_filippov_tensor: degree must be at least 1");
  const int n = lambda.degree();
  AlgebroidSpec spec(vars.m, vars.r, n);
  auto reject = [&](const MultiIndex& idx, const Poly& c, const std::string& why) {
    MultiVectorField term(lambda.m(), n);
    term.add_term(idx, c);
    throw ShapeError("not an algebroid tensor (" + why + "): " + format_tensor(term));
  };
  for (const auto& [idx, c] : lambda.terms()) {
    MultiIndex xs, xis;
    for (auto v : idx) (vars.is_xi(v) ? xis : xs).push_back(v);
    const auto deg = vars.xi_degree(c);
    if (xs.empty()) {
      if (deg != 1) reject(idx, c, "bracket of frame sections is not fibrewise linear");
      MultiIndex frame;
      for (auto v : xis) frame.push_back(v - static_cast<std::uint32_t>(vars.m));
      for (const auto& [mono, coeff] : c.terms()) {
        std::uint32_t k = 0;
        while (mono[vars.m + k] == 0) ++k;
        Monomial base(mono.begin(), mono.begin() + static_cast<std::ptrdiff_t>(vars.m));
        Poly p(vars.m);
        p.add_term(base, coeff);
        spec.add_bracket(frame, k, p);
      }
    } else if (xs.size() == 1) {
      if (deg != 0) reject(idx, c, "anchor coefficient depends on the fibre");
      MultiIndex frame;
      for (auto v : xis) frame.push_back(v - static_cast<std::uint32_t>(vars.m));
      // ∂_{x_j} sorts first; moving it past n−1 fibre directions gives (−1)^{n−1}
      Poly base(vars.m);
      for (const auto& [mono, coeff] : c.terms())
        base.add_term(Monomial(mono.begin(), mono.begin() + static_cast<std::ptrdiff_t>(vars.m)), coeff);
      spec.add_anchor(frame, xs[0], (n - 1) % 2 == 0 ? base : -base);
    } else {
      reject(idx, c, "bracket of two base functions is nonzero");
    }
  }
  return spec;
}

namespace detail {

inline std::string format_section(const Section& y) {
  std::string out = "(";
  for (std::size_t i = 0; i < y.size(); ++i) out += (i ? ", " : "") + format_poly(y[i]);
  return out + ")";
}

inline Section sample_section(Sampler& rng, std::size_t m, std::size_t r, std::uint32_t degree) {
  Section y;
  for (std::size_t i = 0; i < r; ++i) y.push_back(rng.sparse_poly(m, degree, 3));
  return y;
}

inline bool is_zero_section(const Section& y) {
  return std::all_of(y.begin(), y.end(), [](const Poly& p) { return p.is_zero(); });
}

/// Runs `residual(rng)` on `samples` independently seeded draws; the first nonzero residual becomes the witness.
template <class Residual>
CheckReport sampled_check(const std::string& name, std::size_t samples, std::uint64_t seed, unsigned jobs,
                          Residual residual) {
  CheckReport r;
  r.check = name;
  Sampler master(seed);
  std::vector<std::uint64_t> seeds(samples);
  for (auto& s : seeds) s = master.next();
  auto hit = find_first<Witness>(samples, jobs, [&](std::size_t t) -> std::optional<Witness> {
    Sampler rng(seeds[t]);
    return residual(rng);
  });
  if (hit) {
    hit->second.inputs.insert(hit->second.inputs.begin(), {"sample", std::to_string(hit->first)});
    r.fail(std::move(hit->second));
    r.stat("samples", hit->first + 1);
  } else {
    r.stat("samples", samples);
  }
  return r;
}

inline std::optional<Witness> section_residual_witness(const std::string& what,
                                                       std::vector<std::pair<std::string, std::string>> inputs,
                                                       const Section& residual, const DualVars& vars) {
  if (is_zero_section(residual)) return std::nullopt;
  return residual_witness(what, std::move(inputs), iota(residual, vars));
}

}  // namespace detail

/// Axiom (ii): [X_1..X_{n−1}, fY] = f[X_1..X_{n−1}, Y] + a(X_1∧…∧X_{n−1})(f) Y on sampled sections.
inline CheckReport check_axiom_leibniz(const SectionCalculus& calc, std::size_t samples = 20, std::uint64_t seed = 1,
                                       std::uint32_t degree = 2, unsigned jobs = 1) {
  const DualVars vars{calc.m, calc.r};
  return detail::sampled_check("axiom-leibniz", samples, seed, jobs, [&](Sampler& rng) -> std::optional<Witness> {
    std::vector<Section> args;
    for (int i = 0; i < calc.n; ++i) args.push_back(detail::sample_section(rng, calc.m, calc.r, degree));
    Poly f = rng.sparse_poly(calc.m, degree, 3);
    Section y = args.back();
    Section fy = y;
    for (auto& c : fy) c = f * c;
    args.back() = fy;
    Section lhs = calc.bracket(args);
    args.back() = y;
    Section plain = calc.bracket(args);
    auto field = calc.anchor(std::span<const Section>(args).first(args.size() - 1));
    Poly af = apply_field(field, f);
    Section res(calc.r, Poly(calc.m));
    for (std::size_t k = 0; k < calc.r; ++k) res[k] = lhs[k] - f * plain[k] - af * y[k];
    std::vector<std::pair<std::string, std::string>> inputs;
    for (std::size_t i = 0; i + 1 < args.size(); ++i)
      inputs.emplace_back("X" + std::to_string(i + 1), detail::format_section(args[i]));
    inputs.emplace_back("Y", detail::format_section(y));
    inputs.emplace_back("f", format_poly(f));
    return detail::section_residual_witness("Leibniz axiom fails", std::move(inputs), res, vars);
  });
}

/// Axiom (i): [a(X), a(Y)] = Σ_i a(Y_1..[X_1..X_{n−1}, Y_i]..Y_{n−1}) on sampled sections.
inline CheckReport check_axiom_anchor(const SectionCalculus& calc, std::size_t samples = 20, std::uint64_t seed = 1,
                                      std::uint32_t degree = 2, unsigned jobs = 1) {
  const auto k = static_cast<std::size_t>(calc.n - 1);
  return detail::sampled_check("axiom-anchor", samples, seed, jobs, [&](Sampler& rng) -> std::optional<Witness> {
    std::vector<Section> xs, ys;
    for (std::size_t i = 0; i < k; ++i) xs.push_back(detail::sample_section(rng, calc.m, calc.r, degree));
    for (std::size_t i = 0; i < k; ++i) ys.push_back(detail::sample_section(rng, calc.m, calc.r, degree));
    auto res = lie_bracket(calc.anchor(xs), calc.anchor(ys));
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Section> inner = xs;
      inner.push_back(ys[i]);
      std::vector<Section> replaced = ys;
      replaced[i] = calc.bracket(inner);
      res -= calc.anchor(replaced);
    }
    if (res.is_zero()) return std::nullopt;
    std::vector<std::pair<std::string, std::string>> inputs;
    for (std::size_t i = 0; i < k; ++i) inputs.emplace_back("X" + std::to_string(i + 1), detail::format_section(xs[i]));
    for (std::size_t i = 0; i < k; ++i) inputs.emplace_back("Y" + std::to_string(i + 1), detail::format_section(ys[i]));
    return residual_witness("anchor axiom fails", std::move(inputs), res);
  });
}

/// Filippov identity for the section bracket on sampled sections.
inline CheckReport check_fi_sections(const SectionCalculus& calc, std::size_t samples = 20, std::uint64_t seed = 1,
                                     std::uint32_t degree = 2, unsigned jobs = 1) {
  const DualVars vars{calc.m, calc.r};
  const auto n = static_cast<std::size_t>(calc.n);
  return detail::sampled_check("section-filippov", samples, seed, jobs, [&](Sampler& rng) -> std::optional<Witness> {
    std::vector<Section> xs, ys;
    for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back(detail::sample_section(rng, calc.m, calc.r, degree));
    for (std::size_t i = 0; i < n; ++i) ys.push_back(detail::sample_section(rng, calc.m, calc.r, degree));
    std::vector<Section> outer = xs;
    outer.push_back(calc.bracket(ys));
    Section res = calc.bracket(outer);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Section> inner = xs;
      inner.push_back(ys[i]);
      std::vector<Section> args = ys;
      args[i] = calc.bracket(inner);
      auto term = calc.bracket(args);
      for (std::size_t k = 0; k < calc.r; ++k) res[k] -= term[k];
    }
    std::vector<std::pair<std::string, std::string>> inputs;
    for (std::size_t i = 0; i < xs.size(); ++i)
      inputs.emplace_back("X" + std::to_string(i + 1), detail::format_section(xs[i]));
    for (std::size_t i = 0; i < n; ++i) inputs.emplace_back("Y" + std::to_string(i + 1), detail::format_section(ys[i]));
    return detail::section_residual_witness("Filippov identity fails on sections", std::move(inputs), res, vars);
  });
}

}  // namespace nambu
