#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/linalg.hpp"
#include "nambu/literal.hpp"
#include "nambu/report.hpp"
#include "nambu/sampling.hpp"

namespace nambu {

/// Strictly increasing coordinate indices (i1 < … < i_{n−1}) naming the hamiltonian field of x_{i1},…,x_{i_{n−1}}.
using HamiltonianKey = MultiIndex;

inline std::vector<Poly> coordinate_functions(std::size_t m, const MultiIndex& idx) {
  std::vector<Poly> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(Poly::variable(m, i));
  return out;
}

inline MultiVectorField hamiltonian_field(const MultiVectorField& lambda, std::span<const Poly> fs) {
  if (lambda.degree() < 1 || fs.size() + 1 != static_cast<std::size_t>(lambda.degree()))
    throw ShapeError("hamiltonian_field: need deg - 1 = " + std::to_string(lambda.degree() - 1) + " functions, got " +
                     std::to_string(fs.size()));
  return contract_functions(lambda, fs);
}

inline MultiVectorField hamiltonian_field(const MultiVectorField& lambda, const HamiltonianKey& key) {
  auto fs = coordinate_functions(lambda.m(), key);
  return hamiltonian_field(lambda, fs);
}

inline Poly nambu_bracket(const MultiVectorField& lambda, std::span<const Poly> fs) {
  if (fs.size() != static_cast<std::size_t>(std::max(lambda.degree(), 0)))
    throw ShapeError("nambu_bracket: need " + std::to_string(lambda.degree()) + " functions, got " +
                     std::to_string(fs.size()));
  return contract_functions(lambda, fs).as_function();
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> named_polys(const std::string& stem, std::span<const Poly> ps,
                                                                    std::size_t first = 1) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < ps.size(); ++i) out.emplace_back(stem + std::to_string(first + i), format_poly(ps[i]));
  return out;
}

}  // namespace detail

/// Plücker test: i_{dx_J}Λ ∧ Λ = 0 for every (n−1)-tuple J, as polynomial identities.
inline CheckReport is_decomposable_everywhere(const MultiVectorField& lambda, unsigned jobs = 1) {
  CheckReport r;
  r.check = "decomposable";
  const int n = lambda.degree();
  if (n <= 1 || lambda.is_zero()) {
    r.stat("plucker_relations", 0);
    return r;
  }
  const auto tuples = increasing_tuples(lambda.m(), static_cast<std::size_t>(n - 1));
  auto hit = find_first<MultiVectorField>(tuples.size(), jobs, [&](std::size_t t) -> std::optional<MultiVectorField> {
    auto residual = wedge(hamiltonian_field(lambda, tuples[t]), lambda);
    if (residual.is_zero()) return std::nullopt;
    return residual;
  });
  if (hit) {
    const auto& [t, residual] = *hit;
    r.fail(residual_witness("Plücker relation i_w(L) ^ L != 0 for w = dx" + format_index(tuples[t]),
                            {{"covector", format_index(tuples[t])}}, residual));
    r.stat("plucker_relations", t + 1);
  } else {
    r.stat("plucker_relations", tuples.size());
  }
  return r;
}

/// Wedge criterion: [Λ_I, Λ_J] ∧ Λ = 0 for all coordinate (n−1)-tuples I < J.
inline CheckReport is_involutive(const MultiVectorField& lambda, unsigned jobs = 1) {
  const int n = lambda.degree();
  if (n < 2) throw PreconditionError("is_involutive: degree must be at least 2");
  if (!is_decomposable_everywhere(lambda, jobs).pass)
    throw PreconditionError("is_involutive: tensor is not decomposable everywhere");
  CheckReport r;
  r.check = "involutive";
  const auto keys = increasing_tuples(lambda.m(), static_cast<std::size_t>(n - 1));
  std::vector<MultiVectorField> hams;
  hams.reserve(keys.size());
  for (const auto& k : keys) hams.push_back(hamiltonian_field(lambda, k));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j)
      if (!hams[i].is_zero() && !hams[j].is_zero()) pairs.emplace_back(i, j);
  auto hit = find_first<MultiVectorField>(pairs.size(), jobs, [&](std::size_t t) -> std::optional<MultiVectorField> {
    auto residual = wedge(schouten(hams[pairs[t].first], hams[pairs[t].second]), lambda);
    if (residual.is_zero()) return std::nullopt;
    return residual;
  });
  if (hit) {
    const auto& [t, residual] = *hit;
    const auto& ki = keys[pairs[t].first];
    const auto& kj = keys[pairs[t].second];
    r.fail(residual_witness("[L_I, L_J] ^ L != 0: bracket of hamiltonian fields leaves the span",
                            {{"I", format_index(ki)}, {"J", format_index(kj)}}, residual));
    r.stat("pairs", t + 1);
  } else {
    r.stat("pairs", pairs.size());
  }
  return r;
}

inline CheckReport check_nambu_poisson(const MultiVectorField& lambda, unsigned jobs = 1) {
  const int n = lambda.degree();
  CheckReport r;
  r.check = "nambu-poisson";
  if (n <= 1 || lambda.is_zero()) {
    r.notes.push_back("degree " + std::to_string(n) + " or zero tensor: trivially Nambu-Poisson");
    return r;
  }
  if (n == 2) {
    auto jac = schouten(lambda, lambda);
    r.stat("schouten_terms", jac.terms().size());
    if (!jac.is_zero()) r.fail(residual_witness("[L, L] != 0", {}, jac));
    r.notes.push_back("degree 2: Poisson condition [L, L] = 0");
    return r;
  }
  auto dec = is_decomposable_everywhere(lambda, jobs);
  r.stats = dec.stats;
  if (!dec.pass) {
    r.witness = dec.witness;
    r.pass = false;
    r.notes.push_back("fails decomposability");
    return r;
  }
  auto inv = is_involutive(lambda, jobs);
  for (const auto& [k, v] : inv.stats) r.stat(k, v);
  if (!inv.pass) {
    r.witness = inv.witness;
    r.pass = false;
    r.notes.push_back("decomposable, fails involutivity");
    return r;
  }
  r.notes.push_back("decomposable and involutive");
  return r;
}

/// {f1..f_{n−1}, {g1..gn}} − Σ_i {g1..{f1..f_{n−1}, g_i}..gn}.
inline Poly filippov_residual(const MultiVectorField& lambda, std::span<const Poly> fs, std::span<const Poly> gs) {
  std::vector<Poly> outer(fs.begin(), fs.end());
  outer.push_back(nambu_bracket(lambda, gs));
  Poly res = nambu_bracket(lambda, outer);
  auto ham = hamiltonian_field(lambda, fs);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::vector<Poly> inner(gs.begin(), gs.end());
    inner[i] = apply_field(ham, gs[i]);
    res -= nambu_bracket(lambda, inner);
  }
  return res;
}

/// Falsifier for the Filippov identity: `trials` draws of 2n−1 dense polynomials of degree ≤ degree_bound.
inline CheckReport fi_random_test(const MultiVectorField& lambda, std::uint32_t degree_bound, std::size_t trials,
                                  std::uint64_t seed, unsigned jobs = 1) {
  if (trials < 1) throw PreconditionError("fi_random_test: trials must be at least 1");
  CheckReport r;
  r.check = "filippov-identity";
  const int n = lambda.degree();
  if (n <= 1 || lambda.is_zero()) {
    r.notes.push_back("degree " + std::to_string(n) + " or zero tensor: identity holds trivially");
    r.stat("trials", 0);
    return r;
  }
  Sampler master(seed);
  std::vector<std::uint64_t> trial_seeds(trials);
  for (auto& s : trial_seeds) s = master.next();
  const auto k = static_cast<std::size_t>(n);
  auto draw = [&](std::size_t t) {
    Sampler rng(trial_seeds[t]);
    std::vector<Poly> ps;
    for (std::size_t i = 0; i < 2 * k - 1; ++i) ps.push_back(rng.dense_poly(lambda.m(), degree_bound));
    return ps;
  };
  auto hit = find_first<Poly>(trials, jobs, [&](std::size_t t) -> std::optional<Poly> {
    auto ps = draw(t);
    std::span<const Poly> all(ps);
    auto res = filippov_residual(lambda, all.first(k - 1), all.subspan(k - 1));
    if (res.is_zero()) return std::nullopt;
    return res;
  });
  if (hit) {
    const auto& [t, residual] = *hit;
    auto ps = draw(t);
    std::span<const Poly> all(ps);
    auto inputs = detail::named_polys("f", all.first(k - 1));
    for (auto& kv : detail::named_polys("g", all.subspan(k - 1))) inputs.push_back(kv);
    inputs.insert(inputs.begin(), {"trial", std::to_string(t)});
    r.fail(residual_witness("Filippov identity violated", std::move(inputs), residual));
    r.stat("trials", t + 1);
  } else {
    r.stat("trials", trials);
  }
  return r;
}

inline CheckReport hamiltonian_invariance(const MultiVectorField& lambda, std::span<const Poly> fs) {
  CheckReport r;
  r.check = "hamiltonian-invariance";
  auto residual = schouten(hamiltonian_field(lambda, fs), lambda);
  r.stat("identities", 1);
  if (!residual.is_zero()) r.fail(residual_witness("[L_f, L] != 0", detail::named_polys("f", fs), residual));
  return r;
}

/// [Λ_f, Λ_g] − Σ_i Λ_{g1..{f..,g_i}..g_{n−1}}.
inline MultiVectorField hamiltonian_closure_residual(const MultiVectorField& lambda, std::span<const Poly> fs,
                                                     std::span<const Poly> gs) {
  if (fs.size() != gs.size()) throw ShapeError("hamiltonian_closure: tuples differ in length");
  auto hf = hamiltonian_field(lambda, fs);
  auto res = schouten(hf, hamiltonian_field(lambda, gs));
  for (std::size_t i = 0; i < gs.size(); ++i) {
    std::vector<Poly> inner(gs.begin(), gs.end());
    inner[i] = apply_field(hf, gs[i]);
    res -= hamiltonian_field(lambda, inner);
  }
  return res;
}

inline CheckReport hamiltonian_closure_test(const MultiVectorField& lambda, std::span<const Poly> fs,
                                            std::span<const Poly> gs) {
  CheckReport r;
  r.check = "hamiltonian-closure";
  auto residual = hamiltonian_closure_residual(lambda, fs, gs);
  r.stat("identities", 1);
  if (!residual.is_zero()) {
    auto inputs = detail::named_polys("f", fs);
    for (auto& kv : detail::named_polys("g", gs)) inputs.push_back(kv);
    r.fail(residual_witness("[L_f, L_g] differs from the derivation sum", std::move(inputs), residual));
  }
  return r;
}

/// Closure over every ordered pair of coordinate (n−1)-tuples.
inline CheckReport hamiltonian_closure_all(const MultiVectorField& lambda, unsigned jobs = 1) {
  CheckReport r;
  r.check = "hamiltonian-closure";
  const int n = lambda.degree();
  if (n < 2) throw PreconditionError("hamiltonian_closure_all: degree must be at least 2");
  const auto keys = increasing_tuples(lambda.m(), static_cast<std::size_t>(n - 1));
  const std::size_t count = keys.size() * keys.size();
  auto hit = find_first<MultiVectorField>(count, jobs, [&](std::size_t t) -> std::optional<MultiVectorField> {
    auto fs = coordinate_functions(lambda.m(), keys[t / keys.size()]);
    auto gs = coordinate_functions(lambda.m(), keys[t % keys.size()]);
    auto res = hamiltonian_closure_residual(lambda, fs, gs);
    if (res.is_zero()) return std::nullopt;
    return res;
  });
  if (hit) {
    const auto& [t, residual] = *hit;
    r.fail(residual_witness("[L_I, L_J] differs from the derivation sum",
                            {{"I", format_index(keys[t / keys.size()])}, {"J", format_index(keys[t % keys.size()])}},
                            residual));
    r.stat("pairs", t + 1);
  } else {
    r.stat("pairs", count);
  }
  return r;
}

/// Σ_k (−1)^{n+k} L_{Λ_k} μ_k − (n−1) d⟨Λ, μ1∧…∧μn⟩, Λ_k being the contraction with slot k left open.
inline DiffForm form_bracket(const MultiVectorField& lambda, std::span<const DiffForm> mus) {
  const int n = lambda.degree();
  if (n < 1 || mus.size() != static_cast<std::size_t>(n))
    throw ShapeError("form_bracket: need " + std::to_string(n) + " one-forms, got " + std::to_string(mus.size()));
  for (const auto& mu : mus) {
    if (mu.degree() != 1) throw ShapeError("form_bracket: arguments must be one-forms");
    if (mu.m() != lambda.m()) throw DimensionError("form_bracket: ambient dimensions differ");
  }
  DiffForm out(lambda.m(), 1);
  for (std::size_t k = 0; k < mus.size(); ++k) {
    MultiVectorField lk = lambda;
    for (std::size_t j = 0; j < mus.size(); ++j)
      if (j != k) lk = contract_once(mus[j], lk);
    // (−1)^{n+k} with k counted from 1
    auto term = lie_derivative(lk, mus[k]);
    out += ((n + static_cast<int>(k) + 1) % 2 == 0) ? term : -term;
  }
  auto full = pairing(lambda, mus);
  out -= Rational(n - 1) * differential(full);
  return out;
}

/// [μ1..μ_{n−1}, [ν1..νn]] − Σ_i [ν1..[μ1..μ_{n−1}, ν_i]..νn] for the form bracket.
inline DiffForm form_filippov_residual(const MultiVectorField& lambda, std::span<const DiffForm> mus,
                                       std::span<const DiffForm> nus) {
  std::vector<DiffForm> outer(mus.begin(), mus.end());
  outer.push_back(form_bracket(lambda, nus));
  DiffForm res = form_bracket(lambda, outer);
  for (std::size_t i = 0; i < nus.size(); ++i) {
    std::vector<DiffForm> inner_args(mus.begin(), mus.end());
    inner_args.push_back(nus[i]);
    std::vector<DiffForm> args(nus.begin(), nus.end());
    args[i] = form_bracket(lambda, inner_args);
    res -= form_bracket(lambda, args);
  }
  return res;
}

inline CheckReport form_filippov_check(const MultiVectorField& lambda, std::span<const DiffForm> mus,
                                       std::span<const DiffForm> nus) {
  CheckReport r;
  r.check = "form-bracket-filippov";
  auto residual = form_filippov_residual(lambda, mus, nus);
  r.stat("identities", 1);
  if (!residual.is_zero()) {
    std::vector<std::pair<std::string, std::string>> inputs;
    for (std::size_t i = 0; i < mus.size(); ++i) inputs.emplace_back("mu" + std::to_string(i + 1), format_tensor(mus[i]));
    for (std::size_t i = 0; i < nus.size(); ++i) inputs.emplace_back("nu" + std::to_string(i + 1), format_tensor(nus[i]));
    r.fail(residual_witness("Filippov identity fails for the form bracket", std::move(inputs), residual));
  }
  return r;
}

struct Lemma1Result {
  bool branch_a = false;  // supports span at most n+1 dimensions
  bool branch_b = false;  // supports share at least n−1 dimensions
  std::size_t span_dim = 0;
  std::size_t intersection_dim = 0;
};

/// Checks the hypotheses (members and pairwise sums decomposable, members nonzero) and reports which
/// branch of the dichotomy holds. Throws TheoremViolation if neither does.
inline Lemma1Result lemma1_dichotomy(const std::vector<ConstMultiVector>& family) {
  if (family.empty()) throw ShapeError("lemma1_dichotomy: empty family");
  const std::size_t m = family.front().m();
  const int n = family.front().degree();
  for (const auto& l : family) {
    if (l.m() != m) throw DimensionError("lemma1_dichotomy: members live in different dimensions");
    if (l.degree() != n) throw ShapeError("lemma1_dichotomy: members have different degrees");
    if (l.is_zero()) throw HypothesisError("lemma1_dichotomy: zero member");
    if (!is_decomposable(l)) throw HypothesisError("lemma1_dichotomy: member is not decomposable");
  }
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      auto s = family[i] + family[j];
      if (!s.is_zero() && !is_decomposable(s))
        throw HypothesisError("lemma1_dichotomy: sum of members " + std::to_string(i) + " and " + std::to_string(j) +
                              " is not decomposable");
    }
  Subspace span = support_subspace(family.front());
  Subspace common = span;
  for (std::size_t i = 1; i < family.size(); ++i) {
    auto s = support_subspace(family[i]);
    span = subspace_sum(span, s);
    common = subspace_intersect(common, s);
  }
  Lemma1Result out;
  out.span_dim = span.dim();
  out.intersection_dim = common.dim();
  out.branch_a = static_cast<int>(out.span_dim) <= n + 1;
  out.branch_b = static_cast<int>(out.intersection_dim) >= n - 1;
  if (!out.branch_a && !out.branch_b)
    throw TheoremViolation("lemma1_dichotomy: span dimension " + std::to_string(out.span_dim) +
                           " and intersection dimension " + std::to_string(out.intersection_dim) + " fit neither branch");
  return out;
}

}  // namespace nambu
