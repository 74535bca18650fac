#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/literal.hpp"
#include "nambu/sampling.hpp"

namespace nambu {

struct Witness {
  std::string description;
  // operation inputs and tuple indices, in the order they were supplied
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Rational> point;
  // one nonzero term of the residual, and the full residual evaluated at `point`
  std::string residual_term;
  std::string residual_at_point;
};

struct CheckReport {
  std::string check;
  bool pass = true;
  std::optional<Witness> witness;
  std::vector<std::pair<std::string, std::uint64_t>> stats;
  std::vector<std::string> notes;

  void stat(const std::string& name, std::uint64_t value) {
    for (auto& [k, v] : stats)
      if (k == name) {
        v = value;
        return;
      }
    stats.emplace_back(name, value);
  }

  void fail(Witness w) {
    pass = false;
    witness = std::move(w);
  }
};

inline std::string format_index(const MultiIndex& idx) {
  std::string out = "[";
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "," : "") + std::to_string(idx[i]);
  return out + "]";
}

/// A point of Q^n where `p` does not vanish. Searches the origin, then {0,1}^n, then the grid
/// {0..d}^n with d the largest exponent; a nonzero polynomial cannot vanish on that whole grid.
inline std::vector<Rational> nonzero_point(const Poly& p) {
  const std::size_t n = p.nvars();
  std::vector<Rational> pt(n, Rational(0));
  if (p.is_zero()) throw PreconditionError("nonzero_point: zero polynomial");
  if (p.evaluate(pt) != 0) return pt;
  std::uint32_t d = 1;
  for (const auto& [mono, c] : p.terms())
    for (auto e : mono) d = std::max(d, e);
  std::vector<std::uint32_t> radices{2};
  if (d > 1) radices.push_back(d + 1);
  for (std::uint32_t radix : radices) {
    std::vector<std::uint32_t> digits(n, 0);
    std::uint64_t visited = 0;
    while (true) {
      std::size_t k = 0;
      while (k < n && digits[k] + 1 == radix) digits[k++] = 0;
      if (k == n) break;
      ++digits[k];
      for (std::size_t i = 0; i < n; ++i) pt[i] = Rational(digits[i]);
      if (p.evaluate(pt) != 0) return pt;
      if (++visited > 4000000) break;
    }
  }
  // Unreachable for the sizes used here; the grid walk is exhaustive below its cap.
  Sampler rng(0x9e3779b97f4a7c15ULL);
  while (true) {
    for (auto& x : pt) x = Rational(rng.uniform(-10, 10));
    if (p.evaluate(pt) != 0) return pt;
  }
}

template <class Kind>
Graded<Kind> evaluate_tensor(const Graded<Kind>& a, std::span<const Rational> point) {
  Graded<Kind> out(a.m(), a.degree());
  for (const auto& [idx, c] : a.terms()) out.add_term(idx, Poly::constant(a.m(), c.evaluate(point)));
  return out;
}

/// Witness for a nonzero tensor-valued residual: its leading term, a point where that term's
/// coefficient is nonzero, and the residual at that point.
template <class Kind>
Witness residual_witness(std::string description, std::vector<std::pair<std::string, std::string>> inputs,
                         const Graded<Kind>& residual) {
  Witness w;
  w.description = std::move(description);
  w.inputs = std::move(inputs);
  const auto& [idx, c] = *residual.terms().begin();
  Graded<Kind> lead(residual.m(), residual.degree());
  lead.add_term(idx, c);
  w.residual_term = format_tensor(lead);
  w.point = nonzero_point(c);
  w.residual_at_point = format_tensor(evaluate_tensor(residual, w.point));
  return w;
}

/// Scalar residuals print as a plain polynomial term and value.
inline Witness residual_witness(std::string description, std::vector<std::pair<std::string, std::string>> inputs,
                                const Poly& residual) {
  Witness w;
  w.description = std::move(description);
  w.inputs = std::move(inputs);
  const auto& [mono, c] = *residual.terms().begin();
  Poly lead(residual.nvars());
  lead.add_term(mono, c);
  w.residual_term = format_poly(lead);
  w.point = nonzero_point(residual);
  w.residual_at_point = to_string(residual.evaluate(w.point));
  return w;
}

/// Evaluates `probe(i)` for i in [0, count) on up to `jobs` threads and returns the smallest i whose
/// probe produced a value. The answer does not depend on `jobs` or on scheduling.
template <class T, class Probe>
std::optional<std::pair<std::size_t, T>> find_first(std::size_t count, unsigned jobs, Probe probe) {
  std::optional<std::pair<std::size_t, T>> best;
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i)
      if (auto r = probe(i)) return std::make_pair(i, std::move(*r));
    return best;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> bound{count};
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_index = count;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= bound.load()) return;
      try {
        if (auto r = probe(i)) {
          std::lock_guard lock(mu);
          if (i < bound.load()) {
            bound.store(i);
            best.emplace(i, std::move(*r));
          }
        }
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        if (i < bound.load()) bound.store(i);
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::min<std::size_t>(jobs, count);
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error && (!best || error_index < best->first)) std::rethrow_exception(error);
  return best;
}

}  // namespace nambu
