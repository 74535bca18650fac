#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "nambu/exterior.hpp"
#include "nambu/poly.hpp"

namespace nambu {

/// All exponent vectors in `nvars` variables of total degree ≤ bound, in graded-lex order.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, std::uint32_t bound) {
  std::vector<Monomial> out;
  Monomial cur(nvars, 0);
  // odometer over exponent vectors with running total ≤ bound
  auto recurse = [&](auto&& self, std::size_t var, std::uint32_t left) -> void {
    if (var == nvars) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      cur[var] = e;
      self(self, var + 1, left - e);
    }
    cur[var] = 0;
  };
  recurse(recurse, 0, bound);
  std::sort(out.begin(), out.end(), GrlexLess{});
  return out;
}

/// Seeded, platform-independent source of random test objects.
///
/// Only raw 64-bit draws of std::mt19937_64 are used (its output sequence is
/// fixed by the standard), never the implementation-defined distributions.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  bool coin() { return (engine_() & 1) != 0; }

  /// Uniform in {-3..3} \ {0}.
  Rational nonzero_small() {
    std::int64_t v = uniform(1, 6);
    return Rational(static_cast<long>(v <= 3 ? v : 3 - v));
  }

  /// Every monomial of degree ≤ bound receives a coefficient from {-3..3} \ {0}.
  Poly dense_poly(std::size_t nvars, std::uint32_t bound) {
    Poly p(nvars);
    for (auto& mono : monomials_up_to(nvars, bound)) p.add_term(mono, nonzero_small());
    return p;
  }

  /// A polynomial with at most `max_terms` random monomials of degree ≤ bound.
  Poly sparse_poly(std::size_t nvars, std::uint32_t bound, std::size_t max_terms) {
    auto monos = monomials_up_to(nvars, bound);
    Poly p(nvars);
    auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_terms)));
    for (std::size_t t = 0; t < count; ++t) {
      auto pick = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(monos.size()) - 1));
      p.add_term(monos[pick], Rational(static_cast<long>(uniform(-3, 3))));
    }
    return p;
  }

  /// A sparse random tensor field of the given degree.
  template <class Kind>
  Graded<Kind> sparse_tensor(std::size_t m, int degree, std::uint32_t coeff_bound, std::size_t max_terms) {
    Graded<Kind> out(m, degree);
    auto tuples = increasing_tuples(m, static_cast<std::size_t>(degree));
    if (tuples.empty()) return out;
    auto count = static_cast<std::size_t>(uniform(1, static_cast<std::int64_t>(max_terms)));
    for (std::size_t t = 0; t < count; ++t) {
      auto pick = static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(tuples.size()) - 1));
      out.add_term(tuples[pick], sparse_poly(m, coeff_bound, 2));
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nambu
