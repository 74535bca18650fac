#include <gtest/gtest.h>

#include "nambu/exterior.hpp"
#include "nambu/literal.hpp"
#include "nambu/sampling.hpp"
#include "oracles.hpp"

using namespace nambu;
using oracle::P;

namespace {

MultiVectorField D(std::size_t m, MultiIndex idx) { return basis_multivector(m, std::move(idx)); }

MultiVectorField so3_tensor() {
  MultiVectorField t(3, 2);
  t.add_term({0, 1}, P("x2", 3));
  t.add_term({1, 2}, P("x0", 3));
  t.add_term({2, 0}, P("x1", 3));
  return t;
}

MultiVectorField signed_by(int exponent, const MultiVectorField& a) {
  return exponent % 2 == 0 ? a : -a;
}

struct Triple {
  MultiVectorField a, b, c;
};

// Degrees in [0,3] with total ≤ 6 and at most one function, so every bracket below has degree ≥ 0.
Triple random_triple(Sampler& rng) {
  const auto m = static_cast<std::size_t>(rng.uniform(2, 4));
  int p, q, r;
  do {
    p = static_cast<int>(rng.uniform(0, 3));
    q = static_cast<int>(rng.uniform(0, 3));
    r = static_cast<int>(rng.uniform(0, 3));
  } while (p + q + r > 6 || (p == 0) + (q == 0) + (r == 0) > 1 || p > static_cast<int>(m) ||
           q > static_cast<int>(m) || r > static_cast<int>(m));
  return {rng.sparse_tensor<VectorKind>(m, p, 2, 2), rng.sparse_tensor<VectorKind>(m, q, 2, 2),
          rng.sparse_tensor<VectorKind>(m, r, 2, 2)};
}

}  // namespace

TEST(Schouten, Examples) {
  // [∂x, x∂x] = ∂x on R^1
  EXPECT_EQ(schouten(D(1, {0}), P("x0", 1) * D(1, {0})), D(1, {0}));
  EXPECT_TRUE(schouten(D(3, {0, 1, 2}), D(3, {0, 1, 2})).is_zero());
  // Jacobi identity of so(3) as [Λ, Λ] = 0
  EXPECT_TRUE(schouten(so3_tensor(), so3_tensor()).is_zero());
  EXPECT_THROW(schouten(D(2, {0}), D(3, {0})), DimensionError);
}

TEST(Schouten, VectorFieldOnFunctionIsDerivative) {
  auto x = P("x1", 2) * D(2, {0}) + P("x0^2", 2) * D(2, {1});
  auto f = P("x0*x1 + x1^3", 2);
  EXPECT_EQ(schouten(x, MultiVectorField::function(f)).as_function(), apply_field(x, f));
  EXPECT_EQ(schouten(MultiVectorField::function(f), x).as_function(), -apply_field(x, f));
  auto g = MultiVectorField::function(P("x0", 2));
  auto zero = schouten(g, g);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.degree(), -1);
}

TEST(Schouten, MatchesClosedFormCoordinateExpression) {
  Sampler rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 4));
    int p = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(m)));
    int q = static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(m)));
    if (p == 0 && q == 0) q = 1;
    auto a = rng.sparse_tensor<VectorKind>(m, p, 3, 3);
    auto b = rng.sparse_tensor<VectorKind>(m, q, 3, 3);
    EXPECT_EQ(schouten(a, b), oracle::schouten_closed_form(a, b)) << a << " | " << b;
  }
}

TEST(Schouten, BracketWithVectorFieldIsTensorLieDerivative) {
  Sampler rng(7);
  for (int trial = 0; trial < 80; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 4));
    auto x = rng.sparse_tensor<VectorKind>(m, 1, 2, 3);
    auto a = rng.sparse_tensor<VectorKind>(m, static_cast<int>(rng.uniform(0, static_cast<std::int64_t>(m))), 2, 3);
    EXPECT_EQ(schouten(x, a), oracle::lie_derivative_components(x, a));
  }
}

TEST(SchoutenProperties, GradedAntisymmetry) {
  Sampler rng(301);
  for (int trial = 0; trial < 100; ++trial) {
    auto [a, b, c] = random_triple(rng);
    const int p = a.degree(), q = b.degree();
    if (p == 0 && q == 0) continue;
    EXPECT_EQ(schouten(a, b), signed_by((p - 1) * (q - 1) + 1, schouten(b, a)));
  }
}

TEST(SchoutenProperties, GradedLeibniz) {
  Sampler rng(302);
  for (int trial = 0; trial < 100; ++trial) {
    auto [a, b, c] = random_triple(rng);
    const int p = a.degree(), q = b.degree();
    auto lhs = schouten(a, wedge(b, c));
    auto rhs = wedge(schouten(a, b), c) + signed_by((p - 1) * q, wedge(b, schouten(a, c)));
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(SchoutenProperties, GradedJacobi) {
  Sampler rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    auto [a, b, c] = random_triple(rng);
    const int p = a.degree(), q = b.degree(), r = c.degree();
    auto sum = signed_by((p - 1) * (r - 1), schouten(a, schouten(b, c))) +
               signed_by((q - 1) * (p - 1), schouten(b, schouten(c, a))) +
               signed_by((r - 1) * (q - 1), schouten(c, schouten(a, b)));
    EXPECT_TRUE(sum.is_zero()) << sum;
  }
}

TEST(TangentLiftProperties, PreservesSchoutenBracket) {
  Sampler rng(304);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 3));
    const auto top = static_cast<std::int64_t>(std::min<std::size_t>(m, 2));
    auto a = rng.sparse_tensor<VectorKind>(m, static_cast<int>(rng.uniform(0, top)), 2, 2);
    auto b = rng.sparse_tensor<VectorKind>(m, static_cast<int>(rng.uniform(0, top)), 2, 2);
    EXPECT_EQ(tangent_lift(schouten(a, b)), schouten(tangent_lift(a), tangent_lift(b)));
  }
}

TEST(TangentLiftProperties, CommutesWithContractionByLiftedFunction) {
  Sampler rng(305);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform(1, 3));
    auto lambda = rng.sparse_tensor<VectorKind>(m, static_cast<int>(rng.uniform(1, static_cast<std::int64_t>(m))), 2, 2);
    auto f = rng.sparse_poly(m, 2, 3);
    std::vector<Poly> lifted{tangent_lift_function(f)};
    std::vector<Poly> base{f};
    EXPECT_EQ(contract_functions(tangent_lift(lambda), lifted), tangent_lift(contract_functions(lambda, base)));
  }
}
