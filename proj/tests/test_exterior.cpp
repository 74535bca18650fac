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

}  // namespace

TEST(Wedge, Examples) {
  EXPECT_EQ(mv_wedge(D(3, {0}), D(3, {1, 2})), D(3, {0, 1, 2}));
  EXPECT_TRUE(mv_wedge(D(3, {0}), D(3, {0})).is_zero());
  auto x0d1 = P("x0", 2) * D(2, {1});
  EXPECT_EQ(mv_wedge(x0d1, D(2, {0})), P("-x0", 2) * D(2, {0, 1}));
  EXPECT_THROW(mv_wedge(D(2, {0}), D(3, {0})), DimensionError);
}

TEST(Wedge, BasisConstructionAppliesPermutationSign) {
  EXPECT_EQ(D(3, {2, 0}), -D(3, {0, 2}));
  EXPECT_TRUE(D(3, {1, 1}).is_zero());
  EXPECT_EQ(D(4, {3, 1, 2}), D(4, {1, 2, 3}));
  EXPECT_THROW(D(3, {3}), IndexError);
}

TEST(ContractOnce, Examples) {
  EXPECT_EQ(contract_once(coordinate_form(2, 0), D(2, {0, 1})), D(2, {1}));
  EXPECT_EQ(contract_once(coordinate_form(2, 1), D(2, {0, 1})), -D(2, {0}));
  // hand expansion: dx2 sits in the second slot of ∂0∧∂2∧∂3
  EXPECT_EQ(contract_once(coordinate_form(4, 2), D(4, {0, 2, 3})), -D(4, {0, 3}));
  EXPECT_THROW(contract_once(coordinate_form(2, 0), MultiVectorField::function(P("x0", 2))), ShapeError);
}

TEST(ContractFunctions, Examples) {
  auto lambda0 = D(3, {0, 1, 2});
  std::vector<Poly> xyz{P("x0", 3), P("x1", 3), P("x2", 3)};
  EXPECT_EQ(contract_functions(lambda0, xyz).as_function(), P("1", 3));
  std::vector<Poly> yxz{P("x1", 3), P("x0", 3), P("x2", 3)};
  EXPECT_EQ(contract_functions(lambda0, yxz).as_function(), P("-1", 3));
  std::vector<Poly> repeated{P("x0", 3), P("x0", 3)};
  EXPECT_TRUE(contract_functions(lambda0, repeated).is_zero());
  std::vector<Poly> four(4, P("x0", 3));
  EXPECT_THROW(contract_functions(lambda0, four), ShapeError);
}

TEST(Pairing, Examples) {
  std::vector<DiffForm> d01{coordinate_form(3, 0), coordinate_form(3, 1)};
  std::vector<DiffForm> d10{coordinate_form(3, 1), coordinate_form(3, 0)};
  EXPECT_EQ(pairing(D(3, {0, 1}), d01), P("1", 3));
  EXPECT_EQ(pairing(D(3, {0, 1}), d10), P("-1", 3));
  EXPECT_EQ(pairing(P("x2", 3) * D(3, {0, 1}), d01), P("x2", 3));
  EXPECT_THROW(pairing(D(3, {0, 1, 2}), d01), ShapeError);
}

TEST(Pairing, AgreesWithContractFunctionsOnExactForms) {
  Sampler rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    auto lambda = rng.sparse_tensor<VectorKind>(3, 2, 2, 3);
    std::vector<Poly> fs{rng.sparse_poly(3, 2, 3), rng.sparse_poly(3, 2, 3)};
    std::vector<DiffForm> dfs{differential(fs[0]), differential(fs[1])};
    EXPECT_EQ(pairing(lambda, dfs), contract_functions(lambda, fs).as_function());
  }
}

TEST(ExteriorDerivative, Examples) {
  EXPECT_EQ(exterior_derivative(P("x0", 2) * coordinate_form(2, 1)), DiffForm::basis(2, {0, 1}));
  EXPECT_TRUE(exterior_derivative(differential(P("x0^2*x1 - 3*x1^3", 2))).is_zero());
  auto alpha = P("1/2*x0", 2) * coordinate_form(2, 1) - P("1/2*x1", 2) * coordinate_form(2, 0);
  EXPECT_EQ(exterior_derivative(alpha), DiffForm::basis(2, {0, 1}));
}

TEST(LieDerivative, Examples) {
  EXPECT_EQ(lie_derivative(D(2, {0}), P("x0", 2) * coordinate_form(2, 1)), coordinate_form(2, 1));
  auto x1d0 = P("x1", 2) * D(2, {0});
  EXPECT_EQ(lie_derivative(x1d0, MultiVectorField::function(P("x0", 2))).as_function(), P("x1", 2));
  EXPECT_TRUE(lie_derivative(D(3, {0}), D(3, {1, 2})).is_zero());
  EXPECT_THROW(lie_derivative(D(3, {0, 1}), D(3, {2})), ShapeError);
}

TEST(LieDerivative, CartanFormulaMatchesCoordinateFormulaOnOneForms) {
  // (L_X ω)_j = X(ω_j) + Σ_i ω_i ∂_j X^i
  Sampler rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    auto x = rng.sparse_tensor<VectorKind>(3, 1, 2, 3);
    auto w = rng.sparse_tensor<FormKind>(3, 1, 2, 3);
    DiffForm expected(3, 1);
    for (std::uint32_t j = 0; j < 3; ++j) {
      Poly c = apply_field(x, w.component(j));
      for (std::uint32_t i = 0; i < 3; ++i) c += w.component(i) * x.component(i).partial(j);
      expected.add_term({j}, c);
    }
    EXPECT_EQ(lie_derivative(x, w), expected);
  }
}

TEST(TangentLiftFunction, Examples) {
  EXPECT_EQ(tangent_lift_function(P("x0", 2)), P("x2", 4));
  EXPECT_TRUE(tangent_lift_function(P("5/3", 2)).is_zero());
  EXPECT_EQ(tangent_lift_function(P("x0*x1", 2)), P("x2*x1 + x0*x3", 4));
}

TEST(TangentLift, Examples) {
  // m = 1, coordinates (x, ẋ) = (x0, x1)
  EXPECT_EQ(tangent_lift(P("x0", 1) * D(1, {0})), P("x1", 2) * D(2, {1}) + P("x0", 2) * D(2, {0}));
  // d_T(∂0∧∂1) = ∂_{x0}∧∂_{ẋ1} + ∂_{ẋ0}∧∂_{x1}
  EXPECT_EQ(tangent_lift(D(2, {0, 1})), D(4, {0, 3}) + D(4, {2, 1}));
  EXPECT_TRUE(tangent_lift(MultiVectorField(3, 2)).is_zero());
  EXPECT_EQ(tangent_lift(MultiVectorField(3, 2)).m(), 6u);
}

TEST(SupportSubspace, Examples) {
  auto s = support_subspace(ConstMultiVector::basis(4, {0, 1}));
  EXPECT_EQ(s.dim(), 2u);
  EXPECT_TRUE(s.contains({1, 0, 0, 0}));
  EXPECT_TRUE(s.contains({0, 1, 0, 0}));
  auto sum = ConstMultiVector::basis(4, {0, 1}) + ConstMultiVector::basis(4, {2, 3});
  EXPECT_EQ(support_subspace(sum).dim(), 4u);
  EXPECT_EQ(support_subspace(make_rational(-7, 3) * sum), support_subspace(sum));
  EXPECT_THROW(support_subspace(ConstMultiVector(4, 2)), ShapeError);
}

TEST(SupportSubspace, DecomposableProductHasFactorSpaceAsSupport) {
  // (e0 + e1) ∧ (e1 − 2 e3) ∧ e2
  auto v = [](std::initializer_list<long> xs) {
    MultiVectorField f(4, 1);
    std::uint32_t j = 0;
    for (auto x : xs) f.add_term({j++}, Poly::constant(4, x));
    return f;
  };
  auto lambda = ConstMultiVector(wedge(wedge(v({1, 1, 0, 0}), v({0, 1, 0, -2})), v({0, 0, 1, 0})));
  auto s = support_subspace(lambda);
  EXPECT_EQ(s.dim(), 3u);
  EXPECT_TRUE(s.contains({1, 1, 0, 0}));
  EXPECT_TRUE(s.contains({0, 1, 0, -2}));
  EXPECT_TRUE(is_decomposable(lambda));
  EXPECT_FALSE(is_decomposable(ConstMultiVector::basis(4, {0, 1}) + ConstMultiVector::basis(4, {2, 3})));
}

TEST(EvaluateMv, Examples) {
  std::vector<Rational> pt{Rational(0), Rational(0), Rational(2)};
  EXPECT_EQ(evaluate_mv(P("x2", 3) * D(3, {0, 1}), pt), ConstMultiVector::basis(3, {0, 1}, 2));
  std::vector<Rational> origin(3, Rational(0));
  EXPECT_TRUE(evaluate_mv(so3_tensor(), origin).is_zero());
  std::vector<Rational> north{Rational(0), Rational(0), Rational(1)};
  EXPECT_EQ(evaluate_mv(so3_tensor(), north), ConstMultiVector::basis(3, {0, 1}));
  std::vector<Rational> short_pt(2, Rational(1));
  EXPECT_THROW(evaluate_mv(so3_tensor(), short_pt), DimensionError);
}

TEST(ConstMultiVector, RejectsPolynomialCoefficients) {
  EXPECT_THROW(ConstMultiVector{so3_tensor()}, ShapeError);
}

TEST(ExteriorProperties, GradedCommutativityOfWedge) {
  Sampler rng(101);
  for (int trial = 0; trial < 60; ++trial) {
    int p = static_cast<int>(rng.uniform(0, 3)), q = static_cast<int>(rng.uniform(0, 3));
    auto a = rng.sparse_tensor<VectorKind>(5, p, 2, 3);
    auto b = rng.sparse_tensor<VectorKind>(5, q, 2, 3);
    auto ba = wedge(b, a);
    EXPECT_EQ(wedge(a, b), (p * q) % 2 == 0 ? ba : -ba);
  }
}

TEST(ExteriorProperties, RepeatedContractionVanishes) {
  Sampler rng(102);
  for (int trial = 0; trial < 60; ++trial) {
    int p = static_cast<int>(rng.uniform(2, 4));
    auto a = rng.sparse_tensor<VectorKind>(4, p, 2, 4);
    auto w = rng.sparse_tensor<FormKind>(4, 1, 2, 3);
    EXPECT_TRUE(contract_once(w, contract_once(w, a)).is_zero());
  }
}

TEST(ExteriorProperties, DSquaredIsZero) {
  Sampler rng(103);
  for (int trial = 0; trial < 60; ++trial) {
    int k = static_cast<int>(rng.uniform(0, 3));
    auto w = rng.sparse_tensor<FormKind>(4, k, 3, 3);
    EXPECT_TRUE(exterior_derivative(exterior_derivative(w)).is_zero());
  }
}
