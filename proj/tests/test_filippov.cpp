#include <gtest/gtest.h>

#include "corpus.hpp"
#include "nambu/filippov.hpp"
#include "nambu/normal_forms.hpp"
#include "oracles.hpp"

using namespace nambu;
using oracle::P;

namespace {

MultiVectorField D(std::size_t m, MultiIndex idx) { return basis_multivector(m, std::move(idx)); }

RatVector V(std::initializer_list<long> xs) {
  RatVector v;
  for (auto x : xs) v.emplace_back(x);
  return v;
}

RatMatrix M(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<RatVector> out;
  std::size_t cols = 0;
  for (auto r : rows) {
    out.push_back(V(r));
    cols = out.back().size();
  }
  return RatMatrix::from_rows(out, cols);
}

NAryStructure random_structure(Sampler& rng, int n, std::size_t m, std::size_t terms) {
  NAryStructure s(n, m);
  auto tuples = increasing_tuples(m, static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < terms; ++t) {
    const auto& tuple = tuples[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(tuples.size()) - 1))];
    s.add(tuple, static_cast<std::uint32_t>(rng.uniform(0, static_cast<std::int64_t>(m) - 1)), rng.nonzero_small());
  }
  return s;
}

}  // namespace

TEST(BracketApply, Examples) {
  auto so3 = fixtures::so3();
  EXPECT_EQ(bracket_apply(so3, {0, 1}), V({0, 0, 1}));
  EXPECT_EQ(bracket_apply(so3, {1, 0}), V({0, 0, -1}));
  EXPECT_EQ(bracket_apply(so3, {0, 0}), V({0, 0, 0}));
  EXPECT_THROW(bracket_apply(so3, {0, 3}), IndexError);
  EXPECT_THROW(bracket_apply(so3, {0}), ShapeError);
}

TEST(BracketVectors, IsMultilinearExtension) {
  auto so3 = fixtures::so3();
  // [e0 + 2e1, e2] = [e0,e2] + 2[e1,e2] = −e1 + 2e0
  EXPECT_EQ(bracket_vectors(so3, {V({1, 2, 0}), V({0, 0, 1})}), V({2, -1, 0}));
}

TEST(FundamentalIdentity, Examples) {
  EXPECT_TRUE(check_fundamental_identity(fixtures::so3()).pass);
  EXPECT_TRUE(check_fundamental_identity(fixtures::abelian(4)).pass);
  EXPECT_TRUE(check_fundamental_identity(fixtures::heisenberg()).pass);
  auto perturbed = fixtures::so3();
  perturbed.add({0, 1}, 0, 1);
  auto r = check_fundamental_identity(perturbed);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.witness->inputs.size(), 2u);
}

TEST(FundamentalIdentity, LieCaseMatchesSchoutenSquareOracle) {
  // For n = 2 the identity is Jacobi, equivalent to [Λ, Λ] = 0 for the linear tensor.
  Sampler rng(61);
  int failures = 0;
  for (int t = 0; t < 80; ++t) {
    auto s = random_structure(rng, 2, static_cast<std::size_t>(rng.uniform(2, 4)), static_cast<std::size_t>(rng.uniform(1, 4)));
    auto l = linear_tensor_from_structure(s);
    const bool fi = check_fundamental_identity(s).pass;
    EXPECT_EQ(fi, schouten(l, l).is_zero());
    failures += !fi;
  }
  EXPECT_GT(failures, 0);
}

TEST(LinearTensor, Examples) {
  EXPECT_EQ(linear_tensor_from_structure(fixtures::so3()), corpus::so3());
  EXPECT_TRUE(linear_tensor_from_structure(fixtures::abelian(3)).is_zero());
  EXPECT_EQ(structure_from_linear_tensor(corpus::so3()), fixtures::so3());
  EXPECT_THROW(structure_from_linear_tensor(P("x0^2", 3) * D(3, {0, 1})), ShapeError);
  EXPECT_THROW(structure_from_linear_tensor(P("1", 3) * D(3, {0, 1})), ShapeError);
}

TEST(LinearTensor, RoundTripOnRandomStructures) {
  Sampler rng(62);
  for (int t = 0; t < 40; ++t) {
    const int n = static_cast<int>(rng.uniform(2, 3));
    auto s = random_structure(rng, n, 4, 5);
    EXPECT_EQ(structure_from_linear_tensor(linear_tensor_from_structure(s)), s);
  }
}

TEST(FiLinearFunctions, Examples) {
  auto ex1 = example1_build(fixtures::so4(), 1);
  EXPECT_EQ(ex1.m(), 7u);
  EXPECT_EQ(ex1.degree(), 3);
  EXPECT_TRUE(fi_check_linear_functions(ex1).pass);
  EXPECT_TRUE(fi_check_linear_functions(wedge(embed(corpus::so3(), 4, 0), D(4, {3}))).pass);
  auto perturbed = ex1 + P("x0", 7) * D(7, {0, 1, 2});
  EXPECT_FALSE(fi_check_linear_functions(perturbed).pass);
  EXPECT_THROW(fi_check_linear_functions(corpus::det3()), ShapeError);
}

TEST(FiLinearFunctions, AgreesWithStructureConstantCheck) {
  Sampler rng(63);
  int failures = 0;
  for (int t = 0; t < 40; ++t) {
    const int n = static_cast<int>(rng.uniform(2, 3));
    auto s = random_structure(rng, n, 4, static_cast<std::size_t>(rng.uniform(1, 3)));
    auto l = linear_tensor_from_structure(s);
    const bool via_tensor = fi_check_linear_functions(l).pass;
    EXPECT_EQ(via_tensor, check_fundamental_identity(s).pass);
    failures += !via_tensor;
  }
  EXPECT_GT(failures, 0);
}

TEST(DirectSum, Examples) {
  EXPECT_TRUE(check_fundamental_identity(fixtures::so4()).pass);
  auto ext = direct_sum(fixtures::so3(), fixtures::abelian(2));
  EXPECT_EQ(linear_tensor_from_structure(ext), embed(corpus::so3(), 5, 0));
  EXPECT_EQ(linear_tensor_from_structure(fixtures::so4()), corpus::so4());
  EXPECT_THROW(direct_sum(fixtures::so3(), fixtures::abelian(2, 3)), ShapeError);
}

TEST(DirectSum, PreservesFundamentalIdentity) {
  Sampler rng(64);
  int checked = 0;
  for (int t = 0; t < 30; ++t) {
    auto a = random_structure(rng, 2, 3, 2), b = random_structure(rng, 2, 2, 1);
    if (check_fundamental_identity(a).pass && check_fundamental_identity(b).pass) {
      EXPECT_TRUE(check_fundamental_identity(direct_sum(a, b)).pass);
      ++checked;
    }
  }
  EXPECT_GT(checked, 5);
}

TEST(Ideals, Examples) {
  auto so3 = fixtures::so3();
  EXPECT_EQ(derived_ideal(so3).dim(), 3u);
  EXPECT_TRUE(is_ideal(so3, subspace_span({V({1, 0, 0}), V({0, 1, 0}), V({0, 0, 1})}, 3)));
  EXPECT_FALSE(is_ideal(so3, subspace_span({V({1, 0, 0})}, 3)));
  auto heis = derived_ideal(fixtures::heisenberg());
  EXPECT_EQ(heis, subspace_span({V({0, 0, 1})}, 3));
  EXPECT_THROW(is_ideal(so3, Subspace(4)), DimensionError);
}

TEST(Ideals, DerivedIdealIsAlwaysAnIdeal) {
  Sampler rng(65);
  for (int t = 0; t < 40; ++t) {
    const int n = static_cast<int>(rng.uniform(2, 3));
    auto s = random_structure(rng, n, 4, static_cast<std::size_t>(rng.uniform(1, 4)));
    EXPECT_TRUE(is_ideal(s, derived_ideal(s)));
  }
}

TEST(Example1, Examples) {
  auto so3_case = example1_build(fixtures::so3(), 1);
  EXPECT_EQ(so3_case, wedge(embed(corpus::so3(), 4, 0), D(4, {3})));
  EXPECT_TRUE(fi_check_linear_functions(so3_case).pass);
  auto so4_case = example1_build(fixtures::so4(), 1);
  EXPECT_TRUE(fi_check_linear_functions(so4_case).pass);
  auto np = check_nambu_poisson(so4_case);
  EXPECT_FALSE(np.pass);
  EXPECT_EQ(np.witness->description.rfind("Plücker", 0), 0u);
  auto flat = example1_build(fixtures::abelian(3), 2);
  EXPECT_TRUE(flat.is_zero());
  EXPECT_EQ(flat.degree(), 4);
  EXPECT_TRUE(check_nambu_poisson(flat).pass);
  EXPECT_TRUE(fi_check_linear_functions(example1_build(fixtures::heisenberg(), 2)).pass);
}

TEST(Cocycle, Examples) {
  auto so3 = fixtures::so3();
  EXPECT_TRUE(adjoint_cocycle_check(so3, CocycleMap(2, RatMatrix(3, 3))).pass);
  Sampler rng(66);
  RatMatrix any(4, 6);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 6; ++j) any(i, j) = rng.nonzero_small();
  EXPECT_TRUE(adjoint_cocycle_check(fixtures::abelian(4), CocycleMap(2, any)).pass);
  RatMatrix bad(3, 3);
  bad(0, 0) = 1;
  auto r = adjoint_cocycle_check(so3, CocycleMap(2, bad));
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.witness->inputs.size(), 2u);
  EXPECT_THROW(CocycleMap(2, RatMatrix(3, 2)), ShapeError);
  EXPECT_THROW(adjoint_cocycle_check(so3, CocycleMap(2, RatMatrix(4, 6))), ShapeError);
}

TEST(Cocycle, CoboundariesPass) {
  // δ(X) = ad_X t is a cocycle for any t ∈ Λ^p g, by the Jacobi identity.
  Sampler rng(67);
  for (const auto& g : {fixtures::so3(), fixtures::heisenberg(), fixtures::so4()}) {
    for (int p = 1; p <= 3; ++p) {
      auto t = ConstMultiVector(rng.sparse_tensor<VectorKind>(g.m(), p, 0, 3));
      std::vector<ConstMultiVector> images;
      for (std::uint32_t i = 0; i < g.m(); ++i) images.push_back(ad_extended(g, i, t));
      EXPECT_TRUE(adjoint_cocycle_check(g, CocycleMap::from_images(images, p, g.m())).pass);
    }
  }
}

TEST(NormalFormA, Examples) {
  EXPECT_EQ(normal_form_A(3, 4, P("x0", 4)), P("x0", 4) * D(4, {0, 1, 2}));
  EXPECT_TRUE(check_nambu_poisson(normal_form_A(3, 4, P("x0", 4))).pass);
  EXPECT_TRUE(normal_form_A(3, 4, Poly(4)).is_zero());
  EXPECT_TRUE(check_nambu_poisson(normal_form_A(3, 4, P("x3", 4))).pass);
  EXPECT_THROW(normal_form_A(3, 4, P("x0^2", 4)), ShapeError);
  EXPECT_THROW(normal_form_A(5, 4, P("x0", 4)), ShapeError);
}

TEST(NormalFormC, Examples) {
  auto c = normal_form_C(3, 3, M({{1}}));
  EXPECT_EQ(c, P("x2", 3) * D(3, {0, 1, 2}));
  EXPECT_TRUE(check_nambu_poisson(c).pass);
  EXPECT_TRUE(normal_form_C(3, 4, RatMatrix(2, 2)).is_zero());
  auto nil = normal_form_C(3, 5, M({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}}));
  EXPECT_EQ(nil, wedge(D(5, {0, 1}), P("x2", 5) * D(5, {3}) + P("x3", 5) * D(5, {4})));
  EXPECT_TRUE(check_nambu_poisson(nil).pass);
  EXPECT_THROW(normal_form_C(3, 5, M({{1}})), ShapeError);
}

TEST(NormalFormB1, Examples) {
  auto b = normal_form_B1(3, 4, P("x0*x1", 4), RatMatrix(0, 4));
  EXPECT_EQ(b, contract_once(differential(P("x0*x1", 4)), D(4, {0, 1, 2, 3})));
  EXPECT_TRUE(check_nambu_poisson(b).pass);
  EXPECT_TRUE(normal_form_B1(3, 4, Poly(4), RatMatrix(0, 4)).is_zero());
  RatMatrix one(1, 4);
  one(0, 2) = 1;
  auto alpha = normal_form_alpha_B1(3, 5, P("x0^2", 5), one);
  EXPECT_EQ(alpha, P("2*x0", 5) * coordinate_form(5, 0) + P("x4", 5) * coordinate_form(5, 2));
  EXPECT_TRUE(exterior_derivative(restrict_to_leading(alpha, 4)).is_zero());
  EXPECT_TRUE(check_nambu_poisson(normal_form_B1(3, 5, P("x0^2", 5), one)).pass);
  EXPECT_THROW(normal_form_B1(3, 5, P("x4^2", 5), one), ShapeError);
  EXPECT_THROW(normal_form_B1(3, 5, P("x0", 5), one), ShapeError);
}

TEST(NormalFormB2, Examples) {
  auto b = normal_form_B2(3, 4, Poly(4), {}, {});
  // α = ½(x0 dx1 − x1 dx0) contracted into the first slot of ∂0∧∂1∧∂2∧∂3
  EXPECT_EQ(b, P("-1/2*x1", 4) * D(4, {1, 2, 3}) + P("-1/2*x0", 4) * D(4, {0, 2, 3}));
  EXPECT_TRUE(check_nambu_poisson(b).pass);
  EXPECT_TRUE(check_nambu_poisson(normal_form_B2(3, 4, P("x0*x1", 4), {}, {})).pass);
  auto wide = normal_form_B2(3, 6, P("x0^2 - x1^2", 6), V({1, -2}), V({3, 0}));
  EXPECT_TRUE(check_nambu_poisson(wide).pass);
  auto d = exterior_derivative(restrict_to_leading(normal_form_alpha_B2(3, 6, Poly(6), V({1, -2}), V({3, 0})), 4));
  EXPECT_EQ(d, DiffForm::basis(4, {0, 1}));
}

TEST(NormalFormB2, CoefficientsOnLeadingVariablesBreakInvolutivity) {
  // Reading the a_i sum over the leading block (x2 here) instead of transverse variables
  // gives α = ½((x0 + x2) dx1 − x1 dx0), whose tensor is decomposable but not involutive.
  DiffForm alpha(4, 1);
  alpha.add_term({1}, P("1/2*x0 + 1/2*x2", 4));
  alpha.add_term({0}, P("-1/2*x1", 4));
  auto l = normal_form_from_alpha(3, alpha);
  EXPECT_TRUE(is_decomposable_everywhere(l).pass);
  EXPECT_FALSE(check_nambu_poisson(l).pass);
}

TEST(NormalForms, RandomDrawsAreNambuPoissonAndFilippov) {
  Sampler rng(2025);
  for (const char* family : {"A", "B1", "B2", "C"}) {
    for (int t = 0; t < 6; ++t) {
      const std::size_t m = static_cast<std::size_t>(rng.uniform(4, 6));
      auto params = random_normal_form_params(family, 3, m, rng);
      auto l = build_normal_form(params);
      EXPECT_TRUE(check_nambu_poisson(l).pass) << family << " " << l;
      // linear Nambu-Poisson of order > 2 is a decomposable Filippov tensor
      EXPECT_TRUE(is_linear_tensor(l));
      EXPECT_TRUE(fi_check_linear_functions(l).pass);
      EXPECT_TRUE(is_decomposable_everywhere(l).pass);
    }
  }
}
