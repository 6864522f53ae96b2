#include <gtest/gtest.h>

#include <numeric>

#include "generators.hpp"

namespace ncd {
namespace {

using testing::Rng;

const FgAbelianGroup& plane() {
  static const FgAbelianGroup g = FgAbelianGroup::lattice(2);
  return g;
}

CohomologyClass torus_class(std::int64_t p, std::int64_t q) {
  return CohomologyClass::from_pairs(plane(), {{{0, 1}, CirclePoint::exact(p, q)}});
}

// Oracle: U e_k = e(kp/q) e_k and V e_k = e_{k-1}; U_(a,b) = e(Theta((a,0),(0,b))) U_(a,0) * U_(0,b)
// with U_(a,0) = U_(1,0)^a, so Phi(U_(a,b)) = e(pab/q) U^a V^b by repeated products.
CoeffMatrix<Cyclotomic> oracle_phi(std::int64_t p, std::int64_t q, std::int64_t a, std::int64_t b) {
  const auto n = static_cast<std::size_t>(q);
  CoeffMatrix<Cyclotomic> u(n), v(n);
  for (std::int64_t k = 0; k < q; ++k) {
    u(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = Cyclotomic::root_of_unity(k * p, q);
    v(static_cast<std::size_t>((k + q - 1) % q), static_cast<std::size_t>(k)) = Cyclotomic(1);
  }
  auto m = CoeffMatrix<Cyclotomic>::identity(n);
  for (std::int64_t i = 0; i < a; ++i) m = m * u;
  for (std::int64_t i = 0; i < b; ++i) m = m * v;
  return m.scaled(Cyclotomic::root_of_unity(p * a * b, q));
}

struct FrozenColumn {
  int row;
  int exponent;  // entry e(exponent / 3)
};

struct FrozenEntry {
  int a, b;
  FrozenColumn columns[3];
};

// Phi(U_(a,b)) for p/q = 1/3, produced by oracle_phi and frozen.
constexpr FrozenEntry kThirdTable[] = {
    {0, 0, {{0, 0}, {1, 0}, {2, 0}}}, {0, 1, {{2, 0}, {0, 0}, {1, 0}}}, {0, 2, {{1, 0}, {2, 0}, {0, 0}}},
    {1, 0, {{0, 0}, {1, 1}, {2, 2}}}, {1, 1, {{2, 0}, {0, 1}, {1, 2}}}, {1, 2, {{1, 0}, {2, 1}, {0, 2}}},
    {2, 0, {{0, 0}, {1, 2}, {2, 1}}}, {2, 1, {{2, 0}, {0, 2}, {1, 1}}}, {2, 2, {{1, 0}, {2, 2}, {0, 1}}},
};

TEST(ClockShift, FrozenThirdTable) {
  ClockShiftModel model(1, 3);
  for (const auto& e : kThirdTable) {
    auto m = model.generator_image<Cyclotomic>(e.a, e.b);
    CoeffMatrix<Cyclotomic> want(3);
    for (std::size_t k = 0; k < 3; ++k)
      want(static_cast<std::size_t>(e.columns[k].row), k) = Cyclotomic::root_of_unity(e.columns[k].exponent, 3);
    EXPECT_EQ(m, want) << e.a << "," << e.b;
    EXPECT_EQ(m, oracle_phi(1, 3, e.a, e.b));
  }
}

TEST(ClockShift, GeneratorImagesMatchOracleAndRelationIsExact) {
  for (std::int64_t q = 1; q <= 6; ++q)
    for (std::int64_t p = 0; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      ClockShiftModel model(p, q);
      EXPECT_EQ(model.relation_residual<Cyclotomic>(), 0.0);
      EXPECT_LE(model.relation_residual<Complex>(), 1e-14);
      for (std::int64_t a = 0; a < q; ++a)
        for (std::int64_t b = 0; b < q; ++b) EXPECT_EQ(model.generator_image<Cyclotomic>(a, b), oracle_phi(p, q, a, b));
    }
  EXPECT_THROW(ClockShiftModel(2, 4), std::invalid_argument);
}

TEST(ClockShift, MultiplicativeOverAllBasisPairs) {
  for (std::int64_t q = 2; q <= 6; ++q)
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      SplitModel model(torus_class(p, q));
      const auto& k = model.quotient().group;
      Multiplier nd(model.part().theta_nd);
      for (const auto& x : k.elements())
        for (const auto& y : k.elements()) {
          auto lhs = model.phi<Cyclotomic>(x) * model.phi<Cyclotomic>(y);
          auto rhs = model.phi<Cyclotomic>(k.add(x, y)).scaled(Cyclotomic::phase(-nd(x, y)));
          EXPECT_EQ(lhs, rhs) << p << "/" << q;
        }
    }
}

TEST(SplitModel, ThirdUsesThreeByThreeMatrices) {
  SplitModel model(torus_class(1, 3));
  EXPECT_EQ(model.matrix_dim(), 3U);
  EXPECT_EQ(model.quotient().group.to_string(), "Z_3 x Z_3");
  EXPECT_EQ(antisymmetrize(Multiplier(model.pulled_back())), torus_class(1, 3));
}

TEST(SplitModel, ZeroClassIsOrdinaryFourierEvaluation) {
  Rng rng(61);
  SplitModel model(torus_class(0, 1));
  EXPECT_EQ(model.matrix_dim(), 1U);
  auto theta = Multiplier(model.pulled_back());
  auto a = testing::random_complex_element(rng, plane(), 8, 3);
  auto s = split_refined(a, theta, model);
  for (int k = 0; k < 10; ++k) {
    std::vector<double> t{testing::uniform_real(rng, 0, 1), testing::uniform_real(rng, 0, 1)};
    Complex f{0.0, 0.0};
    for (const auto& [x, c] : a.terms()) f += c(0, 0) * std::polar(1.0, 2.0 * std::numbers::pi * (x[0] * t[0] + x[1] * t[1]));
    EXPECT_LE(std::abs(evaluate_split(s, t, model)(0, 0) - f), 1e-12);
  }
}

TEST(SplitModel, GeneratorEvaluatesToClockAtOrigin) {
  SplitModel model(torus_class(1, 3));
  auto theta = Multiplier(model.pulled_back());
  auto s = split_refined(AlgebraElement::monomial(plane(), {1, 0}), theta, model);
  auto m = evaluate_split(s, {0.0, 0.0}, model);
  auto clock = ClockShiftModel(1, 3).clock<Complex>();
  EXPECT_LE((m - clock).norm(), 1e-14);
  // every generator evaluates to a unitary
  for (const auto& x : std::vector<GroupElement>{{0, 1}, {2, -1}, {4, 4}}) {
    auto e = evaluate_split(split_refined(AlgebraElement::monomial(plane(), x), theta, model), {0.3, 0.9}, model);
    EXPECT_LE((e * e.adjoint() - CoeffMatrix<Complex>::identity(3)).norm(), 1e-12);
  }
}

TEST(Split, RefinedAndFullSplitsAreHomomorphisms) {
  Rng rng(62);
  for (std::int64_t q : {2, 3, 4, 5, 6}) {
    SplitModel model(torus_class(1, q));
    auto theta = Multiplier(model.pulled_back());
    for (int t = 0; t < 5; ++t) {
      auto a = testing::random_exact_element(rng, plane(), 8, 3);
      auto b = testing::random_exact_element(rng, plane(), 8, 3);
      auto ab = star(a, b, theta);
      EXPECT_EQ(split_difference(split_product(split_refined(a, theta, model), split_refined(b, theta, model)), split_refined(ab, theta, model)),
                0.0);
      EXPECT_EQ(split_difference(split_product(split_full(a, theta), split_full(b, theta)), split_full(ab, theta)), 0.0);
    }
  }
}

TEST(Split, EvaluationIsPointwiseMultiplicativeAndStarPreserving) {
  Rng rng(63);
  for (std::int64_t q : {2, 3, 4, 5, 6}) {
    SplitModel model(torus_class(q - 1, q));
    auto theta = Multiplier(model.pulled_back());
    for (int t = 0; t < 4; ++t) {
      auto a = testing::random_complex_element(rng, plane(), 8, 3);
      auto b = testing::random_complex_element(rng, plane(), 8, 3);
      auto sa = split_refined(a, theta, model);
      auto sb = split_refined(b, theta, model);
      auto sab = split_refined(star(a, b, theta), theta, model);
      auto sas = split_refined(involution(a, theta), theta, model);
      for (int k = 0; k < 10; ++k) {
        std::vector<double> pt{testing::uniform_real(rng, 0, 1), testing::uniform_real(rng, 0, 1)};
        auto ea = evaluate_split(sa, pt, model);
        EXPECT_LE((evaluate_split(sab, pt, model) - ea * evaluate_split(sb, pt, model)).norm(), 1e-10);
        EXPECT_LE((evaluate_split(sas, pt, model) - ea.adjoint()).norm(), 1e-10);
      }
    }
  }
}

TEST(Split, EquivarianceUnderTheImageOfTheClass) {
  Rng rng(64);
  SplitModel model(torus_class(1, 3));
  auto theta = Multiplier(model.pulled_back());
  auto a = testing::random_complex_element(rng, plane(), 8, 3);
  auto s = split_refined(a, theta, model);
  std::vector<std::vector<double>> pts;
  for (int k = 0; k < 10; ++k) pts.push_back({testing::uniform_real(rng, 0, 1), testing::uniform_real(rng, 0, 1)});
  auto iota = torus_class(1, 3);
  for (const auto& x : std::vector<GroupElement>{{1, 0}, {0, 1}, {2, 1}}) {
    std::vector<CirclePoint> g{iota(x, plane().basis(0)), iota(x, plane().basis(1))};
    auto r = equivariance_audit(s, g, model, pts);
    EXPECT_EQ(r.isotypy_mass, 0.0);
    EXPECT_LE(r.covariance_residual, 1e-10);
  }
  EXPECT_THROW(equivariance_audit(s, {CirclePoint::exact(1, 2), CirclePoint::zero()}, model, pts), std::invalid_argument);
}

TEST(Split, RejectsMultipliersThatAreNotPulledBack) {
  SplitModel model(torus_class(1, 3));
  auto a = AlgebraElement::monomial(plane(), {1, 0});
  Multiplier lower(lower_triangular_representative(torus_class(1, 3)));
  EXPECT_THROW(split_refined(a, lower, model), std::invalid_argument);
  Multiplier with_cob(model.pulled_back(), CoboundaryData::zero(plane()));
  EXPECT_THROW(split_refined(a, with_cob, model), std::invalid_argument);
}

TEST(SplitModel, CompositeBlocksOrUnsupported) {
  auto g = FgAbelianGroup::lattice(4);
  auto c = CohomologyClass::from_pairs(g, {{{0, 1}, CirclePoint::exact(1, 2)}, {{2, 3}, CirclePoint::exact(1, 3)}});
  SplitModel model(c);
  EXPECT_EQ(model.matrix_dim(), 6U);
  const auto& k = model.quotient().group;
  Multiplier nd(model.part().theta_nd);
  for (const auto& x : k.elements())
    for (const auto& y : k.elements())
      EXPECT_EQ(model.phi<Cyclotomic>(x) * model.phi<Cyclotomic>(y), model.phi<Cyclotomic>(k.add(x, y)).scaled(Cyclotomic::phase(-nd(x, y))));
  // a free direction in the kernel is harmless
  auto z3 = CohomologyClass::from_pairs(FgAbelianGroup::lattice(3), {{{0, 1}, CirclePoint::exact(1, 2)}});
  EXPECT_EQ(SplitModel{z3}.matrix_dim(), 2U);
  auto irr = CohomologyClass::from_pairs(plane(), {{{0, 1}, CirclePoint::real(1.0 / std::sqrt(7.0))}});
  EXPECT_THROW(SplitModel{irr}, std::domain_error);
}

// Center of the twisted group algebra is spanned by U_x with x in the kernel of the class.
std::size_t kernel_size(const CohomologyClass& c) {
  std::size_t n = 0;
  const auto& g = c.group();
  for (const auto& x : g.elements()) {
    bool in = true;
    for (std::size_t j = 0; j < g.num_generators(); ++j) in = in && c(x, g.basis(j)).is_zero();
    n += in ? 1 : 0;
  }
  return n;
}

TEST(Simplicity, KnownCases) {
  auto z33 = FgAbelianGroup::finite({3, 3});
  auto r = simplicity_report(CohomologyClass::from_pairs(z33, {{{0, 1}, CirclePoint::exact(1, 3)}}));
  EXPECT_TRUE(r.nondegenerate);
  EXPECT_EQ(r.center_dimension, 1U);
  auto z22 = FgAbelianGroup::finite({2, 2});
  auto r0 = simplicity_report(CohomologyClass::from_pairs(z22, {}));
  EXPECT_FALSE(r0.nondegenerate);
  EXPECT_EQ(r0.center_dimension, 4U);
  auto z222 = FgAbelianGroup::finite({2, 2, 2});
  auto r3 = simplicity_report(CohomologyClass::from_pairs(z222, {{{0, 1}, CirclePoint::exact(1, 2)}, {{1, 2}, CirclePoint::exact(1, 2)}}));
  EXPECT_FALSE(r3.nondegenerate);
  EXPECT_GT(*r3.center_dimension, 1U);
  EXPECT_THROW(simplicity_report(torus_class(1, 3)), std::invalid_argument);
}

TEST(Simplicity, CenterDimensionEqualsKernelSize) {
  Rng rng(65);
  const std::vector<FgAbelianGroup> groups{FgAbelianGroup::finite({2, 2}), FgAbelianGroup::finite({4, 4}), FgAbelianGroup::finite({2, 4}),
                                           FgAbelianGroup::finite({3, 9}), FgAbelianGroup::finite({2, 2, 2}), FgAbelianGroup::finite({6, 6})};
  for (const auto& g : groups)
    for (int t = 0; t < 4; ++t) {
      auto c = testing::random_class(rng, g);
      auto r = simplicity_report(c);
      ASSERT_TRUE(r.center_dimension.has_value());
      EXPECT_EQ(*r.center_dimension, kernel_size(c)) << g.to_string();
      EXPECT_EQ(r.nondegenerate, kernel_size(c) == 1);
    }
}

TEST(Simplicity, LargeGroupsSkipTheCrossCheck) {
  auto g = FgAbelianGroup::finite({10, 10});
  auto r = simplicity_report(CohomologyClass::from_pairs(g, {{{0, 1}, CirclePoint::exact(1, 10)}}));
  EXPECT_TRUE(r.nondegenerate);
  EXPECT_FALSE(r.center_dimension.has_value());
  EXPECT_EQ(r.group_order, 100);
}

}  // namespace
}  // namespace ncd
