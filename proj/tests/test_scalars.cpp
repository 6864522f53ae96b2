#include <gtest/gtest.h>

#include <numeric>

#include "generators.hpp"

namespace ncd {
namespace {

using testing::Rng;

TEST(CirclePoint, ExactArithmeticReducesModOne) {
  auto a = CirclePoint::exact(2, 3);
  auto b = CirclePoint::exact(1, 2);
  EXPECT_EQ(a + b, CirclePoint::exact(1, 6));
  EXPECT_EQ(a - b, CirclePoint::exact(1, 6));
  EXPECT_EQ(-a, CirclePoint::exact(1, 3));
  EXPECT_EQ(a.scaled(-4), CirclePoint::exact(1, 3));
  EXPECT_EQ(CirclePoint::exact(-7, -14), CirclePoint::exact(1, 2));
  EXPECT_TRUE((a + a + a).is_zero());
}

TEST(CirclePoint, RealPlusExactIsDowngraded) {
  auto r = CirclePoint::real(0.25) + CirclePoint::exact(1, 2);
  EXPECT_FALSE(r.is_exact());
  EXPECT_TRUE(r.downgraded());
  EXPECT_NEAR(r.value(), 0.75, 1e-15);
  EXPECT_FALSE(CirclePoint::real(0.25).downgraded());
  EXPECT_THROW(CirclePoint::real(0.1).numerator(), std::domain_error);
}

TEST(CirclePoint, QuarterPhasesAreExactInFloatingPoint) {
  EXPECT_EQ(CirclePoint::exact(1, 4).exp(), Complex(0.0, 1.0));
  EXPECT_EQ(CirclePoint::exact(1, 2).exp(), Complex(-1.0, 0.0));
  EXPECT_EQ(CirclePoint::exact(3, 4).exp(), Complex(0.0, -1.0));
  EXPECT_NEAR(std::abs(CirclePoint::exact(1, 3).exp() - std::polar(1.0, 2.0 * std::numbers::pi / 3.0)), 0.0, 1e-15);
}

TEST(CirclePoint, Parse) {
  EXPECT_EQ(parse_circle_point("1/3"), CirclePoint::exact(1, 3));
  EXPECT_EQ(parse_circle_point("-1/4"), CirclePoint::exact(3, 4));
  EXPECT_EQ(parse_circle_point("2"), CirclePoint::zero());
  auto r = parse_circle_point("0.378");
  EXPECT_FALSE(r.is_exact());
  EXPECT_NEAR(r.value(), 0.378, 1e-15);
  EXPECT_THROW(parse_circle_point("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_circle_point("abc"), std::invalid_argument);
  EXPECT_THROW(parse_circle_point(""), std::invalid_argument);
}

TEST(CirclePoint, DistanceWrapsAround) {
  EXPECT_NEAR(circle_distance(CirclePoint::real(0.95), CirclePoint::real(0.05)), 0.1, 1e-12);
  EXPECT_EQ(circle_distance(CirclePoint::exact(1, 3), CirclePoint::exact(4, 3)), 0.0);
}

// Euler phi by enumeration, independent of the polynomial division code.
std::size_t euler_phi(std::int64_t n) {
  std::size_t c = 0;
  for (std::int64_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++c;
  return c;
}

TEST(Cyclotomic, PolynomialDegreeIsEulerPhi) {
  for (std::int64_t n = 1; n <= 60; ++n) EXPECT_EQ(detail::cyclotomic_polynomial(n).size() - 1, euler_phi(n)) << n;
}

TEST(Cyclotomic, PolynomialVanishesAtPrimitiveRoot) {
  for (std::int64_t n = 1; n <= 40; ++n) {
    const auto& p = detail::cyclotomic_polynomial(n);
    Complex z = std::polar(1.0, 2.0 * std::numbers::pi / static_cast<double>(n));
    Complex v{0.0, 0.0}, zk{1.0, 0.0};
    for (auto c : p) {
      v += static_cast<double>(c) * zk;
      zk *= z;
    }
    EXPECT_LT(std::abs(v), 1e-8) << n;
  }
}

TEST(Cyclotomic, RootsOfUnityMultiplyExactly) {
  for (std::int64_t n : {2, 3, 4, 5, 6, 7, 8, 9, 12}) {
    for (std::int64_t a = 0; a < n; ++a)
      for (std::int64_t b = 0; b < n; ++b)
        EXPECT_EQ(Cyclotomic::root_of_unity(a, n) * Cyclotomic::root_of_unity(b, n), Cyclotomic::root_of_unity(a + b, n));
    EXPECT_EQ(Cyclotomic::root_of_unity(1, n).conj() * Cyclotomic::root_of_unity(1, n), Cyclotomic(1));
  }
}

TEST(Cyclotomic, SumOfAllRootsIsZero) {
  for (std::int64_t n = 2; n <= 20; ++n) {
    Cyclotomic s;
    for (std::int64_t k = 0; k < n; ++k) s += Cyclotomic::root_of_unity(k, n);
    EXPECT_TRUE(s.is_zero()) << n;
  }
}

TEST(Cyclotomic, MixedOrdersLiftToCommonField) {
  // zeta_4 * zeta_6 = zeta_12^5; zeta_3 + zeta_3^2 = -1
  EXPECT_EQ(Cyclotomic::root_of_unity(1, 4) * Cyclotomic::root_of_unity(1, 6), Cyclotomic::root_of_unity(5, 12));
  EXPECT_EQ(Cyclotomic::root_of_unity(1, 3) + Cyclotomic::root_of_unity(2, 3), Cyclotomic(-1));
  EXPECT_EQ(Cyclotomic::root_of_unity(3, 6), Cyclotomic(-1));
}

TEST(Cyclotomic, RationalsNormalise) {
  auto h = Cyclotomic::rational(1, 2);
  EXPECT_EQ(h + h, Cyclotomic(1));
  EXPECT_EQ(Cyclotomic::rational(2, -4), -h);
  EXPECT_EQ((h * Cyclotomic(2)).denominator(), 1);
  EXPECT_THROW(Cyclotomic::rational(1, 0), std::invalid_argument);
}

TEST(Cyclotomic, ArithmeticAgreesWithFloatingPointOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    Cyclotomic a = testing::random_cyclotomic(rng) + Cyclotomic::rational(testing::uniform(rng, -5, 5), testing::uniform(rng, 1, 4));
    Cyclotomic b = testing::random_cyclotomic(rng) * Cyclotomic::root_of_unity(testing::uniform(rng, 0, 9), 10);
    Complex za = a.to_complex(), zb = b.to_complex();
    EXPECT_LT(std::abs((a * b).to_complex() - za * zb), 1e-12);
    EXPECT_LT(std::abs((a + b).to_complex() - (za + zb)), 1e-12);
    EXPECT_LT(std::abs((a - b).to_complex() - (za - zb)), 1e-12);
    EXPECT_LT(std::abs(a.conj().to_complex() - std::conj(za)), 1e-12);
    EXPECT_EQ((a - b) + b, a);
  }
}

TEST(Cyclotomic, PhaseOfCirclePoint) {
  EXPECT_EQ(Cyclotomic::phase(CirclePoint::exact(1, 3)), Cyclotomic::root_of_unity(1, 3));
  EXPECT_THROW(Cyclotomic::phase(CirclePoint::real(0.1)), std::domain_error);
}

}  // namespace
}  // namespace ncd
