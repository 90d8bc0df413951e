#include <gtest/gtest.h>

#include "tamegamma/cyclotomic.hpp"
#include "tamegamma/local_factor.hpp"
#include "tamegamma/scenarios.hpp"

using namespace tame;

TEST(RootOfUnity, ReducedForm) {
  RootOfUnity z(-3, 12);
  EXPECT_EQ(z.num(), 3);
  EXPECT_EQ(z.den(), 4);
  EXPECT_TRUE((z * z.inverse()).is_one());
  EXPECT_EQ(z.pow(4), RootOfUnity::one());
}

TEST(Cyclotomic, Polynomials) {
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(5).size(), 5u);
  EXPECT_EQ(euler_phi(36), 12);
}

TEST(Cyclotomic, SumOfPrimitiveRootsIsMobius) {
  CycValue s;
  for (int k = 1; k < 7; ++k) s += CycValue::zeta(7, k);
  EXPECT_EQ(s, CycValue(-1L));
  CycValue t;
  for (int k = 0; k < 6; ++k) t += CycValue::zeta(6, k);
  EXPECT_TRUE(t.is_zero());
}

TEST(Cyclotomic, EmbeddingPreservesValue) {
  CycValue a = CycValue::zeta(4, 1) + CycValue(mpq_class(1, 3));
  CycValue b = a.embed(12);
  EXPECT_EQ(b * b, (a * a).embed(12));
  EXPECT_EQ(b.conj(), a.conj().embed(12));
}

TEST(Cyclotomic, NonCanonicalRationalInput) {
  mpq_class raw;
  mpz_set_si(raw.get_num_mpz_t(), -10);
  mpz_set_si(raw.get_den_mpz_t(), 6);
  CycValue a = CycValue::from_terms(3, {{0, raw}});
  EXPECT_EQ(a, CycValue(mpq_class(-5, 3)));
  EXPECT_EQ(CycValue(raw) + CycValue(mpq_class(5, 3)), CycValue());
}

TEST(Cyclotomic, SquareRootsOfPrimes) {
  for (int p : {3, 5, 7, 11, 13}) {
    CycValue s = sqrt_prime(p);
    EXPECT_EQ(s * s, CycValue(static_cast<long>(p))) << p;
  }
}

TEST(Cyclotomic, QuadraticGaussSum) {
  std::vector<std::pair<std::int64_t, mpq_class>> terms;
  for (std::int64_t t = 0; t < 5; ++t) terms.emplace_back(t * t, 1);
  CycValue g = CycValue::from_terms(5, terms);
  EXPECT_EQ(g * g.conj(), CycValue(5L));
  EXPECT_EQ(g * g, CycValue(5L));
}

TEST(LocalFactor, ShiftAndInverse) {
  LocalFactor f(5);
  f.times_linear({RootOfUnity(1, 4), 0, 1}).times_x(2).times_sqrt_p(1);
  EXPECT_TRUE(factor_eq(f * f.inverse(), LocalFactor(5)));
  EXPECT_TRUE(factor_eq(f.shifted_s(2).shifted_s(-2), f));
  EXPECT_FALSE(factor_eq(f.shifted_s(2), f));
}

TEST(Suites, ExactArithmetic) {
  auto rep = exact_arithmetic_suite(7);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
}
