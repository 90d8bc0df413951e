#include <gtest/gtest.h>

#include "tamegamma/errors.hpp"
#include "tamegamma/local_factors.hpp"
#include "tamegamma/scenarios.hpp"

using namespace tame;

namespace {

struct CubicFactors : ::testing::Test {
  AmbientPtr amb = ambient_for(5, {make_field(5, 1, 3, 0), make_field(5, 2, 1, 0)});
  FieldPtr e = embed(amb, make_field(5, 1, 3, 0));
  FieldPtr f = base_field(amb);
};

}  // namespace

TEST_F(CubicFactors, GaussSumTrivialAtOddDepth) {
  MultChar chi(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse());
  GaussSum g = gauss_sum(chi);
  EXPECT_EQ(g.sum, CycValue(1L));
  EXPECT_EQ(g.half_p, 0);
}

TEST_F(CubicFactors, GaussSumUnitAtEvenDepth) {
  MultChar chi(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse().pow(2));
  GaussSum g = gauss_sum(chi);
  // |G|^2 = |sum|^2 p^{half_p}
  mpq_class scale = 1;
  for (int i = 0; i < std::abs(g.half_p); ++i) scale *= 5;
  if (g.half_p < 0) scale = 1 / scale;
  EXPECT_EQ(g.sum * g.sum.conj() * CycValue(scale), CycValue(1L)) << g.sum.to_string();
}

TEST_F(CubicFactors, UnramifiedGammaHasLinearFactors) {
  MultChar ur = unramified_character(f, RootOfUnity(1, 4));
  LocalFactor g = tate_gamma(ur);
  EXPECT_NE(g.to_string().find("(1-e(1/4)"), std::string::npos) << g.to_string();
  EXPECT_TRUE(factor_eq(g * g.inverse(), LocalFactor(5)));
}

TEST_F(CubicFactors, EpsilonMagnitude) {
  MultChar chi(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse().pow(2));
  CycValue v = tate_eps(chi).value_at_zero();
  EXPECT_EQ(v * v.conj(), CycValue(25L));  // q^{N d} = 5^{3 * 2/3}
}

TEST_F(CubicFactors, GammaRatioForCommonRepresentative) {
  MultChar c1(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse().pow(2));
  MultChar c2(e, RootOfUnity(2, 3), 3, e->uniformizer_inverse().pow(2));
  const Elem& c = c1.wild();
  EXPECT_TRUE(factor_eq(tate_gamma(c1) * tate_gamma(c2).inverse(), LocalFactor::root(5, c2(c) * c1(c).inverse())));
}

TEST_F(CubicFactors, GammaEqualityIsReflexive) {
  MultChar chi(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse());
  MultChar tau(f, RootOfUnity(1, 4), 2, f->uniformizer_inverse());
  GammaProduct g = gamma_induced_twist(chi, tau);
  EXPECT_EQ(gamma_equal(g, g), Verdict::Equal);
}

TEST_F(CubicFactors, MismatchedLambdasAreIndeterminate) {
  MultChar chi(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse());
  MultChar tau = MultChar::trivial(f);
  GammaProduct a = gamma_induced_twist(chi, tau);
  GammaProduct b = gamma_induced_twist(MultChar(f, RootOfUnity::one(), 1, amb->zero(amb->full_prec())), tau);
  EXPECT_EQ(gamma_equal(a, b), Verdict::Indeterminate);
}

TEST(TBeta, CongruenceBound) {
  EXPECT_EQ(t_beta_congruence_bound(mpq_class(5, 8), 3), mpq_class(1, 4));
  EXPECT_EQ(t_beta_congruence_bound(mpq_class(3, 4), 2), mpq_class(1, 4));
  EXPECT_EQ(t_beta_congruence_bound(mpq_class(3, 2), 2), mpq_class(1, 2));
}

TEST(TBeta, SampledNeverBelowBound) {
  auto amb = ambient_for(5, {make_field(5, 1, 8, 0)});
  auto e = embed(amb, make_field(5, 1, 8, 0));
  Elem beta = e->uniformizer_inverse().pow(5);
  std::mt19937_64 rng(11);
  auto sampled = t_beta_sampled(beta, *e, 3, 200, rng);
  EXPECT_GE(sampled.bound, t_beta(beta, 3).bound);
  EXPECT_GT(sampled.bound, mpq_class(1, 8));
}

TEST_F(CubicFactors, BasicCheckEqualCharacters) {
  MultChar chi(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse());
  MultChar eta(f, RootOfUnity(1, 4), 2, f->uniformizer_inverse());
  PairData data{{chi}, {chi}, {chi.wild()}};
  BasicCheck bc = prop_basic_check(data, eta, eta.wild());
  EXPECT_EQ(bc.lhs, Verdict::Equal);
  EXPECT_TRUE(bc.rhs_equal);
  EXPECT_TRUE(bc.consistent);
}

TEST_F(CubicFactors, BasicCheckSignOnUniformizer) {
  MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse());
  MultChar chp(e, RootOfUnity(1, 2), 1, e->uniformizer_inverse());
  MultChar eta(f, RootOfUnity::one(), 1, f->uniformizer_inverse());
  BasicCheck bc = prop_basic_check(PairData{{chi}, {chp}, {chi.wild()}}, eta, eta.wild());
  EXPECT_TRUE(bc.consistent);
}

TEST_F(CubicFactors, BasicCheckRejectsCommonDepth) {
  FieldPtr k = embed(amb, make_field(5, 1, 3, 0));
  MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse());
  MultChar eta(k, RootOfUnity::one(), 0, k->uniformizer_inverse());
  EXPECT_THROW(prop_basic_check(PairData{{chi}, {chi}, {chi.wild()}}, eta, eta.wild()), ConfigError);
}

TEST(Suites, LocalFactors) {
  auto rep = local_factor_suite(5);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
}

TEST(Suites, TBeta) {
  auto rep = t_beta_suite(5);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
}

TEST(Suites, BasicCriterionSmall) {
  auto stats = random_basic_instances(30, 17);
  EXPECT_EQ(stats.instances, 30u);
  EXPECT_EQ(stats.inconsistent, 0u) << (stats.failures.empty() ? "" : stats.failures.front());
}
