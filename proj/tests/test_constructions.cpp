#include <gtest/gtest.h>

#include "tamegamma/constructions.hpp"
#include "tamegamma/scenarios.hpp"

using namespace tame;

TEST(TameSpecs, CountsUpToDegreeTwo) {
  // Q_p, the unramified quadratic, and two ramified quadratics.
  EXPECT_EQ(tame_specs_up_to(5, 2).size(), 4u);
  EXPECT_EQ(tame_specs_up_to(7, 1).size(), 1u);
}

TEST(Congruences, LeastUnitMultiple) {
  EXPECT_EQ(least_r_unit_multiple(5, 8), 3);
  EXPECT_EQ(least_r_unit_multiple(1, 8), 1);
  EXPECT_EQ(least_r_unit_multiple(2, 8), 0);
  EXPECT_EQ(better_exponent(4), 5);
  EXPECT_EQ(better_exponent(3), 5);
}

TEST(Family, DeterministicAndAdmissible) {
  AmbientPtr amb = scenario_ambient(5, {}, 2);
  FamilyBounds b;
  b.max_dim = 2;
  b.max_depth = 1;
  b.max_order = 4;
  b.unif_roots = 2;
  TestFamily a = build_test_family(amb, b), c = build_test_family(amb, b);
  ASSERT_EQ(a.members.size(), c.members.size());
  for (std::size_t i = 0; i < a.members.size(); ++i) {
    EXPECT_EQ(a.members[i].to_string(), c.members[i].to_string());
    EXPECT_TRUE(is_admissible(a.members[i]));
  }
  EXPECT_GT(a.count_of_dim(1), 0u);
  EXPECT_GT(a.count_of_dim(2), 0u);
}

TEST(GammaEquivalence, SelfComparisonIsEqual) {
  AmbientPtr amb = scenario_ambient(5, {make_field(5, 1, 3, 0)}, 1);
  FieldPtr e = embed(amb, make_field(5, 1, 3, 0));
  WeilRep r;
  r.add(MultChar(e, RootOfUnity::one(), 1, e->uniformizer_inverse()));
  FamilyBounds b;
  b.max_dim = 1;
  b.max_depth = 1;
  TestFamily fam = build_test_family(amb, b);
  auto rep = gamma_equiv_level(r, r, 1, fam);
  EXPECT_EQ(rep.summary, Verdict::Equal);
  EXPECT_EQ(rep.tested, fam.members.size());
}

TEST(GammaEquivalence, ParallelMatchesSerial) {
  ScenarioConfig cfg;
  cfg.scenario = "noncusp";
  apply_defaults(cfg);
  AmbientPtr amb = scenario_ambient(5, {make_field(5, 1, 3, 0)}, 2);
  FieldPtr e = embed(amb, make_field(5, 1, 3, 0));
  FieldPtr f = base_field(amb);
  MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse());
  MultChar chp(e, RootOfUnity(1, 3), 2, e->uniformizer_inverse());
  WeilRep a, b;
  a.add(chi).add(MultChar::trivial(f)).add(chi.dual());
  b.add(chp).add(MultChar::trivial(f)).add(chp.dual());
  FamilyBounds fb;
  fb.max_dim = 2;
  fb.max_depth = 1;
  fb.max_order = 6;
  TestFamily fam = build_test_family(amb, fb);
  auto par = gamma_equiv_level(a, b, 2, fam);
  auto ser = gamma_equiv_level_serial(a, b, 2, fam);
  EXPECT_EQ(par.summary, ser.summary);
  EXPECT_EQ(par.equal, ser.equal);
  EXPECT_EQ(par.not_equal, ser.not_equal);
  ASSERT_EQ(par.witness.has_value(), ser.witness.has_value());
  if (par.witness) EXPECT_EQ(par.witness->to_string(), ser.witness->to_string());
  EXPECT_EQ(par.summary, Verdict::NotEqual);
}

TEST(GammaEquivalence, CancelCommon) {
  AmbientPtr amb = scenario_ambient(5, {}, 1);
  FieldPtr f = base_field(amb);
  WeilRep a, b;
  a.add(MultChar::trivial(f)).add(unramified_character(f, RootOfUnity(1, 2)));
  b.add(MultChar::trivial(f)).add(unramified_character(f, RootOfUnity(1, 4)));
  auto [ra, rb] = cancel_common(a, b);
  EXPECT_EQ(rep_dim(ra), 1);
  EXPECT_EQ(rep_dim(rb), 1);
}
