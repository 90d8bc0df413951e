#include <gtest/gtest.h>

#include "tamegamma/errors.hpp"
#include "tamegamma/field.hpp"
#include "tamegamma/scenarios.hpp"

using namespace tame;

TEST(TameFieldSpec, TwistReduced) {
  auto s = make_field(5, 1, 2, 3);
  EXPECT_EQ(s.twist, 1);
  EXPECT_EQ(s.degree(), 2);
  EXPECT_THROW(make_field(5, 1, 5, 0), ConfigError);
}

TEST(Ambient, HoldsGaloisClosure) {
  auto amb = ambient_for(5, {make_field(5, 1, 3, 0)});
  EXPECT_EQ(amb->ram_index() % 3, 0);
  EXPECT_EQ((amb->residue_size() - 1) % 3, 0);  // cube roots of unity present
  auto e = embed(amb, make_field(5, 1, 3, 0));
  EXPECT_EQ(e->degree(), 3);
  EXPECT_EQ(e->e(), 3);
}

TEST(Field, SubfieldLattice) {
  auto amb = ambient_for(5, {make_field(5, 1, 6, 0)});
  auto e = embed(amb, make_field(5, 1, 6, 0));
  std::vector<int> degrees;
  for (const auto& s : subfields(*e)) degrees.push_back(s->degree());
  EXPECT_EQ(degrees, (std::vector<int>{1, 2, 3, 6}));
}

TEST(Field, NormOfUniformizer) {
  auto amb = ambient_for(7, {make_field(7, 1, 3, 0)});
  auto e = embed(amb, make_field(7, 1, 3, 0));
  Elem n = norm(e->uniformizer(), *e, *base_field(amb));
  EXPECT_EQ(n.val(), amb->ram_index());
  EXPECT_TRUE(amb->lies_in_base(n));
}

TEST(Field, TensorDecompositionDegrees) {
  auto amb = ambient_for(5, {make_field(5, 1, 3, 0), make_field(5, 2, 1, 0)});
  auto e = embed(amb, make_field(5, 1, 3, 0));
  auto l = embed(amb, make_field(5, 2, 1, 0));
  int sum = 0;
  for (const auto& t : tensor_decompose(*e, *l)) sum += t.field->degree();
  EXPECT_EQ(sum, 6);
  sum = 0;
  for (const auto& t : tensor_decompose(*e, *e)) sum += t.field->degree();
  EXPECT_EQ(sum, 9);
}

TEST(Field, TeichmullerDecomposition) {
  auto amb = ambient_for(5, {make_field(5, 1, 3, 0)});
  auto e = embed(amb, make_field(5, 1, 3, 0));
  Elem x = e->uniformizer().pow(-2).times_int(3) + amb->from_int(7) + e->zeta_gen();
  auto parts = teichmuller_decompose(x, *e);
  EXPECT_EQ(parts.a, -2);
  Elem rec = e->uniformizer().pow(parts.a) * e->zeta_gen().pow(parts.b) * parts.u;
  EXPECT_TRUE((rec - x).is_zero());
}

TEST(Field, TruncatedLogOutsideRegime) {
  auto amb = ambient_for(5, {make_field(5, 1, 1, 0)});
  auto f = base_field(amb);
  EXPECT_THROW(trunc_log(amb->from_int(6), *f, 4), ConfigError);
}

TEST(Field, CharPolyOfUniformizer) {
  auto amb = ambient_for(7, {make_field(7, 1, 2, 1)});
  auto e = embed(amb, make_field(7, 1, 2, 1));
  auto cp = char_poly(e->uniformizer(), *e);
  ASSERT_EQ(cp.size(), 3u);
  EXPECT_TRUE(cp[1].is_zero());
  EXPECT_TRUE(poly_eval(cp, e->uniformizer()).is_zero());
}

TEST(Suites, Fields) {
  auto rep = field_suite(3);
  for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << c.name << ": " << c.witness;
}
