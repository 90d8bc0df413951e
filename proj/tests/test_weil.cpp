#include <gtest/gtest.h>

#include "tamegamma/errors.hpp"
#include "tamegamma/weil.hpp"

using namespace tame;

namespace {

struct Quartic : ::testing::Test {
  AmbientPtr amb = ambient_for(5, {make_field(5, 1, 4, 0), make_field(5, 1, 2, 0)});
  FieldPtr e = embed(amb, make_field(5, 1, 4, 0));
  FieldPtr f = base_field(amb);
};

}  // namespace

TEST_F(Quartic, DimensionAndDual) {
  MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse());
  WeilRep r;
  r.add(chi).add(MultChar::trivial(f), 3);
  EXPECT_EQ(rep_dim(r), 7);
  EXPECT_EQ(rep_dim(rep_dual(r)), 7);
  EXPECT_TRUE(rep_equivalent(rep_dual(rep_dual(r)), r));
}

TEST_F(Quartic, TensorDimension) {
  MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse());
  FieldPtr k = embed(amb, make_field(5, 1, 2, 0));
  MultChar eta(k, RootOfUnity(1, 2), 0, k->uniformizer_inverse());
  EXPECT_EQ(rep_dim(tensor_pairs(chi, eta)), 8);
}

TEST_F(Quartic, DeterminantOfSum) {
  MultChar a = unramified_character(f, RootOfUnity(1, 4));
  MultChar b = unramified_character(f, RootOfUnity(1, 2));
  WeilRep r;
  r.add(a).add(b);
  EXPECT_EQ(rep_det(r, f), unramified_character(f, RootOfUnity(3, 4)));
}

TEST_F(Quartic, StdCompositionValidation) {
  WeilRep r;
  r.add(MultChar::trivial(f));
  EXPECT_THROW(std_compose(GroupTag::Sp, 2, r), ConfigError);  // wrong dimension
  WeilRep odd;
  for (int i = 0; i < 5; ++i) odd.add(MultChar::trivial(f));
  EXPECT_NO_THROW(std_compose(GroupTag::Sp, 2, odd));
  WeilRep bad;
  for (int i = 0; i < 4; ++i) bad.add(MultChar::trivial(f));
  bad.add(unramified_character(f, RootOfUnity(1, 3)));
  EXPECT_THROW(std_compose(GroupTag::Sp, 2, bad), ConfigError);  // not self-dual
}

TEST_F(Quartic, StandardDimensions) {
  EXPECT_EQ(std_dimension(GroupTag::Sp, 4), 9);
  EXPECT_EQ(std_dimension(GroupTag::SO_odd, 3), 6);
  EXPECT_EQ(std_dimension(GroupTag::SO_even, 4), 8);
  EXPECT_EQ(std_dimension(GroupTag::G2, 0), 7);
}

TEST_F(Quartic, RestrictionToGaloisField) {
  MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse());
  WeilRep r;
  r.add(chi);
  FieldPtr top = Field::fixed_field(amb, {0});
  EXPECT_EQ(restrict_rep(r, top).size(), 4u);
}

TEST_F(Quartic, RefineSplitsInducedFromNorm) {
  FieldPtr k = embed(amb, make_field(5, 1, 2, 0));
  MultChar eta = unramified_character(f, RootOfUnity(1, 4));
  WeilRep r;
  r.add(inflate(eta, k));
  WeilRep refined = refine(r);
  EXPECT_EQ(refined.summands().size(), 2u);
  EXPECT_EQ(rep_dim(refined), 2);
}
