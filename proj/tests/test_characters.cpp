#include <gtest/gtest.h>

#include "tamegamma/characters.hpp"
#include "tamegamma/errors.hpp"

using namespace tame;

namespace {

struct CubicChars : ::testing::Test {
  AmbientPtr amb = ambient_for(5, {make_field(5, 1, 3, 0), make_field(5, 1, 2, 0), make_field(5, 2, 1, 0)});
  FieldPtr e = embed(amb, make_field(5, 1, 3, 0));
  FieldPtr f = base_field(amb);
};

}  // namespace

TEST_F(CubicChars, DepthIsCanonical) {
  MultChar chi(e, RootOfUnity::one(), 1, e->uniformizer_inverse().pow(2));
  EXPECT_EQ(chi.depth(), mpq_class(2, 3));
  EXPECT_EQ(chi.depth().get_den(), 3);
  EXPECT_EQ(chi.depth_units(), 2);
}

TEST_F(CubicChars, MultiplicationAndDual) {
  MultChar chi(e, RootOfUnity(1, 3), 1, e->uniformizer_inverse());
  EXPECT_TRUE((chi * chi.dual()).is_trivial());
  EXPECT_EQ(chi.pow(2), chi * chi);
  Elem x = e->uniformizer() * amb->from_int(2) + amb->from_int(1);
  EXPECT_EQ(chi(x) * chi.dual()(x), RootOfUnity::one());
}

TEST_F(CubicChars, Admissibility) {
  MultChar minimal(e, RootOfUnity::one(), 0, e->uniformizer_inverse());
  EXPECT_TRUE(is_admissible(minimal));
  EXPECT_TRUE(is_quasi_minimal(e->uniformizer_inverse(), *e));
  // Depth 3/3: the character factors through the norm on U^{0+}.
  MultChar from_base(e, RootOfUnity::one(), 0, e->uniformizer_inverse().pow(3));
  EXPECT_FALSE(is_admissible(from_base));
}

TEST_F(CubicChars, InflationThroughNorm) {
  MultChar eta(f, RootOfUnity(1, 4), 1, f->uniformizer_inverse());
  MultChar up = inflate(eta, e);
  Elem x = amb->from_int(1) + e->uniformizer();
  EXPECT_EQ(up(x), eta(norm(x, *e, *f)));
  EXPECT_TRUE(factors_through_norm(up, f));
}

TEST_F(CubicChars, QuadraticSelfDuality) {
  FieldPtr k = embed(amb, make_field(5, 1, 2, 0));
  MultChar chi(k, RootOfUnity(1, 2), 0, k->uniformizer_inverse());
  auto sd = is_self_dual(chi);
  ASSERT_TRUE(sd);
  EXPECT_EQ(sd->fixed->degree(), 1);
  MultChar k_char = kappa(k, f);
  EXPECT_EQ(k_char.pow(2), MultChar::trivial(f));
  EXPECT_FALSE(k_char.is_trivial());
}

TEST_F(CubicChars, UnramifiedQuadraticKappaIsUnramified) {
  FieldPtr k = embed(amb, make_field(5, 2, 1, 0));
  MultChar kq = kappa(k, f);
  EXPECT_TRUE(kq.is_unramified());
  EXPECT_EQ(kq.unif(), RootOfUnity(1, 2));
}

TEST(Jacobi, Values) {
  EXPECT_EQ(jacobi_symbol(2, 7), 1);
  EXPECT_EQ(jacobi_symbol(3, 7), -1);
  EXPECT_EQ(jacobi_symbol(-1, 5), 1);
  EXPECT_EQ(jacobi_symbol(-1, 7), -1);
}
