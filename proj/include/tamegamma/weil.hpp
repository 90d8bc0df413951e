#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamegamma/characters.hpp"

namespace tame {

// Ind_{E/F} chi (x) st_a.  A character of F^x is the case E = F.
struct InducedSummand {
  MultChar chi;
  int sl2_dim = 1;

  int dim() const { return chi.field()->degree() * sl2_dim; }
  std::string to_string() const;
};

// A semisimple representation of W_F x SL_2 as a formal multiset of induced summands.
class WeilRep {
 public:
  WeilRep() = default;
  explicit WeilRep(std::vector<InducedSummand> parts) : parts_(std::move(parts)) {}

  const std::vector<InducedSummand>& summands() const { return parts_; }
  WeilRep& add(const MultChar& chi, int sl2_dim = 1);
  WeilRep& add(const WeilRep& other);
  std::string to_string() const;

 private:
  std::vector<InducedSummand> parts_;
};

int rep_dim(const WeilRep& r);
WeilRep rep_dual(const WeilRep& r);
// Determinant as a character of F^x (st_a contributes nothing).
MultChar rep_det(const WeilRep& r, const FieldPtr& base);

// Rewrites summands whose character factors through the norm to a subfield
// over which the inducing field is abelian, so each summand left is either
// irreducible or (if no such rewrite exists) kept as is.
WeilRep refine(const WeilRep& r);
bool rep_equivalent(const WeilRep& a, const WeilRep& b);

// rho_chi (x) rho_eta as the sum over double cosets of Ind_{K_g/F} theta_g (unrefined).
WeilRep tensor_pairs(const MultChar& chi, const MultChar& eta);
WeilRep tensor(const WeilRep& a, const WeilRep& b);

// Characters of L^x in the restriction to W_L, for L Galois containing every inducing field.
std::vector<MultChar> restrict_rep(const WeilRep& r, const FieldPtr& l);
bool same_character_multiset(std::vector<MultChar> a, std::vector<MultChar> b);

enum class GroupTag { Sp, SO_odd, SO_even, GL, G2 };
std::string to_string(GroupTag g);

// A parameter known through its composition with the standard representation.
struct GParameter {
  GroupTag group;
  int n;
  WeilRep std_rep;
  std::string to_string() const;
};

// Dimension of the standard representation of the dual group.
int std_dimension(GroupTag g, int n);
// Validates dimension, self-duality, parity and determinant; throws ConfigError
// naming the failed condition.
GParameter std_compose(GroupTag g, int n, WeilRep r);

// Parity of an irreducible self-dual summand; nullopt if it is not self-dual.
std::optional<Parity> summand_parity(const InducedSummand& s);

// For an orthogonal multiplicity-free representation: can it be conjugated by an
// element of determinant -1 of its own centralizer, i.e. is it equal to its outer twist.
bool is_outer_self_conjugate(const WeilRep& r);

struct Wedge3Weights {
  std::vector<MultChar> plus;
  std::vector<MultChar> minus;
};
// Weights on W_L of the two halves of the third exterior power of a 6-dimensional
// orthogonal parameter given by three characters of quadratic extensions inside L.
Wedge3Weights wedge3_pm(const std::vector<MultChar>& chis, const FieldPtr& l);
// All 20 triple products of the six weights chi_{i,L}^{+-1}.
std::vector<MultChar> wedge3_weights(const std::vector<MultChar>& chis, const FieldPtr& l);

// Third exterior power of a 4-dimensional rho_chi, as rho_chi^vee (x) omega_chi.
WeilRep wedge3_4dim(const MultChar& chi);
// An unramified character eta of F^x of order dividing max_order with
// rho_b = rho_a (x) eta, if one exists.
std::optional<MultChar> unramified_twist_relating(const MultChar& a, const MultChar& b,
                                                  int max_order = 8);
// Second exterior powers of rho_a and rho_b agree because rho_b = rho_a (x) eta with
// rho_a (x) eta^2 = rho_a.
bool wedge2_equal_via_twist(const MultChar& a, const MultChar& b, int max_order = 8);

// Unramified character of F^x sending a uniformizer to z.
MultChar unramified_character(const FieldPtr& f, const RootOfUnity& z);

}  // namespace tame
