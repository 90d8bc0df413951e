#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tamegamma/local_factors.hpp"

namespace tame {

// Tame extensions of Q_p up to isomorphism, of degree at most max_degree.
std::vector<TameFieldSpec> tame_specs_up_to(int p, int max_degree);

struct FamilyBounds {
  int max_dim = 2;
  mpq_class max_depth = 2;  // F-normalized
  int max_order = 24;       // bound on the order of eta on mu_L x <pi_L>
  int unif_roots = 4;       // eta(pi_L) ranges over mu_{unif_roots} (intersected with the order bound)
  int leads_per_depth = 0;  // leading coefficients of the wild part per depth, 0 = all
  std::string to_string() const;
};

// A finite deterministic set of admissible pairs (L, eta), one per Galois orbit,
// with L running over tame iso classes of degree <= max_dim.
struct TestFamily {
  FamilyBounds bounds;
  std::vector<MultChar> members;
  std::size_t count_of_dim(int d) const;
};

TestFamily build_test_family(const AmbientPtr& amb, const FamilyBounds& bounds);

// Ambient field holding the given fields and every family field.
AmbientPtr scenario_ambient(int p, std::vector<TameFieldSpec> fields, int family_dim, int digits = 0);

struct GammaEquivReport {
  int level = 0;
  std::size_t tested = 0;
  std::size_t equal = 0;
  std::size_t not_equal = 0;
  std::size_t indeterminate = 0;
  std::optional<MultChar> witness;  // first twist (in family order) that is not Equal
  Verdict summary = Verdict::Equal;
};

// Compares gamma(s, A (x) tau) with gamma(s, B (x) tau) for every family member of
// dimension <= level.  Summands common to A and B are cancelled first.
GammaEquivReport gamma_equiv_level(const WeilRep& a, const WeilRep& b, int level, const TestFamily& family);
// Single-threaded reference with the same result.
GammaEquivReport gamma_equiv_level_serial(const WeilRep& a, const WeilRep& b, int level,
                                          const TestFamily& family);

// Removes the summands that occur (identically) in both.
std::pair<WeilRep, WeilRep> cancel_common(const WeilRep& a, const WeilRep& b);

// Least r >= 1 with r*m = +-1 mod n (0 if none).
int least_r_unit_multiple(int m, int n);
// Odd exponent m with depth m/(2N) used for self-dual pairs of degree 2N.
int better_exponent(int n);

}  // namespace tame
