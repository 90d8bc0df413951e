#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tamegamma/cyclotomic.hpp"

namespace tame {

class Ambient;

// Element of the ambient field T, stored as pi^shift * sum_{i<F, j<e} a[j*F+i] zeta^i pi^j
// with coefficients in Z/p^k.  It is known modulo pi^prec (prec counted in T-units, so
// val(pi) = 1).  A value that is zero to its precision reports valuation == prec.
class Elem {
 public:
  Elem() = default;

  const Ambient& ambient() const { return *amb_; }
  bool valid() const { return amb_ != nullptr; }

  // Valuation in T-units; returns prec() when the element is zero to its precision.
  std::int64_t val() const;
  bool is_zero() const { return val() >= prec_; }
  std::int64_t prec() const { return prec_; }
  std::int64_t shift() const { return shift_; }
  const std::vector<std::int64_t>& coeffs() const { return a_; }

  friend Elem operator+(const Elem& x, const Elem& y);
  friend Elem operator-(const Elem& x, const Elem& y);
  friend Elem operator*(const Elem& x, const Elem& y);
  Elem operator-() const;
  Elem& operator+=(const Elem& y) { return *this = *this + y; }
  Elem& operator*=(const Elem& y) { return *this = *this * y; }

  Elem inverse() const;
  // Multiplication and exact division by a rational integer, and by pi_T^n.
  Elem times_int(std::int64_t n) const;
  Elem div_int(std::int64_t n) const;
  Elem times_pi(std::int64_t n) const;
  Elem pow(std::int64_t n) const;
  // Exact element made of the expansion terms with exponents below v (needs v <= prec).
  Elem truncated_below(std::int64_t v) const;
  // Same value with precision capped at v.
  Elem with_prec(std::int64_t v) const;
  // Normalized so that shift == val (no-op on zero).
  Elem normalized() const;

  // Congruence modulo pi^v, with both sides known that far.
  bool congruent(const Elem& y, std::int64_t v) const;

  std::string to_string() const;

 private:
  friend class Ambient;
  const Ambient* amb_ = nullptr;
  std::int64_t shift_ = 0;
  std::int64_t prec_ = 0;
  std::vector<std::int64_t> a_;
};

// Element id of Gal(T/Q_p): (a, b) acts as zeta -> zeta^{p^a}, pi -> xi^b pi,
// xi = zeta^{(q-1)/e} a primitive e-th root of unity; id = a*e + b.
using GalId = int;

// T = K_F(pi), pi^e = p, with e | p^F - 1 so that T/Q_p is Galois.
class Ambient {
 public:
  // digits: p-adic working precision (clamped to what fits the word size).
  Ambient(int p, int unram_degree, int ram_index, int digits = 0);
  Ambient(const Ambient&) = delete;
  Ambient& operator=(const Ambient&) = delete;

  int p() const { return p_; }
  int unram_degree() const { return F_; }
  int ram_index() const { return e_; }
  int degree() const { return F_ * e_; }
  std::int64_t residue_size() const { return q_; }  // q_T = p^F
  int digits() const { return k_; }
  std::int64_t modulus() const { return pk_; }
  // Absolute precision of exact constants, in T-units.
  std::int64_t full_prec() const { return static_cast<std::int64_t>(k_) * e_; }

  // Constants.
  Elem zero(std::int64_t prec) const;
  Elem from_int(std::int64_t n) const;
  Elem from_rational(const mpq_class& r) const;
  Elem zeta_pow(std::int64_t n) const;   // Teichmueller zeta_T^n
  Elem pi_pow(std::int64_t n) const;     // pi_T^n
  Elem monomial(std::int64_t n_zeta, std::int64_t n_pi, std::int64_t coeff = 1) const;

  // Galois group.
  int group_order() const { return F_ * e_; }
  GalId compose(GalId g, GalId h) const { return mul_table_[g * group_order() + h]; }
  GalId inverse(GalId g) const { return inv_table_[g]; }
  GalId make_gal(int a, std::int64_t b) const;
  int gal_frob(GalId g) const { return g / e_; }
  int gal_inertia(GalId g) const { return g % e_; }
  Elem apply(GalId g, const Elem& x) const;

  // Residue of a unit as an index into F_q^x: x == zeta^{n} mod pi.
  std::int64_t residue_log(const Elem& unit) const;

  // psi_T-free pieces used by fields: the Q_p-valued trace tr_{T/Q_p}(x) and
  // the level-one additive character psi_F evaluated on it.
  RootOfUnity psi_of_trace(const Elem& x, std::int64_t divide_by = 1) const;
  // The value of x as a p-adic number (x must lie in Q_p): returns unit and p-valuation.
  std::pair<mpq_class, std::int64_t> to_rational_approx(const Elem& x) const;
  bool lies_in_base(const Elem& x) const;

  // Internal helpers shared with Elem.
  std::int64_t mulmod(std::int64_t a, std::int64_t b) const;
  std::int64_t inv_unit_mod(std::int64_t a) const;
  const std::vector<std::int64_t>& zeta_min_poly() const { return G_; }

 private:
  friend class Elem;
  friend Elem operator+(const Elem& x, const Elem& y);
  friend Elem operator*(const Elem& x, const Elem& y);
  using ZPoly = std::vector<std::int64_t>;  // length F, in the zeta basis

  ZPoly zpoly_mul(const ZPoly& a, const ZPoly& b) const;
  ZPoly zpoly_reduce(std::vector<__int128>& raw) const;  // raw length 2F-1 unreduced sums
  ZPoly zeta_power_poly(std::int64_t n) const;
  Elem make(std::int64_t shift, std::int64_t prec, std::vector<std::int64_t> a) const;
  void setup_teichmueller();
  void setup_group();

  int p_, F_, e_, k_;
  std::int64_t pk_, q_;
  ZPoly G_;                                   // minimal polynomial of zeta (monic, low first)
  std::vector<std::vector<ZPoly>> frob_;      // frob_[a][i] = zeta^{i p^a}
  std::vector<std::int64_t> trace_zeta_;      // tr_{K_F/Q_p}(zeta^i)
  std::vector<std::int32_t> residue_log_;     // index by base-p encoding of residue
  std::vector<ZPoly> zeta_table_;             // zeta^n for n < q-1 when small enough
  std::vector<GalId> mul_table_, inv_table_;
};

}  // namespace tame
