#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tamegamma/field.hpp"

namespace tame {

// Finite-order character of K^x in the linear model:
//   chi(pi_K^a zeta_K^b u) = unif^a * exp(2 pi i tame*b/(q_K-1)) * psi_K(wild * Log u).
// `wild` is kept as its polar part (an exact element of K of negative valuation, or 0).
class MultChar {
 public:
  MultChar(FieldPtr field, RootOfUnity unif, std::int64_t tame, Elem wild);
  static MultChar trivial(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const RootOfUnity& unif() const { return unif_; }
  std::int64_t tame() const { return tame_; }
  const Elem& wild() const { return wild_; }

  // Depth as a rational number and in units of val(pi_K).
  mpq_class depth() const;
  std::int64_t depth_units() const;
  bool is_unramified() const { return tame_ == 0 && wild_.is_zero(); }
  bool is_trivial() const { return is_unramified() && unif_.is_one(); }
  bool is_tamely_ramified() const { return wild_.is_zero(); }

  RootOfUnity operator()(const Elem& x) const;
  CycValue eval(const Elem& x) const { return CycValue::root((*this)(x)); }

  // Values on the generators of K^x.
  RootOfUnity on_zeta() const { return {tame_, field_->residue_size() - 1}; }

  friend MultChar operator*(const MultChar& a, const MultChar& b);
  MultChar dual() const;
  MultChar pow(std::int64_t n) const;
  friend bool operator==(const MultChar& a, const MultChar& b);

  std::string to_string() const;

 private:
  FieldPtr field_;
  RootOfUnity unif_;
  std::int64_t tame_;
  Elem wild_;
};

// Polar part of x (x modulo the valuation ring).
Elem polar_part(const Elem& x);

MultChar multiply(const MultChar& a, const MultChar& b);
MultChar dual(const MultChar& chi);
MultChar inflate(const MultChar& chi, const FieldPtr& big);          // chi o N_{big/K}
MultChar restrict_to(const MultChar& chi, const FieldPtr& small);    // chi|_{small^x}
MultChar conj_by(GalId g, const MultChar& chi);                      // x -> chi(g^{-1} x) on g(K)
MultChar twist_by_base(const MultChar& chi, const MultChar& eta_base);

// Orthogonal projection tr_{K/L}/[K:L] onto a subfield.
Elem project(const Elem& x, const Field& k, const Field& l);

// Some eta on L with chi = eta o N_{K/L}, if any.
std::optional<MultChar> norm_descent(const MultChar& chi, const FieldPtr& l);
bool factors_through_norm(const MultChar& chi, const FieldPtr& l);
// Does chi restricted to U_K^{0+} come through the norm from L?
bool wild_factors_through_norm(const MultChar& chi, const Field& l);
bool is_admissible(const MultChar& chi);

bool is_quasi_minimal(const Elem& beta, const Field& k);

enum class Parity { orthogonal, symplectic };
std::string to_string(Parity p);

struct SelfDuality {
  FieldPtr fixed;  // L with [K:L] = 2
  GalId sigma;     // generator of Gal(K/L)
  Parity parity;
};
std::optional<SelfDuality> is_self_dual(const MultChar& chi);

// The quadratic character of L^x attached to a quadratic extension K/L.
MultChar quadratic_class_character(const Field& k, const FieldPtr& l);
// kappa_{K/L}, the determinant of the induced trivial representation, as a character of L^x.
MultChar kappa(const FieldPtr& k, const FieldPtr& l);
// omega_chi = kappa_{K/F} * chi|_F.
MultChar det_induced(const MultChar& chi);

bool pair_equivalent(const MultChar& a, const MultChar& b);
std::optional<GalId> pair_conjugator(const MultChar& a, const MultChar& b);

struct XiFamilyOptions {
  Parity parity = Parity::orthogonal;
  std::size_t max_count = 64;
  // Which square root is taken on the uniformizer (0 or 1); only ramified K/L.
  int unif_branch = 0;
  // For unramified K/L: which multiple of q_L - 1 is used as tame exponent.
  std::int64_t tame_index = 0;
};
// Characters represented by beta, anti-invariant under sigma, with parity fixed on L.
std::vector<MultChar> xi_beta_family(const FieldPtr& k, GalId sigma, const Elem& beta,
                                     const XiFamilyOptions& opts);
// Size of the anti-invariant family (as a power of p), without enumerating it.
std::int64_t xi_beta_family_log_size(const FieldPtr& k, GalId sigma, const Elem& beta);

int jacobi_symbol(std::int64_t a, std::int64_t n);

}  // namespace tame
