#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tamegamma/ambient.hpp"
#include "tamegamma/local_factor.hpp"

namespace tame {

// Hasse data of a tame extension E/Q_p: E = K_f(pi_E), pi_E^e = zeta^twist * p,
// zeta the Teichmueller generator of mu_{p^f - 1}.
struct TameFieldSpec {
  int p = 3;
  int f = 1;
  int e = 1;
  long twist = 0;
  int degree() const { return f * e; }
  std::int64_t residue_size() const;
  friend auto operator<=>(const TameFieldSpec&, const TameFieldSpec&) = default;
  std::string to_string() const;
};

// Validates tameness and reduces the twist modulo gcd(e, p^f - 1).
TameFieldSpec make_field(int p, int f, int e, long twist = 0);

using AmbientPtr = std::shared_ptr<const Ambient>;

// Smallest ambient field (in this construction) containing a copy of every
// given field together with its Galois closure.  `extra_f`/`extra_e` force
// additional unramified/ramified room.
AmbientPtr ambient_for(int p, const std::vector<TameFieldSpec>& fields, int digits = 0,
                       int extra_f = 1, int extra_e = 1);

class Field;
using FieldPtr = std::shared_ptr<const Field>;

// A subfield K of the ambient field T, identified with Gal(T/K) (a sorted list of ids).
// Its uniformizer is canonical: zeta_T^j pi_T^{e_T/e_K} with the smallest twist class.
class Field {
 public:
  const Ambient& ambient() const { return *amb_; }
  const AmbientPtr& ambient_ptr() const { return amb_; }
  const std::vector<GalId>& subgroup() const { return group_; }

  int e() const { return e_; }
  int f() const { return f_; }
  int degree() const { return e_ * f_; }
  int p() const { return amb_->p(); }
  std::int64_t residue_size() const { return q_; }
  long twist() const { return twist_; }
  // zeta_K = zeta_T^{zeta_step()}
  std::int64_t zeta_step() const { return (amb_->residue_size() - 1) / (q_ - 1); }
  // pi_K = zeta_T^{uniformizer_zeta_exp()} * pi_T^{e_T/e_K}
  std::int64_t uniformizer_zeta_exp() const { return j_; }
  int pi_step() const { return amb_->ram_index() / e_; }

  const Elem& uniformizer() const { return unif_; }
  const Elem& uniformizer_inverse() const { return unif_inv_; }
  Elem zeta_gen() const { return amb_->zeta_pow(zeta_step()); }

  TameFieldSpec spec() const { return {p(), f_, e_, twist_}; }
  FieldIsoClass iso_class() const;

  bool contains(const Elem& x) const;
  bool fixes(GalId g) const;

  // Level-one additive character psi_K = psi_F o tr_{K/F} on elements of K.
  RootOfUnity psi(const Elem& x) const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.amb_.get() == b.amb_.get() && a.group_ == b.group_;
  }
  std::string to_string() const;

  static FieldPtr fixed_field(const AmbientPtr& amb, std::vector<GalId> group);

 private:
  Field() = default;
  AmbientPtr amb_;
  std::vector<GalId> group_;
  int e_ = 1, f_ = 1;
  std::int64_t q_ = 0;
  long twist_ = 0;
  std::int64_t j_ = 0;
  Elem unif_, unif_inv_;
  std::vector<GalId> generators_;
};

// Embedding of a spec into the ambient field (one of its conjugate copies).
FieldPtr embed(const AmbientPtr& amb, const TameFieldSpec& spec);
FieldPtr base_field(const AmbientPtr& amb);

// Group helpers.
std::vector<GalId> subgroup_closure(const Ambient& amb, std::vector<GalId> gens);
std::vector<GalId> conjugate_subgroup(const Ambient& amb, GalId g, const std::vector<GalId>& h);
bool is_subfield(const Field& small, const Field& big);
// Left coset representatives g of big/small inside the group `big` (g ranges over big / small).
std::vector<GalId> coset_reps(const Ambient& amb, const std::vector<GalId>& big,
                              const std::vector<GalId>& small);

// Lattice operations.
std::vector<FieldPtr> subfields(const Field& k);  // all Q_p <= L <= K, sorted by degree
FieldPtr compositum(const Field& a, const Field& b);
FieldPtr intersection(const Field& a, const Field& b);
FieldPtr conjugate_field(GalId g, const Field& k);

// Norm and trace from K down to a subfield L.
Elem norm(const Elem& x, const Field& k, const Field& l);
Elem trace(const Elem& x, const Field& k, const Field& l);

// F-embeddings of K into T, as Galois elements (one per coset of Gal(T/K)).
std::vector<GalId> embeddings(const Field& k);
// Characteristic polynomial over Q_p of x in K, coefficients low degree first (monic).
std::vector<Elem> char_poly(const Elem& x, const Field& k);
std::vector<Elem> conjugates(const Elem& x, const Field& k);
Elem poly_eval(const std::vector<Elem>& coeffs, const Elem& x);

// One factor K_g = g(E) L of E (x)_F L.
struct TensorFactor {
  GalId g;        // E embeds into K_g through x -> g(x)
  FieldPtr field; // K_g
};
std::vector<TensorFactor> tensor_decompose(const Field& e, const Field& l);

// x = pi_K^a * zeta_K^b * u with u a principal unit.
struct TeichmullerParts {
  std::int64_t a;
  std::int64_t b;  // modulo q_K - 1
  Elem u;
};
TeichmullerParts teichmuller_decompose(const Elem& x, const Field& k);

// Convergent p-adic logarithm of a principal unit, known modulo pi_T^upto.
Elem log_principal(const Elem& u, std::int64_t upto);
// Truncated log/exp on U^{0+}/U^{d+} <-> P/P^{d+} of K (d in K-units: depth d_units/e_K).
// Requires the strongly tame regime p > e*d + e.
Elem trunc_log(const Elem& u, const Field& k, std::int64_t depth_units);
Elem trunc_exp(const Elem& x, const Field& k, std::int64_t depth_units);

}  // namespace tame
