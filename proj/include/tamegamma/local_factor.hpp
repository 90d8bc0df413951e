#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "tamegamma/cyclotomic.hpp"

namespace tame {

// 1 - a * p^{half_p/2} * X^{x_exp}, where X stands for q^{-s} of the base field Q_p.
struct LinearFactor {
  RootOfUnity a;
  int half_p = 0;
  int x_exp = 1;
  friend auto operator<=>(const LinearFactor&, const LinearFactor&) = default;
  std::string to_string() const;
};

// Exact meromorphic function of s of the shape
//   root * rat * prod(atoms) * p^{half_p/2} * X^{x_pow} * prod(num) / prod(den)
// with X = p^{-s}.  Atoms are irrational cyclotomic numbers (Gauss sums)
// kept unexpanded with signed multiplicities so identical ones cancel.
class LocalFactor {
 public:
  LocalFactor() = default;
  explicit LocalFactor(int p) : p_(p) {}

  static LocalFactor scalar(int p, const CycValue& v);
  static LocalFactor root(int p, const RootOfUnity& z);

  int prime() const { return p_; }
  const RootOfUnity& root_part() const { return root_; }
  const mpq_class& rational_part() const { return rat_; }
  int half_p() const { return half_p_; }
  int x_pow() const { return x_pow_; }

  LocalFactor& times_root(const RootOfUnity& z);
  LocalFactor& times_rational(const mpq_class& r);
  LocalFactor& times_atom(const CycValue& v, int mult = 1);
  LocalFactor& times_sqrt_p(int half) { half_p_ += half; return *this; }
  LocalFactor& times_x(int n) { x_pow_ += n; return *this; }
  LocalFactor& times_linear(const LinearFactor& f, int mult = 1);

  LocalFactor inverse() const;
  // The same function evaluated at s + k, k = twice_k / 2 (so X becomes X * p^{-k}).
  LocalFactor shifted_s(int twice_k) const;
  friend LocalFactor operator*(const LocalFactor& a, const LocalFactor& b);
  LocalFactor& operator*=(const LocalFactor& b) { return *this = *this * b; }

  // Value at s = 0 as an exact cyclotomic number (only meaningful when no
  // linear factor vanishes there).
  CycValue value_at_zero() const;
  bool is_one() const;

  std::string to_string() const;

 private:
  friend bool factor_eq(const LocalFactor& a, const LocalFactor& b);

  int p_ = 0;
  RootOfUnity root_;
  mpq_class rat_ = 1;
  int half_p_ = 0;
  int x_pow_ = 0;
  std::vector<std::pair<CycValue, int>> atoms_;
  std::map<LinearFactor, int> linear_;  // positive: numerator, negative: denominator
};

LocalFactor factor_mul(const LocalFactor& a, const LocalFactor& b);
// Exact equality as functions of s.
bool factor_eq(const LocalFactor& a, const LocalFactor& b);

// Iso class of a tame extension K/F by its Hasse data.
struct FieldIsoClass {
  int f = 1;
  int e = 1;
  long twist = 0;
  friend auto operator<=>(const FieldIsoClass&, const FieldIsoClass&) = default;
};

// A symbolic Langlands constant lambda_{K/F}(psi_F) with a multiplicity.
struct LambdaSymbol {
  FieldIsoClass field_iso_class;
  int multiplicity = 1;
};

// Multiset of lambda constants keyed by iso class.
class LambdaMultiset {
 public:
  void add(const FieldIsoClass& k, int mult = 1);
  void add(const LambdaMultiset& other);
  std::vector<LambdaSymbol> symbols() const;
  friend bool operator==(const LambdaMultiset&, const LambdaMultiset&) = default;
  std::string to_string() const;

 private:
  std::map<FieldIsoClass, int> counts_;
};

}  // namespace tame
