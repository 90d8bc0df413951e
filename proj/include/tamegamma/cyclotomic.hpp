#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace tame {

// exp(2*pi*i * num/den), stored with 0 <= num < den and gcd(num, den) = 1.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  RootOfUnity(std::int64_t num, std::int64_t den);

  static RootOfUnity one() { return {}; }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::int64_t order() const { return den_; }
  bool is_one() const { return num_ == 0; }

  RootOfUnity inverse() const { return {-num_, den_}; }
  RootOfUnity pow(std::int64_t k) const;

  friend RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b);
  RootOfUnity& operator*=(const RootOfUnity& b) { return *this = *this * b; }
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  friend auto operator<=>(const RootOfUnity&, const RootOfUnity&) = default;

  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

// Integer coefficients of the M-th cyclotomic polynomial, lowest degree first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t m);
std::int64_t euler_phi(std::int64_t m);

// Exact element of Q(zeta_M), kept in canonical form: the coefficient
// vector of its residue modulo Phi_M in the power basis 1, z, ..., z^{phi(M)-1}
// (trailing zeros trimmed).
class CycValue {
 public:
  CycValue() = default;  // zero in Q
  explicit CycValue(const mpq_class& r);
  explicit CycValue(long r) : CycValue(mpq_class(r)) {}

  static CycValue zeta(std::int64_t m, std::int64_t k);
  static CycValue root(const RootOfUnity& z);
  // Sum of coeff * zeta_M^exponent; exponents may be any integers.
  static CycValue from_terms(std::int64_t m,
                             const std::vector<std::pair<std::int64_t, mpq_class>>& terms);

  std::int64_t modulus() const { return m_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  mpq_class rational_part() const { return c_.empty() ? mpq_class(0) : c_[0]; }

  // Same number viewed in Q(zeta_{m2}); m2 must be a multiple of modulus().
  CycValue embed(std::int64_t m2) const;
  // Complex conjugate (zeta -> zeta^{-1}).
  CycValue conj() const;

  friend CycValue operator+(const CycValue& a, const CycValue& b);
  friend CycValue operator-(const CycValue& a, const CycValue& b);
  friend CycValue operator*(const CycValue& a, const CycValue& b);
  CycValue operator-() const;
  CycValue& operator+=(const CycValue& b) { return *this = *this + b; }
  CycValue& operator*=(const CycValue& b) { return *this = *this * b; }
  friend bool operator==(const CycValue& a, const CycValue& b);

  // Numerical value, for diagnostics only.
  std::pair<double, double> approx() const;
  // Deterministic text form "M:[c0,c1,...]".
  std::string to_string() const;

 private:
  CycValue(std::int64_t m, std::vector<mpq_class> c) : m_(m), c_(std::move(c)) {}
  static CycValue reduce(std::int64_t m, std::vector<mpq_class> dense);

  std::int64_t m_ = 1;
  std::vector<mpq_class> c_;
};

// Exact square root of the prime p inside Q(zeta_{4p}).
CycValue sqrt_prime(std::int64_t p);

std::int64_t lcm64(std::int64_t a, std::int64_t b);

}  // namespace tame
