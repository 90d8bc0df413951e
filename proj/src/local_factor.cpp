#include "tamegamma/local_factor.hpp"

#include <sstream>
#include <stdexcept>

namespace tame {

namespace {

using Poly = std::map<int, CycValue>;

// p^{h/2} as an exact cyclotomic number.
CycValue sqrt_p_power(int p, int h) {
  mpz_class pz = p;
  mpz_class pw;
  int k = (h >= 0 ? h : -h) / 2;
  mpz_pow_ui(pw.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(k));
  mpq_class r = h >= 0 ? mpq_class(pw) : mpq_class(1) / mpq_class(pw);
  CycValue v(r);
  if (h % 2 != 0) {
    if (p == 0) throw std::logic_error("half-integral power of an unset prime");
    CycValue s = sqrt_prime(p);
    v = h > 0 ? v * s : v * s * CycValue(mpq_class(1, p));
  }
  return v;
}

void scale(Poly& poly, const CycValue& c) {
  for (auto& [k, v] : poly) v = v * c;
}

void times_binomial(Poly& poly, const CycValue& c, int n) {
  Poly out = poly;
  for (const auto& [k, v] : poly) {
    CycValue t = -(v * c);
    auto [it, fresh] = out.emplace(k + n, t);
    if (!fresh) it->second = it->second + t;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  poly = std::move(out);
}

Poly shifted(const Poly& poly, int n) {
  Poly out;
  for (const auto& [k, v] : poly) out.emplace(k + n, v);
  return out;
}

}  // namespace

std::string LinearFactor::to_string() const {
  std::ostringstream os;
  os << "(1-e(" << a.to_string() << ")p^(" << half_p << "/2)X^" << x_exp << ")";
  return os.str();
}

LocalFactor LocalFactor::scalar(int p, const CycValue& v) {
  LocalFactor f(p);
  f.times_atom(v);
  return f;
}

LocalFactor LocalFactor::root(int p, const RootOfUnity& z) {
  LocalFactor f(p);
  f.root_ = z;
  return f;
}

LocalFactor& LocalFactor::times_root(const RootOfUnity& z) {
  root_ *= z;
  return *this;
}

LocalFactor& LocalFactor::times_rational(const mpq_class& r) {
  if (r == 0) throw std::domain_error("local factor cannot vanish identically");
  rat_ *= r;
  return *this;
}

LocalFactor& LocalFactor::times_atom(const CycValue& v, int mult) {
  if (v.is_zero()) throw std::domain_error("local factor cannot vanish identically");
  if (mult == 0) return *this;
  if (v.is_rational()) {
    mpq_class r = v.rational_part();
    for (int i = 0; i < (mult > 0 ? mult : -mult); ++i) {
      if (mult > 0) rat_ *= r; else rat_ /= r;
    }
    return *this;
  }
  for (auto it = atoms_.begin(); it != atoms_.end(); ++it) {
    if (it->first == v) {
      it->second += mult;
      if (it->second == 0) atoms_.erase(it);
      return *this;
    }
  }
  atoms_.emplace_back(v, mult);
  return *this;
}

LocalFactor& LocalFactor::times_linear(const LinearFactor& f, int mult) {
  int& m = linear_[f];
  m += mult;
  if (m == 0) linear_.erase(f);
  return *this;
}

LocalFactor LocalFactor::inverse() const {
  LocalFactor r(p_);
  r.root_ = root_.inverse();
  r.rat_ = 1 / rat_;
  r.half_p_ = -half_p_;
  r.x_pow_ = -x_pow_;
  for (const auto& [v, m] : atoms_) r.atoms_.emplace_back(v, -m);
  for (const auto& [f, m] : linear_) r.linear_.emplace(f, -m);
  return r;
}

LocalFactor LocalFactor::shifted_s(int twice_k) const {
  LocalFactor r = *this;
  r.half_p_ -= twice_k * x_pow_;
  r.linear_.clear();
  for (const auto& [f, m] : linear_) {
    LinearFactor g = f;
    g.half_p -= twice_k * g.x_exp;
    r.times_linear(g, m);
  }
  return r;
}

LocalFactor operator*(const LocalFactor& a, const LocalFactor& b) {
  if (a.p_ && b.p_ && a.p_ != b.p_) throw std::invalid_argument("local factors over different primes");
  LocalFactor r = a;
  if (!r.p_) r.p_ = b.p_;
  r.root_ *= b.root_;
  r.rat_ *= b.rat_;
  r.half_p_ += b.half_p_;
  r.x_pow_ += b.x_pow_;
  for (const auto& [v, m] : b.atoms_) r.times_atom(v, m);
  for (const auto& [f, m] : b.linear_) r.times_linear(f, m);
  return r;
}

LocalFactor factor_mul(const LocalFactor& a, const LocalFactor& b) { return a * b; }

bool LocalFactor::is_one() const {
  return atoms_.empty() && linear_.empty() && root_.is_one() && rat_ == 1 && half_p_ == 0 &&
         x_pow_ == 0;
}

CycValue LocalFactor::value_at_zero() const {
  CycValue v = CycValue::root(root_) * CycValue(rat_) * sqrt_p_power(p_, half_p_);
  for (const auto& [a, m] : atoms_) {
    if (m < 0) throw std::domain_error("value_at_zero with atoms in the denominator");
    for (int i = 0; i < m; ++i) v = v * a;
  }
  for (const auto& [f, m] : linear_) {
    CycValue one_minus = CycValue(1L) - CycValue::root(f.a) * sqrt_p_power(p_, f.half_p);
    if (m < 0) throw std::domain_error("value_at_zero with linear factors in the denominator");
    for (int i = 0; i < m; ++i) v = v * one_minus;
  }
  return v;
}

bool factor_eq(const LocalFactor& a, const LocalFactor& b) {
  LocalFactor r = a * b.inverse();
  if (r.is_one()) return true;
  // Clear denominators and compare Laurent polynomials in X.
  int p = r.p_;
  Poly lhs{{0, CycValue::root(r.root_) * CycValue(r.rat_)}};
  Poly rhs{{0, CycValue(1L)}};
  if (r.half_p_ >= 0)
    scale(lhs, sqrt_p_power(p, r.half_p_));
  else
    scale(rhs, sqrt_p_power(p, -r.half_p_));
  for (const auto& [v, m] : r.atoms_)
    for (int i = 0; i < (m > 0 ? m : -m); ++i) scale(m > 0 ? lhs : rhs, v);
  for (const auto& [f, m] : r.linear_) {
    CycValue c = CycValue::root(f.a) * sqrt_p_power(p, f.half_p);
    for (int i = 0; i < (m > 0 ? m : -m); ++i) times_binomial(m > 0 ? lhs : rhs, c, f.x_exp);
  }
  lhs = shifted(lhs, r.x_pow_);
  if (lhs.size() != rhs.size()) return false;
  for (auto it = lhs.begin(), jt = rhs.begin(); it != lhs.end(); ++it, ++jt)
    if (it->first != jt->first || !(it->second == jt->second)) return false;
  return true;
}

std::string LocalFactor::to_string() const {
  std::ostringstream os;
  os << "e(" << root_.to_string() << ")*" << rat_.get_str() << "*p^(" << half_p_ << "/2)*X^"
     << x_pow_;
  for (const auto& [v, m] : atoms_) os << "*[" << v.to_string() << "]^" << m;
  for (const auto& [f, m] : linear_) os << "*" << f.to_string() << "^" << m;
  return os.str();
}

void LambdaMultiset::add(const FieldIsoClass& k, int mult) {
  int& m = counts_[k];
  m += mult;
  if (m == 0) counts_.erase(k);
}

void LambdaMultiset::add(const LambdaMultiset& other) {
  for (const auto& [k, m] : other.counts_) add(k, m);
}

std::vector<LambdaSymbol> LambdaMultiset::symbols() const {
  std::vector<LambdaSymbol> out;
  for (const auto& [k, m] : counts_) out.push_back({k, m});
  return out;
}

std::string LambdaMultiset::to_string() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, m] : counts_) {
    os << (first ? "" : ",") << "(" << k.f << "," << k.e << "," << k.twist << ")x" << m;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace tame
