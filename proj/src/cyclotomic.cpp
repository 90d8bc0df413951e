#include "tamegamma/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <numbers>
#include <sstream>

#include "tamegamma/errors.hpp"

namespace tame {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

RootOfUnity::RootOfUnity(std::int64_t num, std::int64_t den) {
  if (den <= 0) throw std::invalid_argument("root of unity needs positive order");
  num = mod_floor(num, den);
  std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
  __int128 n = static_cast<__int128>(num_) * k;
  n %= den_;
  return {static_cast<std::int64_t>(n), den_};
}

RootOfUnity operator*(const RootOfUnity& a, const RootOfUnity& b) {
  std::int64_t d = std::lcm(a.den_, b.den_);
  __int128 n = static_cast<__int128>(a.num_) * (d / a.den_) +
               static_cast<__int128>(b.num_) * (d / b.den_);
  return {static_cast<std::int64_t>(n % d), d};
}

std::string RootOfUnity::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::int64_t euler_phi(std::int64_t m) {
  std::int64_t r = m;
  for (std::int64_t q = 2; q * q <= m; ++q) {
    if (m % q == 0) {
      while (m % q == 0) m /= q;
      r -= r / q;
    }
  }
  if (m > 1) r -= r / m;
  return r;
}

namespace {

using PolyCache = std::map<std::int64_t, std::vector<std::int64_t>>;

const std::vector<std::int64_t>& cyclotomic_unlocked(PolyCache& cache, std::int64_t m) {
  if (auto it = cache.find(m); it != cache.end()) return it->second;
  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, by exact long division.
  std::vector<std::int64_t> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (std::int64_t d = 1; d < m; ++d) {
    if (m % d) continue;
    const auto& den = cyclotomic_unlocked(cache, d);
    std::size_t dn = den.size() - 1;
    std::vector<std::int64_t> quot(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
      std::int64_t c = num[i];  // den is monic
      quot[i - dn] = c;
      if (c == 0) continue;
      for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return cache.emplace(m, std::move(num)).first->second;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t m) {
  static std::mutex mu;
  static PolyCache cache;
  std::lock_guard lock(mu);
  return cyclotomic_unlocked(cache, m);
}

CycValue::CycValue(const mpq_class& r) {
  mpq_class c = r;
  c.canonicalize();
  if (c != 0) c_.push_back(std::move(c));
}

CycValue CycValue::reduce(std::int64_t m, std::vector<mpq_class> dense) {
  // dense is indexed by exponent in [0, m); fold out multiples of Phi_m.
  const auto& phi = cyclotomic_polynomial(m);
  std::size_t deg = phi.size() - 1;
  std::vector<std::pair<std::size_t, std::int64_t>> nz;
  for (std::size_t j = 0; j < deg; ++j)
    if (phi[j] != 0) nz.emplace_back(j, phi[j]);
  for (std::size_t i = dense.size(); i-- > deg;) {
    if (sgn(dense[i]) == 0) continue;
    const mpq_class c = dense[i];
    for (auto [j, pj] : nz) dense[i - deg + j] -= c * pj;
    dense[i] = 0;
  }
  if (dense.size() > deg) dense.resize(deg);
  while (!dense.empty() && sgn(dense.back()) == 0) dense.pop_back();
  return CycValue(m, std::move(dense));
}

CycValue CycValue::from_terms(std::int64_t m,
                              const std::vector<std::pair<std::int64_t, mpq_class>>& terms) {
  if (m <= 0) throw std::invalid_argument("cyclotomic modulus must be positive");
  std::vector<mpq_class> dense(m);
  for (const auto& [k, c] : terms) {
    mpq_class v = c;
    v.canonicalize();  // gmp arithmetic assumes canonical operands
    dense[mod_floor(k, m)] += v;
  }
  return reduce(m, std::move(dense));
}

CycValue CycValue::zeta(std::int64_t m, std::int64_t k) { return from_terms(m, {{k, 1}}); }

CycValue CycValue::root(const RootOfUnity& z) { return zeta(z.den(), z.num()); }

CycValue CycValue::embed(std::int64_t m2) const {
  if (m2 % m_ != 0) throw std::invalid_argument("embedding needs a multiple of the modulus");
  if (m2 == m_) return *this;
  std::int64_t step = m2 / m_;
  std::vector<mpq_class> dense(m2);
  for (std::size_t i = 0; i < c_.size(); ++i) dense[(i * step) % m2] = c_[i];
  return reduce(m2, std::move(dense));
}

CycValue CycValue::conj() const {
  std::vector<mpq_class> dense(m_);
  for (std::size_t i = 0; i < c_.size(); ++i) dense[mod_floor(-static_cast<std::int64_t>(i), m_)] += c_[i];
  return reduce(m_, std::move(dense));
}

CycValue operator+(const CycValue& a, const CycValue& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::int64_t m = std::lcm(a.m_, b.m_);
  CycValue x = a.embed(m), y = b.embed(m);
  std::vector<mpq_class> c(std::max(x.c_.size(), y.c_.size()));
  for (std::size_t i = 0; i < x.c_.size(); ++i) c[i] += x.c_[i];
  for (std::size_t i = 0; i < y.c_.size(); ++i) c[i] += y.c_[i];
  while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  return CycValue(m, std::move(c));
}

CycValue CycValue::operator-() const {
  CycValue r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

CycValue operator-(const CycValue& a, const CycValue& b) { return a + (-b); }

CycValue operator*(const CycValue& a, const CycValue& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::int64_t m = std::lcm(a.m_, b.m_);
  CycValue x = a.embed(m), y = b.embed(m);
  std::vector<mpq_class> dense(m);
  for (std::size_t i = 0; i < x.c_.size(); ++i) {
    if (sgn(x.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < y.c_.size(); ++j) {
      if (sgn(y.c_[j]) == 0) continue;
      dense[(i + j) % m] += x.c_[i] * y.c_[j];
    }
  }
  return CycValue::reduce(m, std::move(dense));
}

bool operator==(const CycValue& a, const CycValue& b) {
  if (a.m_ == b.m_) return a.c_ == b.c_;
  std::int64_t m = std::lcm(a.m_, b.m_);
  return a.embed(m).c_ == b.embed(m).c_;
}

std::pair<double, double> CycValue::approx() const {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    double ang = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m_);
    re += c_[i].get_d() * std::cos(ang);
    im += c_[i].get_d() * std::sin(ang);
  }
  return {re, im};
}

std::string CycValue::to_string() const {
  std::ostringstream os;
  os << m_ << ":[";
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
  os << "]";
  return os.str();
}

namespace {

int legendre(std::int64_t a, std::int64_t p) {
  a = mod_floor(a, p);
  if (a == 0) return 0;
  std::int64_t r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

CycValue sqrt_prime(std::int64_t p) {
  if (p == 2) {
    // zeta_8 + zeta_8^{-1}
    return CycValue::from_terms(8, {{1, 1}, {7, 1}});
  }
  std::vector<std::pair<std::int64_t, mpq_class>> terms;
  for (std::int64_t t = 1; t < p; ++t) terms.emplace_back(t, legendre(t, p));
  CycValue g = CycValue::from_terms(p, terms);
  if (p % 4 == 1) return g;
  return g * CycValue::zeta(4, 3);  // g = i sqrt(p)
}

}  // namespace tame
