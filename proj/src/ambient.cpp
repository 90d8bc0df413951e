#include "tamegamma/ambient.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "tamegamma/errors.hpp"

namespace tame {

namespace {

using u128 = unsigned __int128;

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Arithmetic in (Z/m)[x]/(g) with g monic of degree n (g stored low first, length n+1).
struct QuotientRing {
  std::int64_t m;
  std::vector<std::int64_t> g;
  int n() const { return static_cast<int>(g.size()) - 1; }

  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>(static_cast<u128>(a) * static_cast<u128>(b) % static_cast<u128>(m));
  }

  std::vector<std::int64_t> times(const std::vector<std::int64_t>& a,
                                  const std::vector<std::int64_t>& b) const {
    int d = n();
    std::vector<std::int64_t> raw(2 * d - 1 > 0 ? 2 * d - 1 : 1, 0);
    for (int i = 0; i < d; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < d; ++j) raw[i + j] = (raw[i + j] + mul(a[i], b[j])) % m;
    }
    for (int t = 2 * d - 2; t >= d; --t) {
      std::int64_t c = raw[t];
      if (!c) continue;
      for (int i = 0; i < d; ++i) raw[t - d + i] = mod_floor(raw[t - d + i] - mul(c, g[i]), m);
      raw[t] = 0;
    }
    raw.resize(d);
    return raw;
  }

  std::vector<std::int64_t> one() const {
    std::vector<std::int64_t> r(n(), 0);
    r[0] = 1 % m;
    return r;
  }

  std::vector<std::int64_t> power(std::vector<std::int64_t> b, std::int64_t e) const {
    std::vector<std::int64_t> r = one();
    while (e > 0) {
      if (e & 1) r = times(r, b);
      b = times(b, b);
      e >>= 1;
    }
    return r;
  }

  std::vector<std::int64_t> gen() const {
    std::vector<std::int64_t> r(n(), 0);
    if (n() == 1)
      r[0] = mod_floor(-g[0], m);
    else
      r[1] = 1;
    return r;
  }
};

// A monic degree-F polynomial over F_p whose root generates F_{p^F}^x.
std::vector<std::int64_t> primitive_polynomial(int p, int F) {
  std::int64_t q = ipow(p, F);
  auto factors = prime_factors(q - 1);
  std::vector<std::int64_t> g(F + 1, 0);
  g[F] = 1;
  for (std::int64_t code = 0; code < q; ++code) {
    std::int64_t c = code;
    for (int i = 0; i < F; ++i) {
      g[i] = c % p;
      c /= p;
    }
    if (g[0] == 0) continue;
    QuotientRing ring{p, g};
    auto x = ring.gen();
    if (ring.power(x, q - 1) != ring.one()) continue;
    bool primitive = true;
    for (auto l : factors) {
      if (ring.power(x, (q - 1) / l) == ring.one()) {
        primitive = false;
        break;
      }
    }
    if (primitive) return g;
  }
  throw std::logic_error("no primitive polynomial found");
}

}  // namespace

Ambient::Ambient(int p, int unram_degree, int ram_index, int digits)
    : p_(p), F_(unram_degree), e_(ram_index) {
  if (p < 3 || !is_prime(p)) throw ConfigError("p must be an odd prime");
  if (F_ < 1 || e_ < 1) throw ConfigError("field degrees must be positive");
  if (e_ % p == 0) throw ConfigError("ramification index divisible by p (not tame)");
  double logq = F_ * std::log2(static_cast<double>(p));
  if (logq > 25) throw ConfigError("ambient residue field too large");
  if (F_ % p == 0) throw ConfigError("ambient residue degree divisible by p");
  q_ = ipow(p, F_);
  if ((q_ - 1) % e_ != 0) throw ConfigError("ambient field is not Galois: e does not divide q-1");
  int kmax = 0;
  std::int64_t pk = 1;
  while (pk <= (std::int64_t{1} << 58) / p) {
    pk *= p;
    ++kmax;
  }
  k_ = digits > 0 ? std::min(digits, kmax) : kmax;
  pk_ = ipow(p, k_);
  setup_teichmueller();
  setup_group();
}

std::int64_t Ambient::mulmod(std::int64_t a, std::int64_t b) const {
  return static_cast<std::int64_t>(static_cast<u128>(a) * static_cast<u128>(b) % static_cast<u128>(pk_));
}

std::int64_t Ambient::inv_unit_mod(std::int64_t a) const {
  a = mod_floor(a, pk_);
  if (a % p_ == 0) throw std::domain_error("inverting a non-unit modulo p^k");
  // Newton iteration from the inverse modulo p.
  std::int64_t x = 1;
  for (std::int64_t t = 1; t < p_; ++t)
    if ((a % p_) * t % p_ == 1) x = t;
  for (int i = 0; i < 7; ++i) x = mulmod(x, mod_floor(2 - mulmod(a, x), pk_));
  return x;
}

void Ambient::setup_teichmueller() {
  auto g = primitive_polynomial(p_, F_);
  QuotientRing lift{pk_, g};
  // Teichmueller lift of the root: iterate y -> y^q, gaining a digit per step.
  auto y = lift.gen();
  for (int i = 0; i <= k_; ++i) y = lift.power(y, q_);
  // G(X) = prod_i (X - y^{p^i}), coefficients in the ring, which must be constants.
  std::vector<std::vector<std::int64_t>> poly{lift.one()};
  auto root = y;
  for (int i = 0; i < F_; ++i) {
    std::vector<std::vector<std::int64_t>> next(poly.size() + 1, std::vector<std::int64_t>(F_, 0));
    for (std::size_t d = 0; d < poly.size(); ++d) {
      for (int t = 0; t < F_; ++t) next[d + 1][t] = (next[d + 1][t] + poly[d][t]) % pk_;
      auto prod = lift.times(poly[d], root);
      for (int t = 0; t < F_; ++t) next[d][t] = mod_floor(next[d][t] - prod[t], pk_);
    }
    poly = std::move(next);
    root = lift.power(root, p_);
  }
  G_.assign(F_ + 1, 0);
  for (int d = 0; d <= F_; ++d) {
    for (int t = 1; t < F_; ++t)
      if (poly[d][t] != 0) throw std::logic_error("Teichmueller polynomial not over Z_p");
    G_[d] = poly[d][0];
  }
  trace_zeta_.assign(F_, 0);
  for (int i = 0; i < F_; ++i) {
    auto yi = lift.power(y, i);
    std::vector<std::int64_t> acc(F_, 0);
    for (int l = 0; l < F_; ++l) {
      auto c = lift.power(yi, ipow(p_, l));
      for (int t = 0; t < F_; ++t) acc[t] = (acc[t] + c[t]) % pk_;
    }
    for (int t = 1; t < F_; ++t)
      if (acc[t] != 0) throw std::logic_error("trace not in Z_p");
    trace_zeta_[i] = acc[0];
  }
  if (q_ - 1 <= (1 << 17)) {
    zeta_table_.reserve(q_ - 1);
    ZPoly z(F_, 0);
    z[0] = 1;
    ZPoly gen(F_, 0);
    if (F_ == 1)
      gen[0] = mod_floor(-G_[0], pk_);
    else
      gen[1] = 1;
    for (std::int64_t n = 0; n < q_ - 1; ++n) {
      zeta_table_.push_back(z);
      z = zpoly_mul(z, gen);
    }
  }
  frob_.assign(F_, std::vector<ZPoly>(F_));
  for (int a = 0; a < F_; ++a) {
    std::int64_t pa = ipow(p_, a);
    for (int i = 0; i < F_; ++i) frob_[a][i] = zeta_power_poly(static_cast<std::int64_t>(i) * pa);
  }
  // Discrete logarithm on the residue field, keyed by base-p digits of the zeta-coordinates.
  residue_log_.assign(q_, -1);
  QuotientRing res{p_, g};
  auto r = res.one();
  auto x = res.gen();
  for (std::int64_t n = 0; n < q_ - 1; ++n) {
    std::int64_t code = 0;
    for (int t = F_ - 1; t >= 0; --t) code = code * p_ + r[t];
    residue_log_[code] = static_cast<std::int32_t>(n);
    r = res.times(r, x);
  }
}

void Ambient::setup_group() {
  int n = group_order();
  mul_table_.assign(static_cast<std::size_t>(n) * n, 0);
  inv_table_.assign(n, 0);
  std::vector<std::int64_t> pa(F_);
  for (int a = 0; a < F_; ++a) pa[a] = static_cast<std::int64_t>(mod_floor(ipow(p_, a), e_));
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      int a = g / e_, b = g % e_, a2 = h / e_, b2 = h % e_;
      GalId r = ((a + a2) % F_) * e_ + static_cast<int>((b + pa[a] * b2) % e_);
      mul_table_[g * n + h] = r;
      if (r == 0) inv_table_[g] = h;
    }
  }
}

GalId Ambient::make_gal(int a, std::int64_t b) const {
  return static_cast<GalId>(mod_floor(a, F_) * e_ + mod_floor(b, e_));
}

Ambient::ZPoly Ambient::zpoly_reduce(std::vector<__int128>& raw) const {
  std::vector<std::int64_t> r(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    r[i] = static_cast<std::int64_t>(static_cast<u128>(raw[i]) % static_cast<u128>(pk_));
  for (int t = static_cast<int>(r.size()) - 1; t >= F_; --t) {
    std::int64_t c = r[t];
    if (!c) continue;
    for (int i = 0; i < F_; ++i) r[t - F_ + i] = mod_floor(r[t - F_ + i] - mulmod(c, G_[i]), pk_);
  }
  r.resize(F_);
  return r;
}

Ambient::ZPoly Ambient::zpoly_mul(const ZPoly& a, const ZPoly& b) const {
  std::vector<__int128> raw(2 * F_ - 1, 0);
  for (int i = 0; i < F_; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < F_; ++j)
      raw[i + j] = static_cast<__int128>(static_cast<u128>(raw[i + j]) +
                                         static_cast<u128>(a[i]) * static_cast<u128>(b[j]));
  }
  return zpoly_reduce(raw);
}

Ambient::ZPoly Ambient::zeta_power_poly(std::int64_t n) const {
  n = mod_floor(n, q_ - 1);
  if (!zeta_table_.empty()) return zeta_table_[n];
  ZPoly r(F_, 0), b(F_, 0);
  r[0] = 1;
  if (F_ == 1)
    b[0] = mod_floor(-G_[0], pk_);
  else
    b[1] = 1;
  while (n > 0) {
    if (n & 1) r = zpoly_mul(r, b);
    b = zpoly_mul(b, b);
    n >>= 1;
  }
  return r;
}

Elem Ambient::make(std::int64_t shift, std::int64_t prec, std::vector<std::int64_t> a) const {
  Elem x;
  x.amb_ = this;
  x.shift_ = shift;
  x.prec_ = std::min(prec, shift + full_prec());
  x.a_ = std::move(a);
  return x.normalized();
}

Elem Ambient::zero(std::int64_t prec) const {
  Elem x;
  x.amb_ = this;
  x.shift_ = prec;
  x.prec_ = prec;
  x.a_.assign(static_cast<std::size_t>(F_) * e_, 0);
  return x;
}

Elem Ambient::from_int(std::int64_t n) const { return monomial(0, 0, n); }

Elem Ambient::from_rational(const mpq_class& r) const {
  auto conv = [&](const mpz_class& z) {
    mpz_class v = z;
    std::int64_t sh = 0;
    while (v != 0 && mpz_divisible_ui_p(v.get_mpz_t(), p_)) {
      v /= p_;
      sh += e_;
    }
    mpz_class m = v % mpz_class(static_cast<long>(pk_));
    if (m < 0) m += static_cast<long>(pk_);
    std::vector<std::int64_t> a(static_cast<std::size_t>(F_) * e_, 0);
    a[0] = m.get_si();
    if (z == 0) return zero(full_prec());
    return make(sh, sh + full_prec(), std::move(a));
  };
  if (r == 0) return zero(full_prec());
  return conv(r.get_num()) * conv(r.get_den()).inverse();
}

Elem Ambient::zeta_pow(std::int64_t n) const { return monomial(n, 0, 1); }

Elem Ambient::pi_pow(std::int64_t n) const { return monomial(0, n, 1); }

Elem Ambient::monomial(std::int64_t n_zeta, std::int64_t n_pi, std::int64_t coeff) const {
  if (coeff == 0) return zero(n_pi + full_prec());
  std::int64_t sh = n_pi;
  while (coeff % p_ == 0) {
    coeff /= p_;
    sh += e_;
  }
  auto z = zeta_power_poly(n_zeta);
  std::int64_t c = mod_floor(coeff, pk_);
  std::vector<std::int64_t> a(static_cast<std::size_t>(F_) * e_, 0);
  for (int i = 0; i < F_; ++i) a[i] = mulmod(z[i], c);
  return make(sh, sh + full_prec(), std::move(a));
}

Elem Ambient::apply(GalId g, const Elem& x) const {
  if (g == 0) return x;
  int a = g / e_;
  int b = g % e_;
  std::int64_t step = (q_ - 1) / e_;
  std::vector<std::int64_t> out(x.a_.size(), 0);
  for (int j = 0; j < e_; ++j) {
    const std::int64_t* src = &x.a_[static_cast<std::size_t>(j) * F_];
    bool any = false;
    for (int i = 0; i < F_; ++i) any |= src[i] != 0;
    if (!any) continue;
    ZPoly img(F_, 0);
    for (int i = 0; i < F_; ++i) {
      if (!src[i]) continue;
      for (int t = 0; t < F_; ++t) img[t] = (img[t] + mulmod(src[i], frob_[a][i][t])) % pk_;
    }
    std::int64_t twist = mod_floor(step * mod_floor(static_cast<std::int64_t>(b) * (j + x.shift_), e_), q_ - 1);
    if (twist) img = zpoly_mul(img, zeta_power_poly(twist));
    std::copy(img.begin(), img.end(), out.begin() + static_cast<std::ptrdiff_t>(j) * F_);
  }
  Elem r;
  r.amb_ = this;
  r.shift_ = x.shift_;
  r.prec_ = x.prec_;
  r.a_ = std::move(out);
  return r;
}

std::int64_t Ambient::residue_log(const Elem& unit) const {
  Elem u = unit.normalized();
  if (u.is_zero() || u.shift_ != 0) throw std::domain_error("residue_log needs a unit");
  std::int64_t code = 0;
  for (int t = F_ - 1; t >= 0; --t) code = code * p_ + u.a_[t] % p_;
  std::int32_t n = residue_log_[code];
  if (n < 0) throw std::logic_error("residue has no logarithm");
  return n;
}

RootOfUnity Ambient::psi_of_trace(const Elem& x, std::int64_t divide_by) const {
  if (x.prec_ < 1) throw PrecisionError("additive character needs the argument modulo the maximal ideal");
  // Collect sum c_m p^m with m = exponent of p in (trace / p).
  std::int64_t min_m = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> terms;
  for (int j = 0; j < e_; ++j) {
    std::int64_t ex = j + x.shift_;
    if (mod_floor(ex, e_) != 0) continue;
    std::int64_t m = ex / e_ - 1;
    std::int64_t c = 0;
    for (int i = 0; i < F_; ++i) {
      std::int64_t coef = x.a_[static_cast<std::size_t>(j) * F_ + i];
      if (coef) c = (c + mulmod(coef, trace_zeta_[i])) % pk_;
    }
    c = mulmod(c, mod_floor(e_, pk_));
    if (!c) continue;
    terms.emplace_back(m, c);
    min_m = std::min(min_m, m);
  }
  std::int64_t D = -min_m;
  if (D == 0) return RootOfUnity::one();
  if (D > k_) throw PrecisionError("trace denominator exceeds working precision");
  std::int64_t pD = ipow(p_, static_cast<int>(D));
  std::int64_t z = 0;
  for (auto [m, c] : terms) {
    std::int64_t sh = m + D;
    if (sh >= D) continue;
    z = (z + static_cast<std::int64_t>(static_cast<u128>(c % pD) * ipow(p_, static_cast<int>(sh)) % pD)) % pD;
  }
  if (divide_by != 1) {
    std::int64_t inv = inv_unit_mod(divide_by) % pD;
    z = static_cast<std::int64_t>(static_cast<u128>(z) * static_cast<u128>(inv) % static_cast<u128>(pD));
  }
  return RootOfUnity(z, pD);
}

bool Ambient::lies_in_base(const Elem& x) const {
  for (int j = 0; j < e_; ++j) {
    std::int64_t ex = j + x.shift_;
    for (int i = 0; i < F_; ++i) {
      std::int64_t c = x.a_[static_cast<std::size_t>(j) * F_ + i];
      if (!c) continue;
      if (ex >= x.prec_) continue;
      // Digits of c known: positions with ex + e*digit < prec.
      std::int64_t known = (x.prec_ - ex + e_ - 1) / e_;
      if (known > k_) known = k_;
      std::int64_t mod = ipow(p_, static_cast<int>(known));
      if (c % mod == 0) continue;
      if (i != 0 || mod_floor(ex, e_) != 0) return false;
    }
  }
  return true;
}

std::pair<mpq_class, std::int64_t> Ambient::to_rational_approx(const Elem& x) const {
  // Returns (r, v) with x == r modulo p^v.
  if (!lies_in_base(x)) throw std::domain_error("element does not lie in Q_p");
  mpq_class r = 0;
  for (int j = 0; j < e_; ++j) {
    std::int64_t ex = j + x.shift_;
    if (mod_floor(ex, e_) != 0) continue;
    std::int64_t c = x.a_[static_cast<std::size_t>(j) * F_];
    if (!c || ex >= x.prec_) continue;
    std::int64_t m = ex / e_;
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), p_, static_cast<unsigned long>(m >= 0 ? m : -m));
    mpq_class term = mpq_class(mpz_class(static_cast<long>(c)));
    if (m >= 0) term *= pw; else term /= pw;
    r += term;
  }
  std::int64_t v = x.prec_ >= 0 ? x.prec_ / e_ : -((-x.prec_ + e_ - 1) / e_);
  return {r, v};
}

// ---------------------------------------------------------------- Elem

std::int64_t Elem::val() const {
  const Ambient& A = *amb_;
  std::int64_t best = prec_;
  for (int j = 0; j < A.e_; ++j) {
    for (int i = 0; i < A.F_; ++i) {
      std::int64_t c = a_[static_cast<std::size_t>(j) * A.F_ + i];
      if (!c) continue;
      std::int64_t v = 0;
      while (c % A.p_ == 0) {
        c /= A.p_;
        ++v;
      }
      best = std::min(best, shift_ + j + v * A.e_);
    }
  }
  return best;
}

Elem Elem::normalized() const {
  const Ambient& A = *amb_;
  std::int64_t v = val();
  if (v >= prec_) return A.zero(prec_);
  std::int64_t s = v - shift_;
  if (s == 0) return *this;
  // Divide the coefficient block by pi^s: s = e*t + r.
  std::int64_t t = s / A.e_, r = s % A.e_;
  std::int64_t pt = ipow(A.p_, static_cast<int>(t));
  std::vector<std::int64_t> out(a_.size(), 0);
  for (int j = 0; j < A.e_; ++j) {
    for (int i = 0; i < A.F_; ++i) {
      std::int64_t c = a_[static_cast<std::size_t>(j) * A.F_ + i];
      if (!c) continue;
      std::int64_t jj = j - r;
      std::int64_t div = pt;
      if (jj < 0) {
        jj += A.e_;
        div *= A.p_;
      }
      out[static_cast<std::size_t>(jj) * A.F_ + i] = c / div;
    }
  }
  Elem x;
  x.amb_ = amb_;
  x.shift_ = v;
  x.prec_ = prec_;
  x.a_ = std::move(out);
  return x;
}

namespace {

// Re-express x in frame `target` <= x.shift (multiply the block by pi^{shift-target}).
std::vector<std::int64_t> lowered(const Ambient& A, const Elem& x, std::int64_t target) {
  std::int64_t s = x.shift() - target;
  const auto& a = x.coeffs();
  if (s == 0) return a;
  int F = A.unram_degree(), e = A.ram_index();
  std::int64_t t = s / e, r = s % e;
  std::int64_t pk = A.modulus();
  std::int64_t mult = 1;
  for (std::int64_t i = 0; i < t && mult; ++i) mult = mult * A.p() % pk;
  if (t >= A.digits()) mult = 0;
  std::vector<std::int64_t> out(a.size(), 0);
  if (!mult) return out;
  for (int j = 0; j < e; ++j) {
    for (int i = 0; i < F; ++i) {
      std::int64_t c = a[static_cast<std::size_t>(j) * F + i];
      if (!c) continue;
      std::int64_t jj = j + r;
      std::int64_t m = mult;
      if (jj >= e) {
        jj -= e;
        m = A.mulmod(m, A.p());
      }
      out[static_cast<std::size_t>(jj) * F + i] = A.mulmod(c, m);
    }
  }
  return out;
}

}  // namespace

Elem operator+(const Elem& x, const Elem& y) {
  const Ambient& A = *x.amb_;
  std::int64_t prec = std::min(x.prec_, y.prec_);
  if (x.is_zero()) return y.with_prec(prec);
  if (y.is_zero()) return x.with_prec(prec);
  std::int64_t m = std::min(x.shift_, y.shift_);
  auto ax = lowered(A, x, m);
  auto ay = lowered(A, y, m);
  for (std::size_t i = 0; i < ax.size(); ++i) {
    ax[i] += ay[i];
    if (ax[i] >= A.pk_) ax[i] -= A.pk_;
  }
  return A.make(m, prec, std::move(ax));
}

Elem Elem::operator-() const {
  Elem r = *this;
  for (auto& c : r.a_)
    if (c) c = amb_->pk_ - c;
  return r;
}

Elem operator-(const Elem& x, const Elem& y) { return x + (-y); }

Elem operator*(const Elem& x, const Elem& y) {
  const Ambient& A = *x.amb_;
  std::int64_t vx = x.val(), vy = y.val();
  std::int64_t prec = std::min(vx + y.prec_, vy + x.prec_);
  if (x.is_zero() || y.is_zero()) return A.zero(prec);
  int F = A.F_, e = A.e_;
  int W = 2 * F - 1;
  std::vector<__int128> raw(static_cast<std::size_t>(2 * e - 1) * W, 0);
  for (int j = 0; j < e; ++j) {
    for (int i = 0; i < F; ++i) {
      std::int64_t c = x.a_[static_cast<std::size_t>(j) * F + i];
      if (!c) continue;
      for (int j2 = 0; j2 < e; ++j2) {
        __int128* row = &raw[static_cast<std::size_t>(j + j2) * W + i];
        const std::int64_t* src = &y.a_[static_cast<std::size_t>(j2) * F];
        for (int i2 = 0; i2 < F; ++i2) {
          if (!src[i2]) continue;
          row[i2] = static_cast<__int128>(static_cast<u128>(row[i2]) +
                                          static_cast<u128>(c) * static_cast<u128>(src[i2]));
        }
      }
    }
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(F) * e, 0);
  for (int j = 2 * e - 2; j >= 0; --j) {
    std::vector<__int128> slot(raw.begin() + static_cast<std::ptrdiff_t>(j) * W,
                               raw.begin() + static_cast<std::ptrdiff_t>(j + 1) * W);
    bool any = false;
    for (auto v : slot) any |= v != 0;
    if (!any) continue;
    auto poly = A.zpoly_reduce(slot);
    int jj = j;
    if (jj >= e) {
      jj -= e;
      for (auto& c : poly) c = A.mulmod(c, A.p_);
    }
    for (int i = 0; i < F; ++i) {
      auto& dst = out[static_cast<std::size_t>(jj) * F + i];
      dst += poly[i];
      if (dst >= A.pk_) dst -= A.pk_;
    }
  }
  return A.make(x.shift_ + y.shift_, prec, std::move(out));
}

Elem Elem::inverse() const {
  const Ambient& A = *amb_;
  Elem x = normalized();
  if (x.is_zero()) throw std::domain_error("inverse of zero");
  std::int64_t rel = x.prec_ - x.shift_;
  Elem unit = x;
  unit.shift_ = 0;
  unit.prec_ = rel;
  std::int64_t n = A.residue_log(unit);
  Elem y = A.zeta_pow(-n);
  Elem two = A.from_int(2);
  std::int64_t good = 1;
  while (good < A.full_prec()) {
    y = y * (two - unit * y);
    good *= 2;
  }
  y = y.with_prec(rel);
  Elem r = y;
  r.shift_ = y.shift_ - x.shift_;
  r.prec_ = y.prec_ - x.shift_;
  return r;
}

Elem Elem::times_pi(std::int64_t n) const {
  Elem r = *this;
  r.shift_ += n;
  r.prec_ += n;
  return r;
}

Elem Elem::times_int(std::int64_t n) const {
  const Ambient& A = *amb_;
  if (n == 0) return A.zero(prec_);
  std::int64_t v = 0;
  while (n % A.p_ == 0) {
    n /= A.p_;
    ++v;
  }
  Elem r = *this;
  std::int64_t u = mod_floor(n, A.pk_);
  for (auto& c : r.a_)
    if (c) c = A.mulmod(c, u);
  return r.times_pi(v * A.e_);
}

Elem Elem::div_int(std::int64_t n) const {
  const Ambient& A = *amb_;
  if (n == 0) throw std::domain_error("division by zero");
  std::int64_t v = 0;
  while (n % A.p_ == 0) {
    n /= A.p_;
    ++v;
  }
  Elem r = *this;
  std::int64_t u = A.inv_unit_mod(n);
  for (auto& c : r.a_)
    if (c) c = A.mulmod(c, u);
  return r.times_pi(-v * A.e_);
}

Elem Elem::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  Elem r = amb_->from_int(1);
  Elem b = *this;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return r;
}

Elem Elem::with_prec(std::int64_t v) const {
  if (v >= prec_) return *this;
  Elem r = truncated_below(v);
  r.prec_ = v;
  return r.normalized();
}

Elem Elem::truncated_below(std::int64_t v) const {
  const Ambient& A = *amb_;
  if (v > prec_) throw PrecisionError("truncation beyond known precision");
  Elem r = *this;
  for (int j = 0; j < A.e_; ++j) {
    std::int64_t ex = shift_ + j;
    // digit d of the coefficient sits at pi^{ex + e*d}; keep those below v
    std::int64_t keep = ex >= v ? 0 : (v - ex + A.e_ - 1) / A.e_;
    if (keep >= A.k_) continue;
    std::int64_t mod = ipow(A.p_, static_cast<int>(keep));
    for (int i = 0; i < A.F_; ++i) r.a_[static_cast<std::size_t>(j) * A.F_ + i] %= mod;
  }
  // The truncation is an exact element.
  r.prec_ = shift_ + A.full_prec();
  return r.normalized();
}

bool Elem::congruent(const Elem& y, std::int64_t v) const {
  Elem d = *this - y;
  if (d.prec_ < v) throw PrecisionError("congruence requested beyond known precision");
  return d.val() >= v;
}

std::string Elem::to_string() const {
  std::ostringstream os;
  os << "pi^" << shift_ << "*[";
  for (std::size_t i = 0; i < a_.size(); ++i) os << (i ? "," : "") << a_[i];
  os << "] +O(pi^" << prec_ << ")";
  return os.str();
}

}  // namespace tame
