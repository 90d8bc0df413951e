#include "tamegamma/local_factors.hpp"

#include <sstream>

#include "tamegamma/errors.hpp"

namespace tame {

namespace {

CycValue sum_of_roots(const std::vector<RootOfUnity>& roots) {
  std::int64_t m = 1;
  for (const auto& z : roots) m = lcm64(m, z.den());
  std::vector<std::pair<std::int64_t, mpq_class>> terms;
  terms.reserve(roots.size());
  for (const auto& z : roots) terms.emplace_back(z.num() * (m / z.den()), mpq_class(1));
  return CycValue::from_terms(m, terms);
}

RootOfUnity product_of(const std::vector<MultChar>& chis, const std::vector<Elem>& xs) {
  RootOfUnity r;
  for (std::size_t i = 0; i < chis.size(); ++i) r *= chis[i](xs[i]);
  return r;
}

mpq_class least_positive_residue(const mpq_class& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  mpq_class r = x - mpq_class(fl);
  if (r == 0) r = 1;
  return r;
}

}  // namespace

GaussSum gauss_sum(const MultChar& chi) {
  if (chi.wild().is_zero()) throw ConfigError("Gauss sum needs a character of positive depth");
  const Field& k = *chi.field();
  const Ambient& A = k.ambient();
  std::int64_t m = chi.depth_units();
  if (m % 2 == 1) return {CycValue(1L), 0};
  const Elem& c = chi.wild();
  Elem one = A.from_int(1);
  Elem step = k.uniformizer().pow(m / 2);
  std::vector<RootOfUnity> terms{RootOfUnity::one()};
  for (std::int64_t j = 0; j < k.residue_size() - 1; ++j) {
    Elem y = A.zeta_pow(j * k.zeta_step()) * step;
    terms.push_back(chi(one + y).inverse() * k.psi(c * y));
  }
  return {sum_of_roots(terms), -k.f()};
}

LocalFactor tate_eps(const MultChar& chi) {
  const Field& k = *chi.field();
  int p = k.p();
  LocalFactor out(p);
  if (chi.is_unramified()) {
    // psi_K has level one, so the conductor shift is a single step of pi_K.
    out.times_root(chi.unif().inverse());
    out.times_x(-k.f());
    out.times_sqrt_p(-k.f());
    return out;
  }
  if (chi.wild().is_zero()) {
    std::vector<RootOfUnity> terms;
    for (std::int64_t j = 0; j < k.residue_size() - 1; ++j) {
      Elem z = k.ambient().zeta_pow(j * k.zeta_step());
      terms.push_back(RootOfUnity(-chi.tame() * j, k.residue_size() - 1) * k.psi(z));
    }
    out.times_atom(sum_of_roots(terms));
    out.times_sqrt_p(-k.f());
    return out;
  }
  const Elem& c = chi.wild();
  int fm = static_cast<int>(k.f() * chi.depth_units());
  out.times_root(chi(c).inverse() * k.psi(c));
  out.times_sqrt_p(fm);
  out.times_x(fm);
  GaussSum g = gauss_sum(chi);
  out.times_atom(g.sum);
  out.times_sqrt_p(g.half_p);
  return out;
}

LocalFactor tate_gamma(const MultChar& chi) {
  LocalFactor out = tate_eps(chi);
  if (!chi.is_unramified()) return out;
  int f = chi.field()->f();
  out.times_linear({chi.unif(), 0, f}, 1);
  out.times_linear({chi.unif().inverse(), -2 * f, -f}, -1);
  return out;
}

GammaProduct& GammaProduct::operator*=(const GammaProduct& o) {
  lambdas.add(o.lambdas);
  factor *= o.factor;
  return *this;
}

std::string GammaProduct::to_string() const {
  return "lambda" + lambdas.to_string() + " * " + factor.to_string();
}

GammaProduct gamma_induced_twist(const MultChar& chi, const MultChar& eta) {
  GammaProduct out{{}, LocalFactor(chi.field()->p())};
  for (const auto& tf : tensor_decompose(*chi.field(), *eta.field())) {
    MultChar theta = inflate(conj_by(tf.g, chi), tf.field) * inflate(eta, tf.field);
    out.lambdas.add(tf.field->iso_class());
    out.factor *= tate_gamma(theta);
  }
  return out;
}

GammaProduct gamma_rep_twist(const WeilRep& r, const MultChar& tau) {
  GammaProduct out{{}, LocalFactor(tau.field()->p())};
  for (const auto& s : r.summands()) {
    GammaProduct g = gamma_induced_twist(s.chi, tau);
    for (int twice_k = 1 - s.sl2_dim; twice_k <= s.sl2_dim - 1; twice_k += 2) {
      out.lambdas.add(g.lambdas);
      out.factor *= g.factor.shifted_s(twice_k);
    }
  }
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Equal: return "Equal";
    case Verdict::NotEqual: return "NotEqual";
    case Verdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

Verdict gamma_equal(const GammaProduct& a, const GammaProduct& b) {
  if (!(a.lambdas == b.lambdas)) return Verdict::Indeterminate;
  return factor_eq(a.factor, b.factor) ? Verdict::Equal : Verdict::NotEqual;
}

std::map<int, Elem> u_poly(const Elem& alpha, const Field& l, USign sign) {
  auto f = char_poly(alpha, l);
  int r = static_cast<int>(f.size()) - 1;
  std::map<int, Elem> out;
  if (sign == USign::plus) {
    if (f[0].is_zero()) throw ConfigError("u^+ needs a nonzero alpha");
    Elem inv = f[0].inverse();
    for (int k = 0; k <= r; ++k) out.emplace(k, (k % 2 ? -f[k] : f[k]) * inv);
  } else {
    for (int k = 0; k <= r; ++k) out.emplace(k - r, (k - r) % 2 ? -f[k] : f[k]);
  }
  return out;
}

Elem u_value(const Elem& alpha, const Field& l, USign sign, const Elem& beta) {
  auto poly = u_poly(alpha, l, sign);
  Elem binv = beta.inverse();
  Elem acc = beta.ambient().zero(beta.ambient().full_prec());
  for (const auto& [k, c] : poly) acc = acc + c * (k >= 0 ? beta.pow(k) : binv.pow(-k));
  return acc;
}

mpq_class normalized_val(const Elem& x) {
  mpq_class v(x.val(), x.ambient().ram_index());
  v.canonicalize();
  return v;
}

mpq_class t_beta_congruence_bound(const mpq_class& depth, int r) {
  mpq_class best = 1;
  for (int i = 1; i < r; ++i)
    for (int s : {1, -1}) {
      mpq_class v = least_positive_residue(mpq_class(s * i) * depth);
      if (v < best) best = v;
    }
  return best;
}

TBetaReport t_beta(const Elem& beta, int r) {
  mpq_class d = -normalized_val(beta);
  TBetaReport rep;
  rep.r = r;
  rep.method = "congruence";
  rep.bound = t_beta_congruence_bound(d, r);
  for (int i = 1; i < r; ++i)
    for (int s : {1, -1})
      if (least_positive_residue(mpq_class(s * i) * d) == rep.bound)
        rep.witnesses.push_back("degree " + std::to_string(i) + (s > 0 ? " in 1/X" : " in X"));
  return rep;
}

namespace {

Elem random_element(const Field& l, std::int64_t j0, int terms, std::mt19937_64& rng) {
  const Ambient& A = l.ambient();
  std::uniform_int_distribution<std::int64_t> unit(0, l.residue_size() - 2);
  std::uniform_int_distribution<int> digit(0, A.p() - 1);
  Elem x = A.zeta_pow(unit(rng) * l.zeta_step()) * l.uniformizer().pow(j0);
  for (int t = 1; t < terms; ++t)
    for (int i = 0; i < l.f(); ++i) {
      int c = digit(rng);
      if (c) x = x + A.zeta_pow(i * l.zeta_step()).times_int(c) * l.uniformizer().pow(j0 + t);
    }
  return x;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  return (a % b != 0 && ((a < 0) != (b < 0))) ? q - 1 : q;
}

}  // namespace

TBetaReport t_beta_sampled(const Elem& beta, const Field& k, int r, std::size_t samples,
                           std::mt19937_64& rng) {
  if (!k.contains(beta)) throw ConfigError("beta does not lie in the given field");
  FieldPtr top = Field::fixed_field(k.ambient_ptr(), {0});
  std::vector<FieldPtr> small;
  for (const auto& l : subfields(*top))
    if (l->degree() < r) small.push_back(l);
  std::int64_t vb = beta.val();
  TBetaReport rep;
  rep.r = r;
  rep.method = "sampled";
  bool have = false;
  std::uniform_int_distribution<std::size_t> pick(0, small.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t n = 0; n < samples; ++n) {
    const Field& l = *small[pick(rng)];
    std::int64_t step = l.pi_step();
    USign sign = coin(rng) ? USign::plus : USign::minus;
    std::int64_t lo, hi;
    if (sign == USign::plus) {
      hi = floor_div(vb - 1, step);  // j * step < vb
      lo = hi - 2;
    } else {
      lo = floor_div(vb, step) + 1;  // j * step > vb
      hi = std::min<std::int64_t>(-1, lo + 2);
      if (lo > hi) continue;  // no alpha with val(beta) < val(alpha) < 0
    }
    std::uniform_int_distribution<std::int64_t> jd(lo, hi);
    Elem alpha = random_element(l, jd(rng), 3, rng);
    Elem one = k.ambient().from_int(1);
    Elem diff = one - u_value(alpha, l, sign, beta);
    ++rep.samples;
    if (diff.is_zero()) continue;
    mpq_class v = normalized_val(diff);
    if (!have || v < rep.bound) {
      rep.bound = v;
      rep.witnesses = {std::string(sign == USign::plus ? "u+" : "u-") + " alpha=" + alpha.to_string() +
                       " in degree " + std::to_string(l.degree())};
      have = true;
    }
  }
  if (!have) rep.bound = 1;
  return rep;
}

bool coincide_on_units(const MultChar& a, const MultChar& b, const mpq_class& t) {
  if (!(*a.field() == *b.field())) throw std::invalid_argument("characters on different fields");
  const Field& k = *a.field();
  Elem delta = polar_part(a.wild() - b.wild());
  if (t <= 0) return a.tame() == b.tame() && delta.is_zero();
  mpq_class te = t * k.e();
  mpz_class n;
  mpz_cdiv_q(n.get_mpz_t(), te.get_num_mpz_t(), te.get_den_mpz_t());
  if (delta.is_zero()) return true;
  return delta.val() / k.pi_step() + n.get_si() >= 1;
}

BasicCheck prop_basic_check(const PairData& data, const MultChar& eta, const Elem& alpha) {
  const Field& l = *eta.field();
  auto f = char_poly(alpha, l);
  int r = l.degree();
  GammaProduct lhs{{}, LocalFactor(l.p())}, lhs_prime{{}, LocalFactor(l.p())};
  std::vector<Elem> vals;
  for (std::size_t i = 0; i < data.chi.size(); ++i) {
    const MultChar& chi = data.chi[i];
    const MultChar& chp = data.chi_prime[i];
    if (chi.field()->f() != 1) throw ConfigError("pairs must be totally ramified");
    if (chi.depth() == eta.depth()) throw ConfigError("twist depth coincides with a pair depth");
    if (!coincide_on_units(chi, chp, chi.depth() / 2))
      throw ConfigError("characters do not coincide on U^{d/2}");
    lhs *= gamma_induced_twist(chi, eta);
    lhs_prime *= gamma_induced_twist(chp, eta);
    Elem x = poly_eval(f, -data.beta[i]);
    vals.push_back(r % 2 ? -x : x);
  }
  BasicCheck out;
  out.lhs = gamma_equal(lhs, lhs_prime);
  out.rhs_equal = product_of(data.chi, vals) == product_of(data.chi_prime, vals);
  out.consistent = (out.lhs == Verdict::Equal) == out.rhs_equal && out.lhs != Verdict::Indeterminate;
  return out;
}

Basic2Report prop_basic2_conditions(const PairData& data, int r) {
  Basic2Report rep;
  rep.r = r;
  rep.restriction_ok = true;
  for (std::size_t i = 0; i < data.chi.size(); ++i) {
    mpq_class t = t_beta(data.beta[i], r).bound;
    rep.t.push_back(t);
    if (!coincide_on_units(data.chi[i], data.chi_prime[i], t)) rep.restriction_ok = false;
  }
  rep.beta_product_ok = product_of(data.chi, data.beta) == product_of(data.chi_prime, data.beta);
  if (data.chi.empty()) {
    rep.base_restriction_ok = true;
    return rep;
  }
  FieldPtr base = base_field(data.chi.front().field()->ambient_ptr());
  MultChar a = MultChar::trivial(base), b = MultChar::trivial(base);
  for (std::size_t i = 0; i < data.chi.size(); ++i) {
    a = a * restrict_to(data.chi[i], base);
    b = b * restrict_to(data.chi_prime[i], base);
  }
  rep.base_restriction_ok = a == b;
  return rep;
}

}  // namespace tame
