#include "tamegamma/characters.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tamegamma/errors.hpp"

namespace tame {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  // extended Euclid; assumes gcd(a, m) = 1
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod_floor(a, m);
  while (a1) {
    std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  return mod_floor(x, m);
}

// exponent k with exp(2 pi i k/(q-1)) = z; z must have order dividing q - 1
std::int64_t exponent_over(const RootOfUnity& z, std::int64_t q1) {
  if (q1 % z.den() != 0) throw std::logic_error("root of unity outside the residue group");
  return z.num() * (q1 / z.den());
}

}  // namespace

Elem polar_part(const Elem& x) {
  if (x.is_zero()) return x.ambient().zero(x.ambient().full_prec());
  if (x.val() >= 0) return x.ambient().zero(x.ambient().full_prec());
  return x.truncated_below(0);
}

MultChar::MultChar(FieldPtr field, RootOfUnity unif, std::int64_t tame, Elem wild)
    : field_(std::move(field)), unif_(unif), tame_(mod_floor(tame, field_->residue_size() - 1)),
      wild_(polar_part(wild)) {}

MultChar MultChar::trivial(FieldPtr field) {
  Elem z = field->ambient().zero(field->ambient().full_prec());
  return MultChar(std::move(field), RootOfUnity::one(), 0, z);
}

mpq_class MultChar::depth() const {
  if (wild_.is_zero()) return 0;
  mpq_class d(-wild_.val(), field_->ambient().ram_index());
  d.canonicalize();
  return d;
}

std::int64_t MultChar::depth_units() const {
  if (wild_.is_zero()) return 0;
  return -wild_.val() / field_->pi_step();
}

RootOfUnity MultChar::operator()(const Elem& x) const {
  auto parts = teichmuller_decompose(x, *field_);
  std::int64_t q1 = field_->residue_size() - 1;
  RootOfUnity r = unif_.pow(parts.a) *
                  RootOfUnity(static_cast<std::int64_t>(static_cast<__int128>(tame_) * parts.b % q1), q1);
  if (!wild_.is_zero()) {
    std::int64_t upto = -wild_.val() + 1;
    Elem lg = log_principal(parts.u, upto);
    r *= field_->psi(wild_ * lg);
  }
  return r;
}

MultChar operator*(const MultChar& a, const MultChar& b) {
  if (!(*a.field_ == *b.field_)) throw std::invalid_argument("characters on different fields");
  return MultChar(a.field_, a.unif_ * b.unif_, a.tame_ + b.tame_, a.wild_ + b.wild_);
}

MultChar MultChar::pow(std::int64_t n) const {
  std::int64_t q1 = field_->residue_size() - 1;
  return MultChar(field_, unif_.pow(n),
                  static_cast<std::int64_t>(static_cast<__int128>(tame_) * mod_floor(n, q1) % q1),
                  wild_.times_int(n));
}

MultChar MultChar::dual() const { return pow(-1); }

bool operator==(const MultChar& a, const MultChar& b) {
  if (!(*a.field_ == *b.field_)) return false;
  if (a.unif_ != b.unif_ || a.tame_ != b.tame_) return false;
  Elem d = a.wild_ - b.wild_;
  return d.is_zero() || d.val() >= 0;
}

std::string MultChar::to_string() const {
  std::ostringstream os;
  os << "chi[" << field_->to_string() << ", unif=" << unif_.to_string() << ", tame=" << tame_
     << "/" << field_->residue_size() - 1 << ", wild=" << (wild_.is_zero() ? std::string("0") : wild_.to_string())
     << "]";
  return os.str();
}

MultChar multiply(const MultChar& a, const MultChar& b) { return a * b; }
MultChar dual(const MultChar& chi) { return chi.dual(); }

MultChar inflate(const MultChar& chi, const FieldPtr& big) {
  const Field& k = *chi.field();
  if (!is_subfield(k, *big)) throw std::invalid_argument("inflation target does not contain the field");
  if (*big == k) return chi;
  RootOfUnity unif = chi(norm(big->uniformizer(), *big, k));
  RootOfUnity z = chi(norm(big->zeta_gen(), *big, k));
  return MultChar(big, unif, exponent_over(z, big->residue_size() - 1), chi.wild());
}

MultChar restrict_to(const MultChar& chi, const FieldPtr& small) {
  const Field& k = *chi.field();
  if (!is_subfield(*small, k)) throw std::invalid_argument("restriction target is not a subfield");
  if (*small == k) return chi;
  RootOfUnity unif = chi(small->uniformizer());
  RootOfUnity z = chi(small->zeta_gen());
  Elem w = chi.wild().is_zero() ? chi.wild() : trace(chi.wild(), k, *small);
  return MultChar(small, unif, exponent_over(z, small->residue_size() - 1), w);
}

MultChar conj_by(GalId g, const MultChar& chi) {
  const Field& k = *chi.field();
  const Ambient& A = k.ambient();
  FieldPtr img = conjugate_field(g, k);
  GalId gi = A.inverse(g);
  RootOfUnity unif = chi(A.apply(gi, img->uniformizer()));
  RootOfUnity z = chi(A.apply(gi, img->zeta_gen()));
  return MultChar(img, unif, exponent_over(z, img->residue_size() - 1), A.apply(g, chi.wild()));
}

MultChar twist_by_base(const MultChar& chi, const MultChar& eta_base) {
  return chi * inflate(eta_base, chi.field());
}

Elem project(const Elem& x, const Field& k, const Field& l) {
  int idx = k.degree() / l.degree();
  return trace(x, k, l).div_int(idx);
}

bool wild_factors_through_norm(const MultChar& chi, const Field& l) {
  if (chi.wild().is_zero()) return true;
  Elem d = chi.wild() - project(chi.wild(), *chi.field(), l);
  return d.is_zero() || d.val() >= 0;
}

std::optional<MultChar> norm_descent(const MultChar& chi, const FieldPtr& l) {
  const Field& k = *chi.field();
  if (!is_subfield(*l, k)) throw std::invalid_argument("descent target is not a subfield");
  if (!wild_factors_through_norm(chi, *l)) return std::nullopt;
  Elem wl = chi.wild().is_zero() ? chi.wild() : project(chi.wild(), k, *l);
  // Tame part: N(zeta_K) = zeta_L^n.
  std::int64_t qk1 = k.residue_size() - 1, ql1 = l->residue_size() - 1;
  auto nz = teichmuller_decompose(norm(k.zeta_gen(), k, *l), *l);
  std::int64_t A = static_cast<std::int64_t>(static_cast<__int128>(nz.b) * (qk1 / ql1) % qk1);
  std::int64_t g = std::gcd(A, qk1);
  if (chi.tame() % g != 0) return std::nullopt;
  std::int64_t m = qk1 / g;
  std::int64_t tl = m == 1 ? 0
                           : static_cast<std::int64_t>(static_cast<__int128>(chi.tame() / g) *
                                                       inv_mod(A / g, m) % m);
  tl = mod_floor(tl, ql1);
  // Uniformizer: N(pi_K) = pi_L^{f'} zeta_L^b u.
  MultChar partial(l, RootOfUnity::one(), tl, wl);
  Elem npi = norm(k.uniformizer(), k, *l);
  auto parts = teichmuller_decompose(npi, *l);
  RootOfUnity rest = partial(npi);
  RootOfUnity target = chi(k.uniformizer()) * rest.inverse();
  std::int64_t fp = parts.a;
  RootOfUnity unif(target.num(), target.den() * fp);
  MultChar eta(l, unif, tl, wl);
  return eta;
}

bool factors_through_norm(const MultChar& chi, const FieldPtr& l) {
  return norm_descent(chi, l).has_value();
}

bool is_admissible(const MultChar& chi) {
  const FieldPtr& k = chi.field();
  for (const auto& l : subfields(*k)) {
    if (*l == *k) continue;
    bool wild_ok = wild_factors_through_norm(chi, *l);
    if (!wild_ok) continue;
    if (l->e() != k->e()) return false;
    if (factors_through_norm(chi, l)) return false;
  }
  return true;
}

bool is_quasi_minimal(const Elem& beta, const Field& k) {
  if (beta.is_zero()) return false;
  std::int64_t vb = beta.val();
  for (const auto& l : subfields(k)) {
    if (*l == k) continue;
    Elem d = beta - project(beta, k, *l);
    std::int64_t vd = d.is_zero() ? d.prec() : d.val();
    if (2 * vd >= vb) return false;
  }
  return true;
}

std::string to_string(Parity p) { return p == Parity::orthogonal ? "orthogonal" : "symplectic"; }

namespace {

FieldPtr field_generated(const Field& k, GalId extra) {
  auto gens = k.subgroup();
  gens.push_back(extra);
  return Field::fixed_field(k.ambient_ptr(), subgroup_closure(k.ambient(), gens));
}

}  // namespace

std::optional<SelfDuality> is_self_dual(const MultChar& chi) {
  const FieldPtr& k = chi.field();
  MultChar inv = chi.dual();
  for (GalId g = 0; g < k->ambient().group_order(); ++g) {
    if (k->fixes(g)) continue;
    FieldPtr l = field_generated(*k, g);
    if (l->degree() * 2 != k->degree()) continue;
    if (!(*conjugate_field(g, *k) == *k)) continue;
    if (!(conj_by(g, chi) == inv)) continue;
    MultChar res = restrict_to(chi, l);
    return SelfDuality{l, g, res.is_trivial() ? Parity::orthogonal : Parity::symplectic};
  }
  return std::nullopt;
}

MultChar quadratic_class_character(const Field& k, const FieldPtr& l) {
  if (k.degree() != 2 * l->degree() || !is_subfield(*l, k))
    throw std::invalid_argument("not a quadratic extension");
  const Ambient& A = k.ambient();
  Elem z = A.zero(A.full_prec());
  std::int64_t q1 = l->residue_size() - 1;
  if (k.e() == l->e()) return MultChar(l, RootOfUnity(1, 2), 0, z);
  Elem npi = norm(k.uniformizer(), k, *l);
  auto parts = teichmuller_decompose(l->uniformizer() * npi.inverse(), *l);
  RootOfUnity unif = parts.b % 2 == 0 ? RootOfUnity::one() : RootOfUnity(1, 2);
  return MultChar(l, unif, q1 / 2, z);
}

int jacobi_symbol(std::int64_t a, std::int64_t n) {
  if (n <= 0 || n % 2 == 0) throw std::invalid_argument("Jacobi symbol needs odd positive modulus");
  a = mod_floor(a, n);
  int r = 1;
  while (a) {
    while (a % 2 == 0) {
      a /= 2;
      if (n % 8 == 3 || n % 8 == 5) r = -r;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) r = -r;
    a %= n;
  }
  return n == 1 ? r : 0;
}

MultChar kappa(const FieldPtr& k, const FieldPtr& l) {
  const Ambient& A = k->ambient();
  Elem z = A.zero(A.full_prec());
  MultChar result = MultChar::trivial(l);
  if (*k == *l) return result;
  // Maximal unramified subextension K0 of K/L.
  auto gens = k->subgroup();
  for (GalId g : l->subgroup())
    if (A.gal_frob(g) == 0) gens.push_back(g);
  FieldPtr k0 = Field::fixed_field(k->ambient_ptr(), subgroup_closure(A, gens));
  int f = k0->degree() / l->degree();
  int e = k->degree() / k0->degree();
  if (f % 2 == 0 && e % 2 == 1) result = result * MultChar(l, RootOfUnity(1, 2), 0, z);
  if (e > 1) {
    MultChar part = MultChar::trivial(k0);
    if (e % 2 == 1) {
      int j = jacobi_symbol(k0->residue_size() % e, e);
      part = MultChar(k0, j == 1 ? RootOfUnity::one() : RootOfUnity(1, 2), 0, z);
    } else {
      FieldPtr mid;
      for (const auto& s : subfields(*k))
        if (s->degree() * 2 == k->degree() && is_subfield(*k0, *s)) mid = s;
      if (!mid) throw std::logic_error("no quadratic step in an even tower");
      part = restrict_to(quadratic_class_character(*k, mid), k0);
    }
    result = result * restrict_to(part, l);
  }
  return result;
}

MultChar det_induced(const MultChar& chi) {
  FieldPtr f = base_field(chi.field()->ambient_ptr());
  return kappa(chi.field(), f) * restrict_to(chi, f);
}

std::optional<GalId> pair_conjugator(const MultChar& a, const MultChar& b) {
  const Field& ka = *a.field();
  const Field& kb = *b.field();
  if (ka.ambient_ptr() != kb.ambient_ptr() || ka.degree() != kb.degree()) return std::nullopt;
  const Ambient& A = ka.ambient();
  for (GalId g = 0; g < A.group_order(); ++g) {
    if (conjugate_subgroup(A, g, ka.subgroup()) != kb.subgroup()) continue;
    if (conj_by(g, a) == b) return g;
  }
  return std::nullopt;
}

bool pair_equivalent(const MultChar& a, const MultChar& b) { return pair_conjugator(a, b).has_value(); }

namespace {

struct AntiBasis {
  FieldPtr l;
  bool ramified;
  std::vector<Elem> basis;
};

AntiBasis anti_invariant_basis(const FieldPtr& k, GalId sigma, const Elem& beta) {
  const Ambient& A = k->ambient();
  if (k->fixes(sigma)) throw ConfigError("involution acts trivially on the field");
  FieldPtr l = field_generated(*k, sigma);
  if (l->degree() * 2 != k->degree()) throw ConfigError("involution does not fix a quadratic subfield");
  if (!(A.apply(sigma, beta) + beta).is_zero()) throw ConfigError("beta is not anti-invariant");
  std::int64_t m = -beta.val() / k->pi_step();
  std::int64_t jmin = -(m / 2);  // val >= -m/2 in K-units
  AntiBasis out{l, k->e() != l->e(), {}};
  if (out.ramified) {
    for (std::int64_t j = jmin; j <= -1; ++j) {
      if (j % 2 == 0) continue;
      for (int i = 0; i < l->f(); ++i)
        out.basis.push_back(A.zeta_pow(i * l->zeta_step()) * k->uniformizer().pow(j));
    }
  } else {
    Elem eps = k->zeta_gen().pow((l->residue_size() + 1) / 2);
    for (std::int64_t j = jmin; j <= -1; ++j)
      for (int i = 0; i < l->f(); ++i)
        out.basis.push_back(eps * A.zeta_pow(i * l->zeta_step()) * l->uniformizer().pow(j));
  }
  return out;
}

}  // namespace

std::int64_t xi_beta_family_log_size(const FieldPtr& k, GalId sigma, const Elem& beta) {
  return static_cast<std::int64_t>(anti_invariant_basis(k, sigma, beta).basis.size());
}

std::vector<MultChar> xi_beta_family(const FieldPtr& k, GalId sigma, const Elem& beta,
                                     const XiFamilyOptions& opts) {
  const Ambient& A = k->ambient();
  auto ab = anti_invariant_basis(k, sigma, beta);
  const FieldPtr& l = ab.l;
  std::int64_t q1 = k->residue_size() - 1;
  std::int64_t tame = 0;
  RootOfUnity target = RootOfUnity::one();
  if (ab.ramified) {
    tame = opts.parity == Parity::orthogonal ? 0 : q1 / 2;
    if (opts.parity == Parity::symplectic) target = quadratic_class_character(*k, l).unif();
  } else {
    tame = mod_floor(opts.tame_index * (l->residue_size() - 1), q1);
    if (opts.parity == Parity::symplectic) target = RootOfUnity(1, 2);
  }
  std::vector<MultChar> out;
  std::size_t nb = ab.basis.size();
  std::vector<int> digits(nb, 0);
  while (out.size() < opts.max_count) {
    Elem c = beta;
    for (std::size_t i = 0; i < nb; ++i)
      if (digits[i]) c = c + ab.basis[i].times_int(digits[i]);
    MultChar partial(k, RootOfUnity::one(), tame, c);
    auto parts = teichmuller_decompose(l->uniformizer(), *k);
    RootOfUnity rest = partial(l->uniformizer());
    RootOfUnity want = target * rest.inverse();
    RootOfUnity unif(want.num(), want.den() * parts.a);
    if (parts.a == 2 && opts.unif_branch == 1) unif *= RootOfUnity(1, 2);
    out.emplace_back(k, unif, tame, c);
    // next digit vector
    std::size_t i = 0;
    while (i < nb && ++digits[i] == A.p()) digits[i++] = 0;
    if (i == nb) break;
  }
  return out;
}

}  // namespace tame
