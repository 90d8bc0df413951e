#include "tamegamma/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "tamegamma/errors.hpp"

namespace tame {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>(static_cast<__int128>(r) * b % m);
    b = static_cast<std::int64_t>(static_cast<__int128>(b) * b % m);
    e >>= 1;
  }
  return r;
}

bool is_odd_prime(int p) {
  if (p < 3 || p % 2 == 0) return false;
  for (int d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

int multiplicative_order(std::int64_t p, std::int64_t m) {
  if (m == 1) return 1;
  std::int64_t x = p % m;
  int k = 1;
  while (x != 1) {
    x = x * p % m;
    ++k;
    if (k > 100000) throw ConfigError("p is not invertible modulo the ramification index");
  }
  return k;
}

bool twist_fits(const TameFieldSpec& s, int F, int p) {
  std::int64_t qT = ipow(p, F);
  std::int64_t qf = ipow(p, s.f);
  std::int64_t step = (qT - 1) / (qf - 1);
  return static_cast<__int128>(s.twist) * step % s.e == 0;
}

}  // namespace

std::int64_t TameFieldSpec::residue_size() const { return ipow(p, f); }

std::string TameFieldSpec::to_string() const {
  std::ostringstream os;
  os << "(f=" << f << ",e=" << e << ",c=" << twist << ")";
  return os.str();
}

TameFieldSpec make_field(int p, int f, int e, long twist) {
  if (!is_odd_prime(p)) throw ConfigError("p must be an odd prime");
  if (f < 1 || e < 1) throw ConfigError("residue degree and ramification index must be positive");
  if (e % p == 0) throw ConfigError("ramification index divisible by p: not tame");
  std::int64_t qf = ipow(p, f);
  std::int64_t g = std::gcd<std::int64_t>(e, qf - 1);
  return {p, f, e, static_cast<long>(mod_floor(twist, g))};
}

AmbientPtr ambient_for(int p, const std::vector<TameFieldSpec>& fields, int digits, int extra_f,
                       int extra_e) {
  int eT = extra_e;
  int F = extra_f;
  for (const auto& s : fields) {
    if (s.p != p) throw ConfigError("fields over different primes");
    eT = std::lcm(eT, s.e);
    F = std::lcm(F, s.f);
  }
  F = std::lcm(F, multiplicative_order(p, eT));
  for (int mult = 1; mult < 64; ++mult) {
    int cand = F * mult;
    if (cand % p == 0) continue;
    bool ok = true;
    for (const auto& s : fields) ok = ok && twist_fits(s, cand, p);
    if (ok) return std::make_shared<const Ambient>(p, cand, eT, digits);
  }
  throw ConfigError("no ambient field found for the requested fields");
}

// ---------------------------------------------------------------- groups

std::vector<GalId> subgroup_closure(const Ambient& amb, std::vector<GalId> gens) {
  std::set<GalId> s{0};
  std::vector<GalId> frontier{0};
  gens.erase(std::remove(gens.begin(), gens.end(), 0), gens.end());
  while (!frontier.empty()) {
    std::vector<GalId> next;
    for (GalId x : frontier)
      for (GalId g : gens) {
        GalId y = amb.compose(x, g);
        if (s.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {s.begin(), s.end()};
}

std::vector<GalId> conjugate_subgroup(const Ambient& amb, GalId g, const std::vector<GalId>& h) {
  std::vector<GalId> out;
  GalId gi = amb.inverse(g);
  for (GalId x : h) out.push_back(amb.compose(amb.compose(g, x), gi));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<GalId> coset_reps(const Ambient& amb, const std::vector<GalId>& big,
                              const std::vector<GalId>& small) {
  std::set<GalId> covered;
  std::vector<GalId> reps;
  for (GalId g : big) {
    if (covered.count(g)) continue;
    reps.push_back(g);
    for (GalId h : small) covered.insert(amb.compose(g, h));
  }
  return reps;
}

// ---------------------------------------------------------------- fields

FieldPtr Field::fixed_field(const AmbientPtr& amb, std::vector<GalId> group) {
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  static std::mutex mu;
  static std::map<std::pair<const Ambient*, std::vector<GalId>>,
                  std::pair<std::weak_ptr<const Ambient>, FieldPtr>>
      cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({amb.get(), group});
    if (it != cache.end() && it->second.first.lock() == amb) return it->second.second;
  }
  const Ambient& A = *amb;
  int eT = A.ram_index();
  int inertia = 0;
  for (GalId g : group)
    if (A.gal_frob(g) == 0) ++inertia;
  auto K = std::shared_ptr<Field>(new Field());
  K->amb_ = amb;
  K->group_ = group;
  K->e_ = eT / inertia;
  int deg = A.degree() / static_cast<int>(group.size());
  K->f_ = deg / K->e_;
  K->q_ = ipow(A.p(), K->f_);
  // A small generating set.
  std::vector<GalId> gens;
  std::vector<GalId> span{0};
  for (GalId g : group) {
    if (std::binary_search(span.begin(), span.end(), g)) continue;
    gens.push_back(g);
    span = subgroup_closure(A, gens);
  }
  K->generators_ = gens;
  // Canonical monomial uniformizer.
  std::int64_t qT = A.residue_size();
  std::int64_t step = (qT - 1) / eT;
  std::int64_t m = eT / K->e_;
  std::int64_t sK = (qT - 1) / (K->q_ - 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> pa;  // (p^a mod q-1, b*m*step)
  for (GalId g : gens)
    pa.emplace_back(powmod(A.p(), A.gal_frob(g), qT - 1),
                    mod_floor(static_cast<std::int64_t>(A.gal_inertia(g)) * m % eT * step, qT - 1));
  std::int64_t best_c = -1, best_j = -1;
  for (std::int64_t j = 0; j < qT - 1; ++j) {
    bool fixed = true;
    for (auto [pw, tw] : pa) {
      std::int64_t img = static_cast<std::int64_t>((static_cast<__int128>(j) * pw + tw) % (qT - 1));
      if (img != j) {
        fixed = false;
        break;
      }
    }
    if (!fixed) continue;
    std::int64_t num = K->e_ * j;
    if (num % sK != 0) throw std::logic_error("uniformizer power outside the residue tower");
    std::int64_t c = mod_floor(num / sK, K->q_ - 1);
    if (best_c < 0 || c < best_c) {
      best_c = c;
      best_j = j;
    }
  }
  if (best_j < 0) throw std::logic_error("no monomial uniformizer found");
  K->j_ = best_j;
  K->twist_ = static_cast<long>(best_c);
  K->unif_ = A.monomial(best_j, m);
  K->unif_inv_ = A.monomial(-best_j, -m);
  std::lock_guard lock(mu);
  cache[{amb.get(), group}] = {amb, K};
  return K;
}

FieldPtr embed(const AmbientPtr& amb, const TameFieldSpec& spec) {
  const Ambient& A = *amb;
  if (spec.p != A.p()) throw ConfigError("field and ambient over different primes");
  TameFieldSpec s = make_field(spec.p, spec.f, spec.e, spec.twist);
  int eT = A.ram_index();
  if (eT % s.e != 0 || A.unram_degree() % s.f != 0)
    throw ConfigError("ambient field too small for " + s.to_string());
  std::int64_t qT = A.residue_size();
  std::int64_t sE = (qT - 1) / (s.residue_size() - 1);
  std::int64_t m = eT / s.e;
  std::int64_t step = (qT - 1) / eT;
  std::int64_t j = -1;
  for (std::int64_t t = 0; t < qT - 1; ++t) {
    if (static_cast<__int128>(s.e) * t % (qT - 1) == static_cast<__int128>(s.twist) * sE % (qT - 1)) {
      j = t;
      break;
    }
  }
  if (j < 0) throw ConfigError("twist not realizable in ambient field");
  std::vector<GalId> h;
  for (GalId g = 0; g < A.group_order(); ++g) {
    int a = A.gal_frob(g);
    if (a % s.f != 0) continue;
    std::int64_t pw = powmod(A.p(), a, qT - 1);
    std::int64_t tw = mod_floor(static_cast<std::int64_t>(A.gal_inertia(g)) * m % eT * step, qT - 1);
    if ((static_cast<__int128>(j) * pw + tw) % (qT - 1) == j) h.push_back(g);
  }
  auto K = Field::fixed_field(amb, h);
  if (K->degree() != s.degree() || K->e() != s.e) throw std::logic_error("embedding has wrong degree");
  return K;
}

FieldPtr base_field(const AmbientPtr& amb) {
  std::vector<GalId> all(amb->group_order());
  std::iota(all.begin(), all.end(), 0);
  return Field::fixed_field(amb, all);
}

FieldIsoClass Field::iso_class() const {
  std::int64_t g = std::gcd<std::int64_t>(e_, q_ - 1);
  std::int64_t best = mod_floor(twist_, g);
  std::int64_t c = best;
  for (int i = 0; i < f_ * 2 + 2; ++i) {
    c = c * p() % g;
    best = std::min(best, c);
  }
  return {f_, e_, static_cast<long>(best)};
}

bool Field::fixes(GalId g) const { return std::binary_search(group_.begin(), group_.end(), g); }

bool Field::contains(const Elem& x) const {
  for (GalId g : generators_)
    if (!(amb_->apply(g, x) - x).is_zero()) return false;
  return true;
}

RootOfUnity Field::psi(const Elem& x) const {
  return amb_->psi_of_trace(x, static_cast<std::int64_t>(group_.size()));
}

std::string Field::to_string() const {
  std::ostringstream os;
  os << "K(f=" << f_ << ",e=" << e_ << ",c=" << twist_ << ",|H|=" << group_.size() << ")";
  return os.str();
}

bool is_subfield(const Field& small, const Field& big) {
  if (small.ambient_ptr() != big.ambient_ptr()) return false;
  return std::includes(small.subgroup().begin(), small.subgroup().end(), big.subgroup().begin(),
                       big.subgroup().end());
}

std::vector<FieldPtr> subfields(const Field& k) {
  const Ambient& A = k.ambient();
  std::set<std::vector<GalId>> seen{k.subgroup()};
  std::vector<std::vector<GalId>> queue{k.subgroup()};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto cur = queue[i];
    for (GalId g = 0; g < A.group_order(); ++g) {
      if (std::binary_search(cur.begin(), cur.end(), g)) continue;
      auto gens = cur;
      gens.push_back(g);
      auto s = subgroup_closure(A, gens);
      if (seen.insert(s).second) queue.push_back(s);
    }
  }
  std::vector<FieldPtr> out;
  for (const auto& s : seen) out.push_back(Field::fixed_field(k.ambient_ptr(), s));
  std::sort(out.begin(), out.end(), [](const FieldPtr& a, const FieldPtr& b) {
    if (a->degree() != b->degree()) return a->degree() < b->degree();
    return a->subgroup() < b->subgroup();
  });
  return out;
}

FieldPtr compositum(const Field& a, const Field& b) {
  if (a.ambient_ptr() != b.ambient_ptr()) throw std::invalid_argument("fields in different ambients");
  std::vector<GalId> both;
  std::set_intersection(a.subgroup().begin(), a.subgroup().end(), b.subgroup().begin(),
                        b.subgroup().end(), std::back_inserter(both));
  return Field::fixed_field(a.ambient_ptr(), both);
}

FieldPtr intersection(const Field& a, const Field& b) {
  auto gens = a.subgroup();
  gens.insert(gens.end(), b.subgroup().begin(), b.subgroup().end());
  return Field::fixed_field(a.ambient_ptr(), subgroup_closure(a.ambient(), gens));
}

FieldPtr conjugate_field(GalId g, const Field& k) {
  return Field::fixed_field(k.ambient_ptr(), conjugate_subgroup(k.ambient(), g, k.subgroup()));
}

Elem norm(const Elem& x, const Field& k, const Field& l) {
  if (!is_subfield(l, k)) throw std::invalid_argument("norm target is not a subfield");
  Elem r = x.ambient().from_int(1);
  for (GalId g : coset_reps(x.ambient(), l.subgroup(), k.subgroup())) r = r * x.ambient().apply(g, x);
  return r;
}

Elem trace(const Elem& x, const Field& k, const Field& l) {
  if (!is_subfield(l, k)) throw std::invalid_argument("trace target is not a subfield");
  Elem r = x.ambient().zero(x.prec());
  for (GalId g : coset_reps(x.ambient(), l.subgroup(), k.subgroup())) r = r + x.ambient().apply(g, x);
  return r;
}

std::vector<GalId> embeddings(const Field& k) {
  std::vector<GalId> all(k.ambient().group_order());
  std::iota(all.begin(), all.end(), 0);
  return coset_reps(k.ambient(), all, k.subgroup());
}

std::vector<Elem> conjugates(const Elem& x, const Field& k) {
  std::vector<Elem> out;
  for (GalId g : embeddings(k)) out.push_back(k.ambient().apply(g, x));
  return out;
}

std::vector<Elem> char_poly(const Elem& x, const Field& k) {
  const Ambient& A = k.ambient();
  std::vector<Elem> poly{A.from_int(1)};
  for (const Elem& r : conjugates(x, k)) {
    std::vector<Elem> next(poly.size() + 1, A.zero(A.full_prec()));
    for (std::size_t d = 0; d < poly.size(); ++d) {
      next[d + 1] = next[d + 1] + poly[d];
      next[d] = next[d] - poly[d] * r;
    }
    poly = std::move(next);
  }
  return poly;
}

Elem poly_eval(const std::vector<Elem>& coeffs, const Elem& x) {
  Elem r = x.ambient().zero(x.ambient().full_prec());
  for (std::size_t i = coeffs.size(); i-- > 0;) r = r * x + coeffs[i];
  return r;
}

std::vector<TensorFactor> tensor_decompose(const Field& e, const Field& l) {
  const Ambient& A = e.ambient();
  std::set<GalId> covered;
  std::vector<TensorFactor> out;
  for (GalId g = 0; g < A.group_order(); ++g) {
    if (covered.count(g)) continue;
    for (GalId h : l.subgroup())
      for (GalId h2 : e.subgroup()) covered.insert(A.compose(A.compose(h, g), h2));
    auto conj = conjugate_subgroup(A, g, e.subgroup());
    std::vector<GalId> both;
    std::set_intersection(conj.begin(), conj.end(), l.subgroup().begin(), l.subgroup().end(),
                          std::back_inserter(both));
    out.push_back({g, Field::fixed_field(e.ambient_ptr(), both)});
  }
  return out;
}

TeichmullerParts teichmuller_decompose(const Elem& x, const Field& k) {
  const Ambient& A = k.ambient();
  if (x.is_zero()) throw std::domain_error("Teichmueller decomposition of zero");
  std::int64_t v = x.val();
  int m = k.pi_step();
  if (v % m != 0) throw std::domain_error("valuation not in the value group of the field");
  std::int64_t a = v / m;
  Elem y = x * k.uniformizer_inverse().pow(a);
  std::int64_t n = A.residue_log(y);
  std::int64_t step = k.zeta_step();
  if (n % step != 0) throw std::domain_error("residue outside the residue field of the field");
  Elem u = y * A.zeta_pow(-n);
  return {a, n / step, u};
}

namespace {

int floor_log(std::int64_t n, int p) {
  int r = 0;
  while (n >= p) {
    n /= p;
    ++r;
  }
  return r;
}

}  // namespace

Elem log_principal(const Elem& u, std::int64_t upto) {
  const Ambient& A = u.ambient();
  Elem x = u - A.from_int(1);
  if (x.is_zero()) return A.zero(std::min(upto, x.prec()));
  std::int64_t vx = x.val();
  if (vx < 1) throw std::domain_error("logarithm of a non-principal unit");
  int eT = A.ram_index();
  Elem sum = A.zero(A.full_prec() + upto);
  Elem power = x;
  // Past n_end every term has valuation >= upto.
  double knee = eT / (static_cast<double>(vx) * std::log(static_cast<double>(A.p())));
  std::int64_t n_end = 1;
  while (n_end <= knee || n_end * vx - static_cast<std::int64_t>(eT) * floor_log(n_end, A.p()) < upto) ++n_end;
  for (std::int64_t n = 1; n < n_end; ++n) {
    if (n > 1) power = power * x;
    Elem term = power.div_int(n);
    sum = (n % 2 == 1) ? sum + term : sum - term;
  }
  if (sum.prec() < upto) throw PrecisionError("logarithm lost precision");
  return sum.with_prec(upto);
}

namespace {

void check_regime(const Field& k, std::int64_t depth_units) {
  if (k.p() <= depth_units + k.e())
    throw ConfigError("strongly tame regime p > e*d + e violated");
}

}  // namespace

Elem trunc_log(const Elem& u, const Field& k, std::int64_t depth_units) {
  check_regime(k, depth_units);
  std::int64_t upto = (depth_units + 1) * k.pi_step();
  return log_principal(u, upto).truncated_below(upto);
}

Elem trunc_exp(const Elem& x, const Field& k, std::int64_t depth_units) {
  check_regime(k, depth_units);
  const Ambient& A = k.ambient();
  std::int64_t upto = (depth_units + 1) * k.pi_step();
  Elem one = A.from_int(1);
  if (x.is_zero()) return one;
  std::int64_t vx = x.val();
  if (vx < k.pi_step()) throw std::domain_error("exponential of a non-topologically-nilpotent element");
  Elem sum = one;
  Elem term = one;
  int eT = A.ram_index();
  std::int64_t vfact = 0;
  for (std::int64_t n = 1;; ++n) {
    std::int64_t t = n;
    while (t % A.p() == 0) {
      t /= A.p();
      ++vfact;
    }
    if (n * vx - eT * vfact >= upto && n * vx - eT * n / (A.p() - 1) >= upto) break;
    term = (term * x).div_int(n);
    sum = sum + term;
  }
  if (sum.prec() < upto) throw PrecisionError("exponential lost precision");
  return sum.with_prec(upto).truncated_below(upto);
}

}  // namespace tame
