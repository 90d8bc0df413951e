#include "tamegamma/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "tamegamma/errors.hpp"

namespace tame {

std::vector<TameFieldSpec> tame_specs_up_to(int p, int max_degree) {
  std::vector<TameFieldSpec> out;
  for (int f = 1; f <= max_degree; ++f)
    for (int e = 1; e * f <= max_degree; ++e) {
      if (e % p == 0) continue;
      std::int64_t q = 1;
      for (int i = 0; i < f; ++i) q *= p;
      long g = std::gcd<std::int64_t, std::int64_t>(e, q - 1);
      // Frobenius identifies twist t with p*t.
      std::set<long> seen;
      for (long t = 0; t < g; ++t) {
        if (seen.count(t)) continue;
        long u = t;
        do {
          seen.insert(u);
          u = (u * p) % g;
        } while (!seen.count(u));
        out.push_back(make_field(p, f, e, t));
      }
    }
  return out;
}

std::string FamilyBounds::to_string() const {
  std::ostringstream os;
  os << "dim<=" << max_dim << " depth<=" << max_depth.get_str() << " order<=" << max_order
     << " unif_roots=" << unif_roots << " leads=" << (leads_per_depth ? std::to_string(leads_per_depth) : "all");
  return os.str();
}

std::size_t TestFamily::count_of_dim(int d) const {
  return static_cast<std::size_t>(
      std::count_if(members.begin(), members.end(), [d](const MultChar& m) { return m.field()->degree() == d; }));
}

namespace {

std::int64_t order_mod(std::int64_t k, std::int64_t n) { return n / std::gcd(k, n); }

std::vector<GalId> automorphisms(const FieldPtr& l) {
  const Ambient& amb = l->ambient();
  std::vector<GalId> out;
  for (GalId g = 0; g < amb.group_order(); ++g)
    if (*conjugate_field(g, *l) == *l) out.push_back(g);
  return out;
}

// Keeps eta only if its printed form is the least in its Galois orbit.
bool orbit_leader(const MultChar& eta, const std::vector<GalId>& autos) {
  std::string me = eta.to_string();
  for (GalId g : autos) {
    MultChar c = conj_by(g, eta);
    if (c.to_string() < me) return false;
  }
  return true;
}

}  // namespace

AmbientPtr scenario_ambient(int p, std::vector<TameFieldSpec> fields, int family_dim, int digits) {
  for (const auto& s : tame_specs_up_to(p, family_dim)) fields.push_back(s);
  return ambient_for(p, fields, digits);
}

TestFamily build_test_family(const AmbientPtr& amb, const FamilyBounds& bounds) {
  TestFamily fam;
  fam.bounds = bounds;
  for (const auto& spec : tame_specs_up_to(amb->p(), bounds.max_dim)) {
    FieldPtr l = embed(amb, spec);
    auto autos = automorphisms(l);
    std::int64_t q = l->residue_size();
    std::vector<Elem> wilds{amb->zero(amb->full_prec())};
    mpq_class jmax_q = bounds.max_depth * l->e();
    std::int64_t jmax = mpz_class(jmax_q.get_num() / jmax_q.get_den()).get_si();
    for (std::int64_t j = 1; j <= jmax; ++j) {
      std::int64_t leads = q - 1;
      if (bounds.leads_per_depth > 0) leads = std::min<std::int64_t>(leads, bounds.leads_per_depth);
      for (std::int64_t a = 0; a < leads; ++a)
        wilds.push_back(amb->zeta_pow(a * l->zeta_step()) * l->uniformizer_inverse().pow(j));
    }
    for (const auto& w : wilds)
      for (std::int64_t t = 0; t < q - 1; ++t) {
        std::int64_t ot = order_mod(t, q - 1);
        if (ot > bounds.max_order) continue;
        for (int k = 0; k < bounds.unif_roots; ++k) {
          std::int64_t ou = order_mod(k, bounds.unif_roots);
          if (std::lcm(ot, ou) > bounds.max_order) continue;
          MultChar eta(l, RootOfUnity(k, bounds.unif_roots), t, w);
          if (!is_admissible(eta)) continue;
          if (!orbit_leader(eta, autos)) continue;
          fam.members.push_back(std::move(eta));
        }
      }
  }
  return fam;
}

std::pair<WeilRep, WeilRep> cancel_common(const WeilRep& a, const WeilRep& b) {
  std::vector<InducedSummand> left = a.summands(), right = b.summands();
  for (auto it = left.begin(); it != left.end();) {
    auto jt = std::find_if(right.begin(), right.end(), [&](const InducedSummand& s) {
      return s.sl2_dim == it->sl2_dim && *s.chi.field() == *it->chi.field() && s.chi == it->chi;
    });
    if (jt != right.end()) {
      right.erase(jt);
      it = left.erase(it);
    } else {
      ++it;
    }
  }
  return {WeilRep(std::move(left)), WeilRep(std::move(right))};
}

namespace {

GammaEquivReport summarize(const std::vector<Verdict>& verdicts, const std::vector<std::size_t>& idx,
                           const TestFamily& family, int level) {
  GammaEquivReport rep;
  rep.level = level;
  rep.tested = idx.size();
  for (std::size_t n = 0; n < idx.size(); ++n) {
    switch (verdicts[n]) {
      case Verdict::Equal: ++rep.equal; break;
      case Verdict::NotEqual: ++rep.not_equal; break;
      case Verdict::Indeterminate: ++rep.indeterminate; break;
    }
    if (verdicts[n] != Verdict::Equal && !rep.witness) rep.witness = family.members[idx[n]];
  }
  rep.summary = rep.not_equal ? Verdict::NotEqual : rep.indeterminate ? Verdict::Indeterminate : Verdict::Equal;
  return rep;
}

std::vector<std::size_t> members_up_to(const TestFamily& family, int level) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < family.members.size(); ++i)
    if (family.members[i].field()->degree() <= level) idx.push_back(i);
  return idx;
}

Verdict compare_at(const WeilRep& a, const WeilRep& b, const MultChar& tau) {
  return gamma_equal(gamma_rep_twist(a, tau), gamma_rep_twist(b, tau));
}

}  // namespace

GammaEquivReport gamma_equiv_level(const WeilRep& a, const WeilRep& b, int level, const TestFamily& family) {
  auto [ra, rb] = cancel_common(a, b);
  auto idx = members_up_to(family, level);
  std::vector<Verdict> verdicts(idx.size());
  const auto n = static_cast<std::int64_t>(idx.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) verdicts[i] = compare_at(ra, rb, family.members[idx[i]]);
  return summarize(verdicts, idx, family, level);
}

GammaEquivReport gamma_equiv_level_serial(const WeilRep& a, const WeilRep& b, int level,
                                          const TestFamily& family) {
  auto [ra, rb] = cancel_common(a, b);
  auto idx = members_up_to(family, level);
  std::vector<Verdict> verdicts;
  verdicts.reserve(idx.size());
  for (std::size_t i : idx) verdicts.push_back(compare_at(ra, rb, family.members[i]));
  return summarize(verdicts, idx, family, level);
}

int least_r_unit_multiple(int m, int n) {
  for (int r = 1; r <= n; ++r) {
    int v = ((r * m) % n + n) % n;
    if (v == 1 % n || v == (n - 1) % n) return r;
  }
  return 0;
}

int better_exponent(int n) {
  if (n % 2 == 0) return n + 1;
  int sign = ((n + 1) / 2) % 2 == 0 ? 1 : -1;
  return (3 * n + sign) / 2;
}

}  // namespace tame
