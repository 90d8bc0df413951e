// Builders for the orthogonal, G2 and exterior-power scenarios.

#include <algorithm>
#include <functional>
#include <numeric>
#include <tuple>

#include "scenario_util.hpp"
#include "tamegamma/errors.hpp"

namespace tame {

using namespace detail;

std::int64_t character_order(const MultChar& chi) {
  std::int64_t q1 = chi.field()->residue_size() - 1;
  std::int64_t n = std::lcm(chi.unif().order(), q1 / std::gcd(chi.tame(), q1));
  return chi.wild().is_zero() ? n : n * chi.field()->p();
}

WeilRep so6_parameter(const MultChar& chi1, const MultChar& chi2, const MultChar& chi3) {
  for (const auto* c : {&chi1, &chi2, &chi3})
    if (c->field()->degree() != 2) throw ConfigError("each character must live on a quadratic extension");
  if (chi1.field()->f() != 2) throw ConfigError("chi_1 must live on the unramified quadratic extension");
  if (chi2.field()->e() != 2 || chi3.field()->e() != 2 || *chi2.field() == *chi3.field())
    throw ConfigError("chi_2, chi_3 must live on the two distinct ramified quadratic extensions");
  if (chi2.depth() <= 0 || chi3.depth() <= 0) throw ConfigError("chi_2, chi_3 need positive depth");
  if (chi2.depth() == chi3.depth()) throw ConfigError("chi_2 and chi_3 have equal depth (degenerate input)");
  return rep_of({chi1, chi2, chi3});
}

namespace {

struct So6Data {
  AmbientPtr amb;
  FieldPtr f, l;
  MultChar chi1, chi2, chi3;
  WeilRep phi;
};

So6Data so6_data(int p, bool perturb, int family_dim, int digits) {
  require_odd_prime(p);
  if (p % 4 != 3) throw ConfigError("need p = 3 mod 4, got p = " + std::to_string(p));
  const TameFieldSpec s1 = make_field(p, 2, 1, 0), s2 = make_field(p, 1, 2, 0), s3 = make_field(p, 1, 2, 1);
  AmbientPtr amb = scenario_ambient(p, {s1, s2, s3, make_field(p, 2, 2, 0)}, family_dim, digits);
  FieldPtr e1 = embed(amb, s1), e2 = embed(amb, s2), e3 = embed(amb, s3);
  FieldPtr f = base_field(amb);
  FieldPtr l = compositum(*e1, *e2);
  if (!is_subfield(*e3, *l)) throw ConfigError("the three quadratic fields do not lie in one biquadratic field");
  std::int64_t q2 = e1->residue_size() - 1;
  // chi_1(zeta) = i on a generator of mu_{q^2-1}; the perturbed run uses an eighth root instead.
  MultChar chi1(e1, RootOfUnity::one(), perturb ? q2 / 8 : q2 / 4, amb->zero(amb->full_prec()));
  XiFamilyOptions o;
  o.parity = Parity::orthogonal;
  o.max_count = 1;
  MultChar chi2 = xi_beta_family(e2, involution_over(*e2, *f), e2->uniformizer_inverse(), o).front();
  MultChar chi3 = xi_beta_family(e3, involution_over(*e3, *f), e3->uniformizer_inverse().pow(3), o).front();
  WeilRep phi = so6_parameter(chi1, chi2, chi3);
  return {amb, f, l, chi1, chi2, chi3, phi};
}

std::string describe_failure(const std::function<bool()>& fn, bool& value) {
  try {
    value = fn();
    return {};
  } catch (const ConfigError& e) {
    value = false;
    return e.what();
  }
}

}  // namespace

VerificationReport build_so6(const ScenarioConfig& cfg) {
  So6Data d = so6_data(cfg.p, cfg.perturb, cfg.family.max_dim, cfg.digits);
  VerificationReport rep;
  rep.scenario = "so6";
  rep.config = config_json(cfg);
  rep.data = {{"chi1", char_json(d.chi1)}, {"chi2", char_json(d.chi2)}, {"chi3", char_json(d.chi3)},
              {"std", rep_json(d.phi)}};

  auto sd1 = is_self_dual(d.chi1);
  rep.add("chi_1 orthogonal of order 4", "chi_1 is admissible, orthogonal and of order 4",
          is_admissible(d.chi1) && sd1 && sd1->parity == Parity::orthogonal && character_order(d.chi1) == 4,
          parity_of(d.chi1) + ", order " + std::to_string(character_order(d.chi1)));
  bool ram_ok = true;
  for (const auto& c : {d.chi2, d.chi3}) {
    auto sd = is_self_dual(c);
    ram_ok = ram_ok && is_admissible(c) && sd && sd->parity == Parity::orthogonal;
  }
  rep.add("chi_2, chi_3 orthogonal of distinct depths", "ramified orthogonal admissible characters", ram_ok,
          "depths " + d.chi2.depth().get_str() + ", " + d.chi3.depth().get_str());
  MultChar chi1_l = inflate(d.chi1, d.l);
  rep.add("chi_1 over L is quadratic", "chi_1 o N_{L/E_1} has order 2", !chi1_l.is_trivial() && chi1_l.pow(2).is_trivial());
  MultChar det = rep_det(d.phi, d.f);
  rep.add("determinant condition", "the product of the three quadratic class characters is trivial", det.is_trivial(),
          det.to_string());
  try_compose(rep, "standard composition", GroupTag::SO_even, 3, d.phi);

  Wedge3Weights w = wedge3_pm({d.chi1, d.chi2, d.chi3}, d.l);
  rep.add("wedge3 halves agree over L", "the weights of wedge3_+ and wedge3_- on W_L agree as multisets",
          w.plus.size() == 10 && w.minus.size() == 10 && same_character_multiset(w.plus, w.minus),
          std::to_string(w.plus.size()) + " + " + std::to_string(w.minus.size()) + " weights");
  std::vector<MultChar> both = w.plus;
  both.insert(both.end(), w.minus.begin(), w.minus.end());
  rep.add("wedge3 weights split", "the 20 triple products split as the two halves",
          same_character_multiset(wedge3_weights({d.chi1, d.chi2, d.chi3}, d.l), both));
  bool outer = true;
  std::string why = describe_failure([&] { return is_outer_self_conjugate(d.phi); }, outer);
  rep.add("not equal to its outer conjugate", "the centralizer has no element of determinant -1",
          why.empty() && !outer, why);
  return rep;
}

VerificationReport build_so2n(const ScenarioConfig& cfg) {
  const int n = cfg.n, m = cfg.order;
  if (n < 3) throw ConfigError("need N >= 3");
  if (m <= 2 * n) throw ConfigError("need M > 2N");
  So6Data d = so6_data(cfg.p, false, cfg.family.max_dim, cfg.digits);
  for (const auto& c : {d.chi1, d.chi2, d.chi3}) {
    std::int64_t o = std::lcm<std::int64_t>(character_order(c), 2);
    if (std::gcd<std::int64_t>(o, m) != 1)
      throw ConfigError("M = " + std::to_string(m) + " shares a factor with the degree data (" + std::to_string(o) +
                        ")");
  }
  VerificationReport rep;
  rep.scenario = "so2n";
  rep.config = config_json(cfg);

  MultChar mu = unramified_character(d.f, RootOfUnity(1, m));
  WeilRep string;
  if (cfg.perturb) {
    string.add(MultChar::trivial(d.f)).add(unramified_character(d.f, RootOfUnity(1, 2)));
    for (int k = 2; k <= n - 3; ++k) string.add(mu.pow(k)).add(mu.pow(-k));
  } else {
    for (int k = 1; k <= n - 3; ++k) string.add(mu.pow(k)).add(mu.pow(-k));
  }
  WeilRep phi1 = d.phi;
  phi1.add(string);
  // The outer conjugate has the same composition with the standard representation.
  WeilRep phi2 = phi1;
  rep.data = {{"std", rep_json(phi1)}, {"std_outer", rep_json(phi2)}, {"mu", char_json(mu)}};

  try_compose(rep, "standard composition", GroupTag::SO_even, n, phi1);
  std::vector<int> exps;
  for (const auto& s : phi1.summands())
    if (s.dim() == 1) {
      const RootOfUnity& z = s.chi.unif();
      exps.push_back(m % z.den() ? -1 : static_cast<int>(((z.num() * (m / z.den())) % m + m) % m));
    }
  std::vector<int> want;
  for (int k = 1; k <= n - 3; ++k) {
    want.push_back(k % m);
    want.push_back((m - k) % m);
  }
  std::sort(exps.begin(), exps.end());
  std::sort(want.begin(), want.end());
  rep.add("diagonal string", "the one-dimensional part is mu^{+-1}, ..., mu^{+-(N-3)} with mu of order M",
          exps == want && mu.unif().order() == m);
  rep.add("outer-equivalent", "the two parameters agree up to the full orthogonal group", rep_equivalent(phi1, phi2));
  bool outer = true;
  std::string why = describe_failure([&] { return is_outer_self_conjugate(phi1); }, outer);
  rep.add("not SO-conjugate", "no self-dual odd-dimensional summand, so the centralizer lies in SO",
          why.empty() && !outer, why);
  return rep;
}

VerificationReport build_g2(const ScenarioConfig& cfg) {
  const int p = cfg.p;
  require_odd_prime(p);
  if (p <= 3) throw ConfigError("need p > 3");
  VerificationReport rep;
  rep.scenario = "g2";
  rep.config = config_json(cfg);

  auto make_pair = [&](int prime, bool perturb, int family_dim) {
    const TameFieldSpec spec = make_field(prime, 1, 3, 0);
    AmbientPtr amb = scenario_ambient(prime, {spec}, family_dim, cfg.digits);
    FieldPtr e = embed(amb, spec), f = base_field(amb);
    MultChar k = kappa(e, f);
    RootOfUnity zeta3(1, 3);
    RootOfUnity u2 = zeta3 * k.unif();
    if (perturb) u2 *= RootOfUnity(1, 2);
    MultChar chi1(e, k.unif(), k.tame(), e->uniformizer_inverse());
    MultChar chi2(e, u2, k.tame(), e->uniformizer_inverse());
    return std::tuple{amb, e, f, k, chi1, chi2};
  };
  auto [amb, e, f, k, chi1, chi2] = make_pair(p, cfg.perturb, cfg.family.max_dim);
  WeilRep std1 = rep_of({chi1, MultChar::trivial(f), chi1.dual()});
  WeilRep std2 = rep_of({chi2, MultChar::trivial(f), chi2.dual()});
  rep.data = {{"chi1", char_json(chi1)}, {"chi2", char_json(chi2)}, {"kappa", char_json(k)},
              {"std", rep_json(std1)}, {"std_prime", rep_json(std2)}};

  rep.add("restriction to F^x is kappa", "chi_i|F^x = kappa_{E/F} for both characters",
          restrict_to(chi1, f) == k && restrict_to(chi2, f) == k);
  rep.add("PGL3 determinant", "det rho_i is trivial", det_induced(chi1).is_trivial() && det_induced(chi2).is_trivial());
  rep.add("uniformizer values", "chi_2(pi_E) = zeta_3 chi_1(pi_E)",
          chi2(e->uniformizer()) == chi1(e->uniformizer()) * RootOfUnity(1, 3));
  rep.add("pairs inequivalent up to duality", "(E, chi_1) is equivalent to neither (E, chi_2) nor (E, chi_2^-1)",
          !pair_equivalent(chi1, chi2) && !pair_equivalent(chi1, chi2.dual()));
  rep.add("hypothesis: agree on U_E", "chi_1, chi_2 coincide on units", coincide_on_units(chi1, chi2, 0));
  try_compose(rep, "standard composition", GroupTag::G2, 3, std1);
  try_compose(rep, "standard composition (primed)", GroupTag::G2, 3, std2);
  TestFamily fam = build_test_family(amb, cfg.family);
  record_equivalence(rep, "gamma-equivalent to level 2",
                     "gamma(s, std (x) tau) agree for every family twist of dimension <= 2", std1, std2, 2, fam,
                     cfg.serial);

  // rho (x) rho^vee through Mackey, in this prime's branch and in the other one.
  auto tensor_check = [&](const MultChar& a, const MultChar& b, const FieldPtr& field) {
    WeilRep ra = rep_of({a}), rb = rep_of({b});
    WeilRep ta = tensor(ra, rep_dual(ra)), tb = tensor(rb, rep_dual(rb));
    bool galois = true;
    for (GalId g = 0; g < field->ambient().group_order(); ++g)
      if (!(*conjugate_field(g, *field) == *field)) galois = false;
    std::string shape;
    for (const auto& s : ta.summands()) shape += std::to_string(s.dim()) + " ";
    return std::tuple{rep_equivalent(ta, tb), galois, shape};
  };
  auto [same, galois, shape] = tensor_check(chi1, chi2, e);
  rep.add(galois ? "tensor identity (Galois cubic)" : "tensor identity (non-Galois cubic)",
          "rho_1 (x) rho_1^vee = rho_2 (x) rho_2^vee", same, "summand dimensions " + shape);
  const int other = galois ? 5 : 7;  // a prime of the opposite branch
  auto [amb2, e2, f2, k2, d1, d2] = make_pair(other, false, 1);
  auto [same2, galois2, shape2] = tensor_check(d1, d2, e2);
  rep.add(galois2 ? "tensor identity (Galois cubic)" : "tensor identity (non-Galois cubic)",
          "the same identity in the other branch, at p = " + std::to_string(other), same2 && galois2 != galois,
          "summand dimensions " + shape2);

  // wedge^2 rho = rho^vee, compared on the Galois closure.
  FieldPtr closure = Field::fixed_field(e->ambient_ptr(), {0});
  for (const auto& s : subfields(*closure))
    if (is_subfield(*e, *s) && s->degree() <= closure->degree()) {
      bool normal = true;
      for (GalId g = 0; g < s->ambient().group_order(); ++g)
        if (!(*conjugate_field(g, *s) == *s)) normal = false;
      if (normal) {
        closure = s;
        break;
      }
    }
  auto wedge2_vs_dual = [&](const MultChar& c) {
    auto w = restrict_rep(rep_of({c}), closure);
    std::vector<MultChar> pairs{w[0] * w[1], w[0] * w[2], w[1] * w[2]};
    std::vector<MultChar> dual{w[0].dual(), w[1].dual(), w[2].dual()};
    return same_character_multiset(pairs, dual);
  };
  rep.add("wedge2 of rho is rho dual", "on the Galois closure the weights of wedge^2 rho_i and rho_i^vee agree",
          wedge2_vs_dual(chi1) && wedge2_vs_dual(chi2), "closure " + closure->to_string());
  return rep;
}

VerificationReport build_ramakrishnan(const ScenarioConfig& cfg) {
  const int p = cfg.p;
  require_odd_prime(p);
  if (p <= 4) throw ConfigError("need p > 4 for a tame quartic");
  if (cfg.beta != "paper" && cfg.beta != "default") throw ConfigError("beta must be 'paper' or 'default'");
  VerificationReport rep;
  rep.scenario = "ramakrishnan";
  rep.config = config_json(cfg);

  const TameFieldSpec spec = make_field(p, 1, 4, 0);
  AmbientPtr amb = scenario_ambient(p, {spec}, cfg.family.max_dim, cfg.digits);
  FieldPtr e = embed(amb, spec), f = base_field(amb);
  const Elem& inv = e->uniformizer_inverse();
  Elem beta = cfg.beta == "paper" ? inv.pow(10) + inv.pow(7) : inv.pow(6) + inv.pow(5);
  MultChar chi(e, RootOfUnity(1, 5), 1, beta);
  MultChar eta = unramified_character(f, RootOfUnity(1, cfg.perturb ? 4 : 2));
  MultChar chi_p = chi * inflate(eta, e);
  rep.data = {{"chi", char_json(chi)}, {"chi_prime", char_json(chi_p)}, {"eta", char_json(eta)},
              {"beta", beta.to_string()}};

  rep.add("beta quasi-minimal", "the whole coset beta + P^{-d/2} generates E", is_quasi_minimal(beta, *e),
          "depth " + chi.depth().get_str());
  rep.add("pairs admissible", "(E, chi) and (E, chi') are admissible", is_admissible(chi) && is_admissible(chi_p));
  rep.add("rho_chi not isomorphic to rho_chi'", "the two pairs are inequivalent", !pair_equivalent(chi, chi_p));
  auto rel = unramified_twist_relating(chi, chi_p, 8);
  rep.add("unramified twist", "rho_chi' = rho_chi (x) eta for an unramified eta", rel.has_value(),
          rel ? "eta of order " + std::to_string(rel->unif().order()) : "");
  rep.add("agree on F^x", "chi|F^x = chi'|F^x", restrict_to(chi, f) == restrict_to(chi_p, f));
  rep.add("agree on beta", "chi(beta) = chi'(beta)", chi(beta) == chi_p(beta));

  PairData data{{chi}, {chi_p}, {beta}};
  record_basic2(rep, data, 2);
  TestFamily fam = build_test_family(amb, cfg.family);
  record_equivalence(rep, "wedge1 twisted gammas", "gamma(s, rho (x) tau) agree for every character tau in the family",
                     rep_of({chi}), rep_of({chi_p}), 1, fam, cfg.serial);
  rep.add("wedge2 equality", "rho_chi' = rho_chi (x) eta with eta^2 = 1, so the second exterior powers agree",
          wedge2_equal_via_twist(chi, chi_p, 8));
  record_equivalence(rep, "wedge3 twisted gammas",
                     "gamma(s, rho^vee (x) omega (x) tau) agree for every character tau in the family",
                     wedge3_4dim(chi), wedge3_4dim(chi_p), 1, fam, cfg.serial);
  rep.add("wedge4 equality", "det rho_chi = det rho_chi'", det_induced(chi) == det_induced(chi_p));
  record_equivalence(rep, "wedge4 twisted gammas", "gamma(s, det (x) tau) agree for every character tau in the family",
                     rep_of({det_induced(chi)}), rep_of({det_induced(chi_p)}), 1, fam, cfg.serial);
  return rep;
}

}  // namespace tame
