#include "tamegamma/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>

#include "scenario_util.hpp"
#include "tamegamma/errors.hpp"

namespace tame {

bool VerificationReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

Check& VerificationReport::add(std::string name, std::string claim, bool ok, std::string witness) {
  checks.push_back({std::move(name), std::move(claim), ok, std::move(witness)});
  return checks.back();
}

namespace detail {

nlohmann::ordered_json char_json(const MultChar& c) {
  return {{"field", c.field()->spec().to_string()},
          {"unif", c.unif().to_string()},
          {"tame", c.tame()},
          {"wild", c.wild().to_string()},
          {"depth", c.depth().get_str()}};
}

nlohmann::ordered_json rep_json(const WeilRep& r) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& s : r.summands()) {
    auto j = char_json(s.chi);
    j["sl2"] = s.sl2_dim;
    out.push_back(std::move(j));
  }
  return out;
}

nlohmann::ordered_json config_json(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j{{"scenario", cfg.scenario}, {"p", cfg.p}, {"N", cfg.n}};
  if (cfg.scenario == "so2n") j["M"] = cfg.order;
  if (cfg.scenario == "cusp") j["group"] = to_string(cfg.group);
  if (cfg.scenario == "better") j["parity"] = to_string(cfg.parity);
  if (cfg.scenario == "ramakrishnan") j["beta"] = cfg.beta;
  j["digits"] = cfg.digits;
  j["family"] = {{"max_dim", cfg.family.max_dim},
                 {"max_depth", cfg.family.max_depth.get_str()},
                 {"max_order", cfg.family.max_order},
                 {"unif_roots", cfg.family.unif_roots},
                 {"leads_per_depth", cfg.family.leads_per_depth}};
  j["seed"] = cfg.seed;
  j["perturb"] = cfg.perturb;
  return j;
}

void require_odd_prime(int p) {
  if (p < 3) throw ConfigError("p must be an odd prime");
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) throw ConfigError("p must be an odd prime");
}

void record_equivalence(VerificationReport& rep, const std::string& name, const std::string& claim,
                        const WeilRep& a, const WeilRep& b, int level, const TestFamily& family, bool serial) {
  GammaEquivReport g = serial ? gamma_equiv_level_serial(a, b, level, family)
                              : gamma_equiv_level(a, b, level, family);
  std::string w = std::to_string(g.tested) + " twists: " + std::to_string(g.equal) + " equal, " +
                  std::to_string(g.not_equal) + " not equal, " + std::to_string(g.indeterminate) +
                  " indeterminate";
  if (g.witness) w += "; first mismatch " + g.witness->to_string();
  rep.add(name, claim, g.summary == Verdict::Equal && g.tested > 0, w);
}

void record_basic2(VerificationReport& rep, const PairData& data, int r) {
  Basic2Report b = prop_basic2_conditions(data, r);
  std::string ts;
  for (const auto& t : b.t) ts += (ts.empty() ? "" : ",") + t.get_str();
  rep.add("criterion: agree on U^t", "each chi_i, chi'_i agree on U^{t_beta_i(r)}, r = " + std::to_string(r),
          b.restriction_ok, "t = " + ts);
  rep.add("criterion: beta product", "prod chi_i(beta_i) = prod chi'_i(beta_i)", b.beta_product_ok);
  rep.add("criterion: restriction to F^x", "prod chi_i|F^x = prod chi'_i|F^x", b.base_restriction_ok);
}

GalId involution_over(const Field& k, const Field& l) {
  const Ambient& amb = k.ambient();
  for (GalId g = 0; g < amb.group_order(); ++g)
    if (l.fixes(g) && !k.fixes(g)) {
      GalId g2 = amb.compose(g, g);
      if (k.fixes(g2)) return g;
    }
  throw ConfigError("no involution of " + k.to_string() + " over " + l.to_string());
}

FieldPtr subfield_of_degree(const Field& k, int degree) {
  for (const auto& s : subfields(k))
    if (s->degree() == degree) return s;
  throw ConfigError("no subfield of degree " + std::to_string(degree));
}

WeilRep rep_of(std::initializer_list<MultChar> chars) {
  WeilRep r;
  for (const auto& c : chars) r.add(c);
  return r;
}

bool try_compose(VerificationReport& rep, const std::string& name, GroupTag g, int n, const WeilRep& r) {
  try {
    std_compose(g, n, r);
    rep.add(name, "dimension, self-duality, parity and determinant fit the dual group of " + to_string(g), true);
    return true;
  } catch (const ConfigError& e) {
    rep.add(name, "dimension, self-duality, parity and determinant fit the dual group of " + to_string(g), false,
            e.what());
    return false;
  }
}

std::string parity_of(const MultChar& chi) {
  auto sd = is_self_dual(chi);
  return sd ? to_string(sd->parity) : "not self-dual";
}

}  // namespace detail

using namespace detail;

void apply_defaults(ScenarioConfig& cfg) {
  const auto& s = cfg.scenario;
  FamilyBounds fb;
  if (s == "noncusp") {
    if (!cfg.p) cfg.p = 5;
    if (!cfg.n) cfg.n = 3;
    fb.max_dim = cfg.n - 1;
    fb.max_depth = 2;
    fb.max_order = 24;
    fb.unif_roots = 24;
  } else if (s == "cusp") {
    if (!cfg.p) cfg.p = 5;
    if (!cfg.n) cfg.n = 4;
    fb.max_dim = 2 * (cfg.n / 2) - 1;
    fb.max_depth = 1;
    fb.max_order = 12;
    fb.unif_roots = 4;
    fb.leads_per_depth = 6;
  } else if (s == "better") {
    if (!cfg.p) cfg.p = 13;
    if (!cfg.n) cfg.n = 4;
    fb.max_dim = std::max(1, 2 * (cfg.n / 2) - 2);
    fb.max_depth = 1;
    fb.max_order = 12;
    fb.unif_roots = 4;
    fb.leads_per_depth = 6;
  } else if (s == "so6") {
    if (!cfg.p) cfg.p = 7;
    if (!cfg.n) cfg.n = 3;
    fb.max_dim = 1;
  } else if (s == "so2n") {
    if (!cfg.p) cfg.p = 7;
    if (!cfg.n) cfg.n = 4;
    if (!cfg.order) cfg.order = 9;
    fb.max_dim = 1;
  } else if (s == "g2") {
    if (!cfg.p) cfg.p = 5;
    if (!cfg.n) cfg.n = 3;
    fb.max_dim = 2;
    fb.max_depth = 1;
    fb.max_order = 12;
    fb.unif_roots = 12;
  } else if (s == "ramakrishnan") {
    if (!cfg.p) cfg.p = 13;
    if (!cfg.n) cfg.n = 4;
    fb.max_dim = 1;
    fb.max_depth = 3;
    fb.max_order = 12;
    fb.unif_roots = 12;
  } else if (s == "selftest") {
    return;
  } else {
    throw ConfigError("unknown scenario '" + s + "'");
  }
  if (!cfg.family_set) cfg.family = fb;
}

VerificationReport build_noncusp(const ScenarioConfig& cfg) {
  const int n = cfg.n, p = cfg.p;
  require_odd_prime(p);
  if (n < 2) throw ConfigError("need N >= 2");
  if (p <= n) throw ConfigError("need p > N");
  VerificationReport rep;
  rep.scenario = "noncusp";
  rep.config = config_json(cfg);

  const TameFieldSpec spec = make_field(p, 1, n, 0);
  AmbientPtr amb = scenario_ambient(p, {spec}, cfg.family.max_dim, cfg.digits);
  FieldPtr e = embed(amb, spec);
  FieldPtr f = base_field(amb);
  Elem beta = e->uniformizer_inverse();
  MultChar chi(e, RootOfUnity::one(), 1, beta);
  MultChar chi_p(e, RootOfUnity(1, 3), cfg.perturb ? 2 : 1, beta);

  WeilRep std1 = rep_of({chi, MultChar::trivial(f), chi.dual()});
  WeilRep std2 = rep_of({chi_p, MultChar::trivial(f), chi_p.dual()});
  rep.data = {{"chi", char_json(chi)},
              {"chi_prime", char_json(chi_p)},
              {"beta", beta.to_string()},
              {"std", rep_json(std1)},
              {"std_prime", rep_json(std2)}};

  rep.add("hypothesis: minimal totally ramified pairs", "both pairs are admissible, E/F totally ramified of degree N, beta minimal",
          is_admissible(chi) && is_admissible(chi_p) && e->e() == n && is_quasi_minimal(beta, *e));
  rep.add("hypothesis: agree on U_E", "chi and chi' coincide on the units of E", coincide_on_units(chi, chi_p, 0));
  rep.add("hypothesis: chi(-1) = chi'(-1)", "the sign condition behind the product criterion",
          chi(amb->from_int(-1)) == chi_p(amb->from_int(-1)));
  try_compose(rep, "standard composition", GroupTag::Sp, n, std1);
  try_compose(rep, "standard composition (primed)", GroupTag::Sp, n, std2);

  PairData data{{chi, chi.dual()}, {chi_p, chi_p.dual()}, {beta, -beta}};
  record_basic2(rep, data, n);

  TestFamily fam = build_test_family(amb, cfg.family);
  record_equivalence(rep, "gamma-equivalent to level N-1",
                     "gamma(s, std (x) tau) agree for every family twist of dimension <= N-1", std1, std2, n - 1, fam,
                     cfg.serial);

  bool ineq = !pair_equivalent(chi, chi_p) && !pair_equivalent(chi, chi_p.dual()) && !rep_equivalent(std1, std2);
  rep.add("pairs inequivalent and non-dual", "(E, chi') is equivalent to neither (E, chi) nor (E, chi^-1)", ineq);

  // A dimension-N twist separating the two parameters.
  std::string sep;
  for (const auto& tau : {chi.dual(), chi_p.dual(), chi, chi_p}) {
    auto [a, b] = cancel_common(std1, std2);
    if (gamma_equal(gamma_rep_twist(a, tau), gamma_rep_twist(b, tau)) == Verdict::NotEqual) {
      sep = tau.to_string();
      break;
    }
  }
  rep.add("separated at level N", "some dimension-N twist distinguishes the parameters", !sep.empty(), sep);
  return rep;
}

namespace {

Parity dual_parity(GroupTag g) {
  switch (g) {
    case GroupTag::Sp: return Parity::orthogonal;
    case GroupTag::SO_odd: return Parity::symplectic;
    case GroupTag::SO_even: return Parity::orthogonal;
    default: throw ConfigError("group must be Sp, SO_odd or SO_even");
  }
}

MultChar sign_on_uniformizer(const MultChar& chi) {
  return MultChar(chi.field(), chi.unif() * RootOfUnity(1, 2), chi.tame(), chi.wild());
}

// Self-dual pair on the unramified quadratic extension of the wanted parity, smallest order first.
MultChar unramified_base_pair(const FieldPtr& e0, Parity want) {
  std::int64_t q = e0->p();
  for (std::int64_t k = 1; k <= q + 1; ++k)
    for (int s = 0; s < 2; ++s) {
      MultChar c(e0, RootOfUnity(s, 2), (q - 1) * k, e0->ambient().zero(e0->ambient().full_prec()));
      if (!is_admissible(c)) continue;
      auto sd = is_self_dual(c);
      if (sd && sd->parity == want) return c;
    }
  throw ConfigError("no unramified self-dual pair of parity " + to_string(want));
}

}  // namespace

VerificationReport build_cusp(const ScenarioConfig& cfg) {
  const int n = cfg.n, p = cfg.p;
  require_odd_prime(p);
  if (n < 2) throw ConfigError("need N >= 2");
  if (p <= n) throw ConfigError("need p > N");
  const Parity want = dual_parity(cfg.group);
  const int m = 2 * (n / 2);
  VerificationReport rep;
  rep.scenario = "cusp";
  rep.config = config_json(cfg);

  const TameFieldSpec spec = make_field(p, 1, m, 0);
  const TameFieldSpec spec0 = make_field(p, 2, 1, 0);
  AmbientPtr amb = scenario_ambient(p, {spec, spec0}, cfg.family.max_dim, cfg.digits);
  FieldPtr e = embed(amb, spec);
  FieldPtr f = base_field(amb);
  FieldPtr l = subfield_of_degree(*e, m / 2);
  GalId sigma = involution_over(*e, *l);
  // One common depth m0/M: the product criterion needs it, so chi_2 is told apart
  // from chi_1 by a lower-order term of its representing element.
  int m0 = 3;
  while (std::gcd(m0, m) != 1) m0 += 2;
  Elem beta1 = e->uniformizer_inverse().pow(m0);

  std::vector<MultChar> cands;
  for (int branch = 0; branch < 2; ++branch) {
    XiFamilyOptions o;
    o.parity = want;
    o.max_count = 16;
    o.unif_branch = branch;
    for (auto& c : xi_beta_family(e, sigma, beta1, o)) cands.push_back(c);
  }
  std::optional<MultChar> chi0;
  if (n % 2 == 1) chi0 = unramified_base_pair(embed(amb, spec0), want);
  MultChar target = chi0 ? det_induced(*chi0) : MultChar::trivial(f);
  std::optional<std::pair<MultChar, MultChar>> chosen;
  const MultChar& first = cands.front();
  for (std::size_t i = 1; i < cands.size() && !chosen; ++i) {
    const MultChar& b = cands[i];
    if (pair_equivalent(first, b) || pair_equivalent(first, sign_on_uniformizer(b))) continue;
    if (want == Parity::symplectic || det_induced(first) * det_induced(b) == target) chosen.emplace(first, b);
  }
  if (!chosen) throw ConfigError("no pair of self-dual characters meets the determinant condition");
  const MultChar& chi1 = chosen->first;
  const MultChar& chi2 = chosen->second;
  Elem beta2 = chi2.wild();
  MultChar chi1p = sign_on_uniformizer(chi1);
  MultChar chi2p = cfg.perturb ? chi2 : sign_on_uniformizer(chi2);

  auto compose = [&](const MultChar& a, const MultChar& b) {
    WeilRep r;
    bool orthogonal_group = cfg.group != GroupTag::Sp;
    if (!orthogonal_group) r.add(n % 2 == 0 ? det_induced(a) * det_induced(b) : MultChar::trivial(f));
    if (chi0) r.add(*chi0);
    r.add(a).add(b);
    return r;
  };
  WeilRep std1 = compose(chi1, chi2), std2 = compose(chi1p, chi2p);
  rep.data = {{"chi1", char_json(chi1)}, {"chi2", char_json(chi2)}, {"chi1_prime", char_json(chi1p)},
              {"chi2_prime", char_json(chi2p)}, {"beta1", beta1.to_string()}, {"beta2", beta2.to_string()},
              {"std", rep_json(std1)}, {"std_prime", rep_json(std2)}};
  if (chi0) rep.data["chi0"] = char_json(*chi0);

  bool parity_ok = true;
  std::string parities;
  for (const auto& c : {chi1, chi2, chi1p, chi2p}) {
    auto sd = is_self_dual(c);
    parity_ok = parity_ok && sd && sd->parity == want && is_admissible(c);
    parities += parity_of(c) + " ";
  }
  rep.add("hypothesis: self-dual pairs of the dual group's parity",
          "all four characters are admissible and self-dual of parity " + to_string(want), parity_ok, parities);
  rep.add("hypothesis: minimal totally ramified of degree M", "beta_i of odd valuation in pi_E, E/F totally ramified",
          e->e() == m && is_quasi_minimal(beta1, *e) && is_quasi_minimal(beta2, *e));
  rep.add("hypothesis: common depth", "chi_1, chi_2 have the same depth, of least denominator M",
          chi1.depth() == chi2.depth() && chi1.depth().get_den() == m, "d = " + chi1.depth().get_str());
  rep.add("sign flip on beta", "chi_i(beta_i) = -chi'_i(beta_i)",
          chi1(beta1) == chi1p(beta1) * RootOfUnity(1, 2) && chi2(beta2) == chi2p(beta2) * RootOfUnity(1, 2));
  bool det_ok = want == Parity::symplectic || det_induced(chi1) * det_induced(chi2) == target;
  rep.add("determinant condition", "omega_1 omega_2 is trivial (N even) or omega_chi0 (N odd) when the dual group is orthogonal",
          det_ok);
  rep.add("hypothesis: distinct pairs", "(E, chi1) is equivalent to neither (E, chi2) nor (E, chi2')",
          !pair_equivalent(chi1, chi2) && !pair_equivalent(chi1, chi2p));
  try_compose(rep, "standard composition", cfg.group, n, std1);
  try_compose(rep, "standard composition (primed)", cfg.group, n, std2);

  PairData data{{chi1, chi2}, {chi1p, chi2p}, {beta1, beta2}};
  record_basic2(rep, data, m);
  TestFamily fam = build_test_family(amb, cfg.family);
  record_equivalence(rep, "gamma-equivalent to level M-1",
                     "gamma(s, std (x) tau) agree for every family twist of dimension <= M-1", std1, std2, m - 1, fam,
                     cfg.serial);
  rep.add("standard compositions inequivalent", "std o phi and std o phi' are not isomorphic",
          !rep_equivalent(std1, std2));
  return rep;
}

VerificationReport build_better(const ScenarioConfig& cfg) {
  const int n = cfg.n, p = cfg.p;
  require_odd_prime(p);
  if (n < 2) throw ConfigError("need N >= 2");
  if (p <= n) throw ConfigError("need p > N");
  const int big_m = 2 * (n / 2);
  const int m = better_exponent(n);
  VerificationReport rep;
  rep.scenario = "better";
  rep.config = config_json(cfg);

  const TameFieldSpec spec = make_field(p, 1, 2 * n, 0);
  AmbientPtr amb = scenario_ambient(p, {spec}, cfg.family.max_dim, cfg.digits);
  FieldPtr e = embed(amb, spec);
  FieldPtr l = subfield_of_degree(*e, n);
  GalId sigma = involution_over(*e, *l);
  Elem beta = e->uniformizer_inverse().pow(m);

  std::vector<MultChar> cands;
  for (int branch = 0; branch < 2; ++branch) {
    XiFamilyOptions o;
    o.parity = cfg.parity;
    o.max_count = static_cast<std::size_t>(p);
    o.unif_branch = branch;
    for (auto& c : xi_beta_family(e, sigma, beta, o)) cands.push_back(c);
  }
  const MultChar& chi = cands.front();
  mpq_class agree_level(1, n);  // U^{(1/2N)+} = U^{2/(2N)}
  std::optional<MultChar> chi_p;
  for (std::size_t i = 1; i < cands.size() && !chi_p; ++i) {
    const auto& c = cands[i];
    bool same_beta = chi(beta) == c(beta);
    if (same_beta != cfg.perturb && coincide_on_units(chi, c, agree_level) && !pair_equivalent(chi, c)) chi_p = c;
  }
  if (!chi_p) throw ConfigError("no second character represented by beta with the required agreement");

  WeilRep r1 = rep_of({chi}), r2 = rep_of({*chi_p});
  rep.data = {{"chi", char_json(chi)}, {"chi_prime", char_json(*chi_p)}, {"beta", beta.to_string()}, {"m", m}};

  rep.add("exponent m", "m is odd and d = m/(2N) has least denominator 2N",
          m % 2 == 1 && std::gcd(m, 2 * n) == 1, "m = " + std::to_string(m));
  int r = least_r_unit_multiple(m, 2 * n);
  rep.add("least r with r m = +-1 mod 2N", "the congruence gives r = M - 1", r == big_m - 1,
          "r = " + std::to_string(r));
  TBetaReport tb = t_beta(beta, big_m - 1);
  std::mt19937_64 rng(cfg.seed);
  TBetaReport ts = t_beta_sampled(beta, *e, big_m - 1, 500, rng);
  rep.add("t_beta(M-1) > 1/(2N)", "congruence bound exceeds 1/(2N) and no sample falls below it",
          tb.bound > mpq_class(1, 2 * n) && ts.bound >= tb.bound,
          "congruence " + tb.bound.get_str() + ", sampled infimum " + ts.bound.get_str());
  bool sd_ok = true;
  for (const auto& c : {chi, *chi_p}) {
    auto sd = is_self_dual(c);
    sd_ok = sd_ok && sd && sd->parity == cfg.parity && is_admissible(c);
  }
  rep.add("hypothesis: self-dual of the given parity", "both characters are admissible and self-dual of parity " +
          to_string(cfg.parity), sd_ok);
  rep.add("hypothesis: agree on U^{(1/2N)+}", "chi, chi' coincide past the first jump", coincide_on_units(chi, *chi_p, agree_level));
  rep.add("hypothesis: chi(beta) = chi'(beta)", "values on the representing element agree", chi(beta) == (*chi_p)(beta));

  PairData data{{chi}, {*chi_p}, {beta}};
  record_basic2(rep, data, big_m - 1);
  TestFamily fam = build_test_family(amb, cfg.family);
  record_equivalence(rep, "gamma-equivalent to level M-2",
                     "gamma(s, rho (x) tau) agree for every family twist of dimension <= M-2", r1, r2,
                     std::max(1, big_m - 2), fam, cfg.serial);
  rep.add("pairs inequivalent", "rho_chi and rho_chi' are not isomorphic", !pair_equivalent(chi, *chi_p));
  return rep;
}

std::vector<std::string> scenario_names() {
  return {"noncusp", "cusp", "better", "so6", "so2n", "g2", "ramakrishnan"};
}

VerificationReport run_scenario(ScenarioConfig cfg) {
  static const std::map<std::string, std::function<VerificationReport(const ScenarioConfig&)>> table{
      {"noncusp", build_noncusp}, {"cusp", build_cusp},   {"better", build_better},
      {"so6", build_so6},         {"so2n", build_so2n},   {"g2", build_g2},
      {"ramakrishnan", build_ramakrishnan}};
  auto it = table.find(cfg.scenario);
  if (it == table.end()) throw ConfigError("unknown scenario '" + cfg.scenario + "'");
  apply_defaults(cfg);
  auto start = std::chrono::steady_clock::now();
  VerificationReport rep = it->second(cfg);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace tame
