#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "tamegamma/errors.hpp"
#include "tamegamma/report.hpp"
#include "tamegamma/scenarios.hpp"

namespace {

using namespace tame;

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kPrecision = 3 };

struct FamilyFlags {
  std::optional<int> max_dim, max_order, unif_roots, leads;
  std::optional<std::string> max_depth;

  void attach(CLI::App& app) {
    app.add_option("--max-dim", max_dim, "Largest twist dimension in the test family");
    app.add_option("--max-depth", max_depth, "Largest twist depth (rational, e.g. 3/2)");
    app.add_option("--max-order", max_order, "Bound on the order of a twist on roots of unity and the uniformizer");
    app.add_option("--unif-roots", unif_roots, "Twist values on the uniformizer range over these roots of unity");
    app.add_option("--leads", leads, "Leading coefficients per depth for wild twists (0 = all)");
  }
  bool any() const { return max_dim || max_order || unif_roots || leads || max_depth; }
  void apply(FamilyBounds& b) const {
    if (max_dim) b.max_dim = *max_dim;
    if (max_order) b.max_order = *max_order;
    if (unif_roots) b.unif_roots = *unif_roots;
    if (leads) b.leads_per_depth = *leads;
    if (max_depth) {
      mpq_class d;
      if (d.set_str(*max_depth, 10) != 0) throw ConfigError("bad --max-depth '" + *max_depth + "'");
      d.canonicalize();
      b.max_depth = d;
    }
  }
};

GroupTag parse_group(const std::string& s) {
  if (s == "Sp") return GroupTag::Sp;
  if (s == "SO_odd") return GroupTag::SO_odd;
  if (s == "SO_even") return GroupTag::SO_even;
  throw ConfigError("group must be Sp, SO_odd or SO_even");
}

Parity parse_parity(const std::string& s) {
  if (s == "orthogonal") return Parity::orthogonal;
  if (s == "symplectic") return Parity::symplectic;
  throw ConfigError("parity must be orthogonal or symplectic");
}

std::vector<std::int64_t> split_ints(const std::string& s, char sep) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      out.push_back(std::stoll(item));
    } catch (const std::exception&) {
      throw ConfigError("expected integers in '" + s + "'");
    }
  }
  return out;
}

// A character given on the command line: field "f,e,c", uniformizer value "k/n",
// tame exponent, and wild part "a:m,..." meaning sum zeta_E^a pi_E^{-m}.
struct CharFlags {
  std::string field = "1,1,0";
  std::string unif = "0/1";
  std::int64_t tame = 0;
  std::string wild;

  void attach(CLI::App& app, const std::string& who) {
    app.add_option("--" + who + "-field", field, "Field f,e,c: pi^e = zeta^c p, residue degree f");
    app.add_option("--" + who + "-unif", unif, "Value on the uniformizer as k/n");
    app.add_option("--" + who + "-tame", tame, "Exponent t of the value exp(2 pi i t/(q-1)) on zeta");
    app.add_option("--" + who + "-wild", wild, "Wild part as a:m terms zeta^a pi^-m, comma separated");
  }

  TameFieldSpec spec(int p) const {
    auto v = split_ints(field, ',');
    if (v.size() != 3) throw ConfigError("field must be f,e,c");
    return make_field(p, static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<long>(v[2]));
  }

  MultChar build(const AmbientPtr& amb) const {
    FieldPtr k = embed(amb, spec(amb->p()));
    auto u = split_ints(unif, '/');
    if (u.size() != 2 || u[1] <= 0) throw ConfigError("uniformizer value must be k/n");
    Elem w = amb->zero(amb->full_prec());
    std::stringstream ss(wild);
    std::string term;
    while (std::getline(ss, term, ',')) {
      auto am = split_ints(term, ':');
      if (am.size() != 2 || am[1] <= 0) throw ConfigError("wild terms must be a:m with m > 0");
      w += k->zeta_gen().pow(am[0]) * k->uniformizer_inverse().pow(am[1]);
    }
    return MultChar(k, RootOfUnity(u[0], u[1]), tame, w);
  }
};

int finish(const VerificationReport& rep, const std::string& out, bool json) {
  if (!out.empty()) write_report(out, rep);
  if (json)
    std::cout << report_json(rep).dump(2) << '\n';
  else
    std::cout << report_summary(rep);
  return rep.passed() ? kPass : kFail;
}

int run(int argc, char** argv) {
  CLI::App app{"Exact checks of twisted gamma factors for tame Langlands parameters"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML or INI file with option defaults");

  int p = 0, digits = 0;
  std::uint64_t seed = 1;
  std::string out;
  bool json = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--p", p, "Residue characteristic")->envname("TAMEGAMMA_P");
    sub->add_option("--digits", digits, "p-adic working precision (0 = largest that fits)")->envname("TAMEGAMMA_DIGITS");
    sub->add_option("--seed", seed, "Random seed")->envname("TAMEGAMMA_SEED");
    sub->add_option("--out", out, "Write the JSON report here");
    sub->add_flag("--json", json, "Print the JSON report instead of the summary");
  };

  // verify
  CLI::App* verify = app.add_subcommand("verify", "Verify one scenario");
  ScenarioConfig cfg;
  std::string group = "Sp", parity = "orthogonal";
  FamilyFlags vfam;
  verify->add_option("scenario", cfg.scenario, "Scenario name")
      ->required()
      ->check(CLI::IsMember(scenario_names()));
  add_common(verify);
  verify->add_option("--N", cfg.n, "Rank N");
  verify->add_option("--M", cfg.order, "Order M (so2n)");
  verify->add_option("--group", group, "Sp, SO_odd or SO_even (cusp)");
  verify->add_option("--parity", parity, "orthogonal or symplectic (better)");
  verify->add_option("--beta", cfg.beta, "ramakrishnan representing element: paper (pi^-10 + pi^-7) or default (pi^-6 + pi^-5)");
  verify->add_flag("--perturb", cfg.perturb, "Negative control: break one hypothesis");
  verify->add_flag("--serial", cfg.serial, "Use the single-threaded gamma comparison");
  vfam.attach(*verify);

  // gamma
  CLI::App* gamma = app.add_subcommand("gamma", "Gamma factor of Ind chi twisted by tau");
  CharFlags chi_flags, tau_flags;
  add_common(gamma);
  chi_flags.attach(*gamma, "chi");
  tau_flags.attach(*gamma, "tau");

  // family
  CLI::App* family = app.add_subcommand("family", "Dump the test family");
  FamilyFlags ffam;
  add_common(family);
  ffam.attach(*family);

  // selftest
  CLI::App* self = app.add_subcommand("selftest", "Property suites");
  std::string suite_name = "all";
  std::size_t instances = 120;
  add_common(self);
  self->add_option("--suite", suite_name, "exact, fields, factors, tbeta, basic or all")
      ->check(CLI::IsMember({"exact", "fields", "factors", "tbeta", "basic", "all"}));
  self->add_option("--instances", instances, "Random instances for the gamma product criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  if (verify->parsed()) {
    cfg.p = p;
    cfg.digits = digits;
    cfg.seed = seed;
    cfg.group = parse_group(group);
    cfg.parity = parse_parity(parity);
    if (vfam.any()) {
      ScenarioConfig base = cfg;
      apply_defaults(base);
      cfg.family = base.family;
      vfam.apply(cfg.family);
      cfg.family_set = true;
    }
    return finish(run_scenario(cfg), out, json);
  }

  if (gamma->parsed()) {
    if (!p) p = 5;
    AmbientPtr amb = ambient_for(p, {chi_flags.spec(p), tau_flags.spec(p)}, digits);
    MultChar chi = chi_flags.build(amb), tau = tau_flags.build(amb);
    GammaProduct g = gamma_induced_twist(chi, tau);
    nlohmann::ordered_json j{{"chi", character_json(chi)},
                             {"tau", character_json(tau)},
                             {"lambdas", g.lambdas.to_string()},
                             {"gamma", g.factor.to_string()}};
    std::cout << j.dump(2) << '\n';
    return kPass;
  }

  if (family->parsed()) {
    if (!p) p = 5;
    FamilyBounds b;
    ffam.apply(b);
    AmbientPtr amb = scenario_ambient(p, {}, b.max_dim, digits);
    TestFamily fam = build_test_family(amb, b);
    nlohmann::ordered_json j{{"p", p}, {"bounds", b.to_string()}, {"count", fam.members.size()}};
    auto members = nlohmann::ordered_json::array();
    for (const auto& m : fam.members) members.push_back(character_json(m));
    j["members"] = std::move(members);
    std::cout << j.dump(2) << '\n';
    return kPass;
  }

  // selftest
  VerificationReport rep;
  if (suite_name == "exact") rep = exact_arithmetic_suite(seed);
  else if (suite_name == "fields") rep = field_suite(seed);
  else if (suite_name == "factors") rep = local_factor_suite(seed);
  else if (suite_name == "tbeta") rep = t_beta_suite(seed);
  else if (suite_name == "basic") rep = basic_criterion_suite(seed, instances);
  else rep = selftest(seed);
  return finish(rep, out, json);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tame::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const tame::PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << '\n';
    return kPrecision;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  }
}
