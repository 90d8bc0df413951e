// One PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "tamegamma/errors.hpp"
#include "tamegamma/scenarios.hpp"

using namespace tame;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string failed_checks(const VerificationReport& rep) {
  std::string s;
  for (const auto& c : rep.checks)
    if (!c.passed) s += (s.empty() ? "" : "; ") + c.name + (c.witness.empty() ? "" : " [" + c.witness + "]");
  return s;
}

Outcome all_pass(const VerificationReport& rep) {
  if (rep.passed()) return {true, std::to_string(rep.checks.size()) + " checks"};
  return {false, failed_checks(rep)};
}

bool check_passed(const VerificationReport& rep, const std::string& name) {
  const Check* c = rep.find(name);
  return c && c->passed;
}

std::string witness(const VerificationReport& rep, const std::string& name) {
  const Check* c = rep.find(name);
  return c ? c->witness : "missing check '" + name + "'";
}

VerificationReport scenario(const std::string& name, int p, int n = 0, int order = 0) {
  ScenarioConfig cfg;
  cfg.scenario = name;
  cfg.p = p;
  cfg.n = n;
  cfg.order = order;
  return run_scenario(cfg);
}

// Scenario run whose report must pass and carry the named checks.
Outcome scenario_with(const VerificationReport& rep, const std::vector<std::string>& required) {
  Outcome o = all_pass(rep);
  for (const auto& name : required)
    if (!check_passed(rep, name)) {
      o.ok = false;
      o.detail += "; required check '" + name + "' not passed";
    }
  return o;
}

int cli_exit(const std::string& args, const std::filesystem::path& out) {
  std::string cmd = "\"" TAMEGAMMA_CLI "\" " + args + " --out " + out.string() + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= limit_seconds) {
    o.ok = false;
    o.detail += "; over the time limit";
  }
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << std::setw(2) << id << ": " << title << " (" << std::fixed
            << std::setprecision(2) << secs << " s of " << limit_seconds << " s) " << o.detail << std::endl;
}

}  // namespace

int main() {
  const std::uint64_t seed = 20240601;

  criterion(1, "exact cyclotomic arithmetic", 5, [&] { return all_pass(exact_arithmetic_suite(seed)); });
  criterion(2, "fields: Teichmueller, log/exp, tensor degrees", 30, [&] { return all_pass(field_suite(seed)); });
  criterion(3, "local factors: Gauss sums, epsilon magnitude, gamma ratios", 60,
            [&] { return all_pass(local_factor_suite(seed)); });
  criterion(4, "gamma products agree with the character-value criterion", 300, [&] {
    BasicInstanceStats s = random_basic_instances(120, seed);
    Outcome o{s.instances >= 100 && s.inconsistent == 0,
              std::to_string(s.instances) + " instances, " + std::to_string(s.lhs_equal) + " equal, " +
                  std::to_string(s.inconsistent) + " inconsistent"};
    if (!s.failures.empty()) o.detail += "; first " + s.failures.front();
    return o;
  });
  criterion(5, "t_beta: r = 2 against sampling, lower bound 1/M", 60, [&] { return all_pass(t_beta_suite(seed)); });

  criterion(6, "noncusp (N, p) = (3, 5)", 60, [&] {
    auto rep = scenario("noncusp", 5, 3);
    Outcome o = scenario_with(rep, {"gamma-equivalent to level N-1", "pairs inequivalent and non-dual"});
    o.detail += "; " + witness(rep, "gamma-equivalent to level N-1");
    return o;
  });
  criterion(7, "cusp, Sp_8 at p = 5", 300, [&] {
    auto rep = scenario("cusp", 5, 4);
    Outcome o = scenario_with(rep, {"gamma-equivalent to level M-1", "standard compositions inequivalent",
                                    "determinant condition", "standard composition", "standard composition (primed)"});
    o.detail += "; " + witness(rep, "gamma-equivalent to level M-1");
    return o;
  });
  criterion(8, "better bound at (N, p) = (4, 13)", 300, [&] {
    auto rep = scenario("better", 13, 4);
    Outcome o = scenario_with(rep, {"gamma-equivalent to level M-2", "pairs inequivalent", "exponent m",
                                    "least r with r m = +-1 mod 2N"});
    bool m5 = witness(rep, "exponent m") == "m = 5";
    bool r3 = witness(rep, "least r with r m = +-1 mod 2N") == "r = 3";
    if (!m5 || !r3) o.ok = false;
    o.detail += "; " + witness(rep, "exponent m") + ", " + witness(rep, "least r with r m = +-1 mod 2N");
    return o;
  });
  criterion(9, "SO_6 example at p = 7", 60, [&] {
    auto rep = scenario("so6", 7);
    Outcome o = scenario_with(rep, {"wedge3 halves agree over L", "not equal to its outer conjugate", "determinant condition"});
    o.detail += "; " + witness(rep, "wedge3 halves agree over L");
    return o;
  });
  criterion(10, "SO_2N outer equivalence at (N, M, p) = (4, 9, 7)", 30, [&] {
    return scenario_with(scenario("so2n", 7, 4, 9), {"outer-equivalent", "not SO-conjugate"});
  });
  criterion(11, "G_2 at p = 5, both field branches", 300, [&] {
    auto rep = scenario("g2", 5);
    return scenario_with(rep, {"PGL3 determinant", "pairs inequivalent up to duality", "gamma-equivalent to level 2"});
  });
  criterion(12, "Ramakrishnan counterexample at p = 13, beta = pi^-10 + pi^-7", 300, [&] {
    ScenarioConfig cfg;
    cfg.scenario = "ramakrishnan";
    cfg.p = 13;
    cfg.beta = "paper";
    auto rep = run_scenario(cfg);
    return scenario_with(rep, {"beta quasi-minimal", "rho_chi not isomorphic to rho_chi'", "wedge1 twisted gammas",
                               "wedge2 equality", "wedge3 twisted gammas", "wedge4 equality"});
  });

  criterion(13, "negative controls exit 1 with a named failing check", 600, [&] {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / ("tamegamma_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::pair<std::string, std::string>> runs{
        {"noncusp", "verify noncusp --N 3 --p 5"}, {"cusp", "verify cusp --N 4 --p 5"},
        {"better", "verify better --N 4 --p 13"},   {"so6", "verify so6 --p 7"},
        {"so2n", "verify so2n --N 4 --M 9 --p 7"},  {"g2", "verify g2 --p 5"},
        {"ramakrishnan", "verify ramakrishnan --p 13 --beta paper"}};
    Outcome o{true, ""};
    for (const auto& [name, args] : runs) {
      fs::path out = dir / (name + ".json");
      int code = cli_exit(args + " --perturb", out);
      std::string first = "none";
      if (fs::exists(out)) {
        std::ifstream in(out);
        auto j = nlohmann::ordered_json::parse(in);
        for (const auto& c : j["checks"])
          if (c["verdict"] == "fail") {
            first = c["name"].get<std::string>();
            break;
          }
      }
      if (code != 1 || first == "none") o.ok = false;
      o.detail += name + ": exit " + std::to_string(code) + " (" + first + "); ";
    }
    fs::remove_all(dir);
    return o;
  });

  std::cout << (failures ? "FAILED " : "ALL PASSED ") << 13 - failures << "/13" << std::endl;
  return failures ? 1 : 0;
}
