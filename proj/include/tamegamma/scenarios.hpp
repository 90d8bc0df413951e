#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tamegamma/constructions.hpp"

namespace tame {

struct Check {
  std::string name;
  std::string claim;  // what the check establishes
  bool passed = false;
  std::string witness;
};

struct VerificationReport {
  std::string scenario;
  nlohmann::ordered_json config;
  nlohmann::ordered_json data;  // the constructed objects, enough to rebuild them
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const;
  const Check* find(const std::string& name) const;
  Check& add(std::string name, std::string claim, bool passed, std::string witness = {});
};

struct ScenarioConfig {
  std::string scenario;
  int p = 0;        // 0: scenario default
  int n = 0;        // rank N; 0: scenario default
  int order = 0;    // M for so2n
  GroupTag group = GroupTag::Sp;
  Parity parity = Parity::orthogonal;
  std::string beta = "paper";  // ramakrishnan: "paper" is pi^-10 + pi^-7, "default" pi^-6 + pi^-5
  int digits = 0;
  FamilyBounds family;
  bool family_set = false;  // family bounds given explicitly
  std::uint64_t seed = 1;
  bool perturb = false;     // negative control: break one hypothesis
  bool serial = false;      // use the single-threaded gamma comparison
};

// Fills scenario defaults (p, N, family bounds) in place.
void apply_defaults(ScenarioConfig& cfg);

// Each builder validates the regime (throwing ConfigError), constructs the data,
// and records hypothesis and conclusion checks.
VerificationReport build_noncusp(const ScenarioConfig& cfg);
VerificationReport build_cusp(const ScenarioConfig& cfg);
VerificationReport build_better(const ScenarioConfig& cfg);
VerificationReport build_so6(const ScenarioConfig& cfg);
VerificationReport build_so2n(const ScenarioConfig& cfg);
VerificationReport build_g2(const ScenarioConfig& cfg);
VerificationReport build_ramakrishnan(const ScenarioConfig& cfg);

// std o phi for the biquadratic SO_6 configuration: chi_1 on the unramified quadratic
// extension, chi_2 and chi_3 ramified orthogonal of distinct positive depths.
WeilRep so6_parameter(const MultChar& chi1, const MultChar& chi2, const MultChar& chi3);

// Order of the finite part (tame and uniformizer values) of chi, times p if chi is wild.
std::int64_t character_order(const MultChar& chi);

std::vector<std::string> scenario_names();
VerificationReport run_scenario(ScenarioConfig cfg);

// Property suites behind the `selftest` subcommand; each check is one property.
VerificationReport exact_arithmetic_suite(std::uint64_t seed);
VerificationReport field_suite(std::uint64_t seed);
VerificationReport local_factor_suite(std::uint64_t seed);
VerificationReport t_beta_suite(std::uint64_t seed);
VerificationReport basic_criterion_suite(std::uint64_t seed, std::size_t instances = 120);
// All of the above in one report.
VerificationReport selftest(std::uint64_t seed);

// Randomized instances of the character-value criterion for twisted gamma products.
struct BasicInstanceStats {
  std::size_t instances = 0;
  std::size_t inconsistent = 0;
  std::size_t lhs_equal = 0;
  std::vector<std::string> failures;
};
BasicInstanceStats random_basic_instances(std::size_t count, std::uint64_t seed);

}  // namespace tame
