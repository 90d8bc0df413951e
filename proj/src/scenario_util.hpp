#pragma once

// Helpers shared by the scenario builders.

#include <initializer_list>
#include <string>

#include "tamegamma/scenarios.hpp"

namespace tame::detail {

nlohmann::ordered_json char_json(const MultChar& c);
nlohmann::ordered_json rep_json(const WeilRep& r);
nlohmann::ordered_json config_json(const ScenarioConfig& cfg);

void require_odd_prime(int p);
void record_equivalence(VerificationReport& rep, const std::string& name, const std::string& claim,
                        const WeilRep& a, const WeilRep& b, int level, const TestFamily& family, bool serial);
void record_basic2(VerificationReport& rep, const PairData& data, int r);

GalId involution_over(const Field& k, const Field& l);
FieldPtr subfield_of_degree(const Field& k, int degree);
WeilRep rep_of(std::initializer_list<MultChar> chars);
bool try_compose(VerificationReport& rep, const std::string& name, GroupTag g, int n, const WeilRep& r);
std::string parity_of(const MultChar& chi);

}  // namespace tame::detail
