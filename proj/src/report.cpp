#include "tamegamma/report.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "scenario_util.hpp"

namespace tame {

nlohmann::ordered_json character_json(const MultChar& chi) { return detail::char_json(chi); }

nlohmann::ordered_json report_json(const VerificationReport& rep) {
  nlohmann::ordered_json j;
  j["scenario"] = rep.scenario;
  j["config"] = rep.config;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    nlohmann::ordered_json cj{{"name", c.name}, {"claim", c.claim}, {"verdict", c.passed ? "pass" : "fail"}};
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["verdict"] = rep.passed() ? "pass" : "fail";
  j["data"] = rep.data;
  j["timing"] = {{"seconds", rep.seconds}};
  return j;
}

void write_report(const std::filesystem::path& path, const VerificationReport& rep) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot open " + tmp.string());
    out << report_json(rep).dump(2) << '\n';
    out.flush();
    if (!out) throw std::system_error(errno, std::generic_category(), "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string report_summary(const VerificationReport& rep) {
  std::ostringstream os;
  for (const auto& c : rep.checks) {
    os << (c.passed ? "pass  " : "FAIL  ") << c.name;
    if (!c.witness.empty()) os << "  [" << c.witness << "]";
    os << '\n';
  }
  os << rep.scenario << ": " << (rep.passed() ? "pass" : "FAIL") << " (" << rep.checks.size() << " checks)\n";
  return os.str();
}

}  // namespace tame
