#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + "\"" TAMEGAMMA_CLI "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("tamegamma_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::ordered_json load(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::ordered_json::parse(in);
}

}  // namespace

TEST(Cli, CongruenceViolationIsConfigError) { EXPECT_EQ(run_cli("verify so6 --p 5"), 2); }

TEST(Cli, UnknownScenarioIsConfigError) { EXPECT_EQ(run_cli("verify nonsense"), 2); }

TEST(Cli, EnvironmentSuppliesPrime) {
  EXPECT_EQ(run_cli("verify so6", "TAMEGAMMA_P=5"), 2);
  EXPECT_EQ(run_cli("verify so6", "TAMEGAMMA_P=7"), 0);
}

TEST(Cli, ConfigFileSuppliesOptions) {
  fs::path cfg = scratch("so6.toml");
  std::ofstream(cfg) << "[verify]\np = 5\n";
  EXPECT_EQ(run_cli("--config " + cfg.string() + " verify so6"), 2);
}

TEST(Cli, NoncuspPassesAndWritesReport) {
  fs::path out = scratch("noncusp.json");
  ASSERT_EQ(run_cli("verify noncusp --N 3 --p 5 --max-dim 1 --out " + out.string()), 0);
  auto j = load(out);
  EXPECT_EQ(j["scenario"], "noncusp");
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_TRUE(j["data"].contains("chi"));
  for (const auto& c : j["checks"]) {
    EXPECT_TRUE(c.contains("name"));
    EXPECT_TRUE(c.contains("claim"));
    EXPECT_EQ(c["verdict"], "pass") << c["name"];
  }
}

TEST(Cli, ReportsAreReproducible) {
  fs::path a = scratch("a.json"), b = scratch("b.json");
  ASSERT_EQ(run_cli("verify so2n --seed 4 --out " + a.string()), 0);
  ASSERT_EQ(run_cli("verify so2n --seed 4 --out " + b.string()), 0);
  auto ja = load(a), jb = load(b);
  ja.erase("timing");
  jb.erase("timing");
  EXPECT_EQ(ja.dump(), jb.dump());
  EXPECT_FALSE(fs::exists(a.string() + ".tmp." + std::to_string(::getpid())));
}

TEST(Cli, NegativeControlExitsOne) {
  fs::path out = scratch("so2n_perturbed.json");
  EXPECT_EQ(run_cli("verify so2n --perturb --out " + out.string()), 1);
  EXPECT_EQ(load(out)["verdict"], "fail");
}

TEST(Cli, RegimeViolationIsConfigError) { EXPECT_EQ(run_cli("verify noncusp --N 5 --p 5"), 2); }

TEST(Cli, GammaAndFamilySubcommands) {
  EXPECT_EQ(run_cli("gamma --p 5 --chi-field 1,3,0 --chi-tame 1 --chi-wild 0:1 --tau-unif 1/4"), 0);
  EXPECT_EQ(run_cli("gamma --p 5 --chi-field 1,5,0"), 2);
  EXPECT_EQ(run_cli("family --p 5 --max-dim 1 --max-depth 1"), 0);
}

TEST(Cli, SelftestSuite) { EXPECT_EQ(run_cli("selftest --suite exact"), 0); }
