#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kFixtures{QOSCOMP_FIXTURE_DIR};

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = std::string(QOSCOMP_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) r.out.append(buffer.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string fixture_args(const std::string& name) {
  const auto dir = kFixtures / name;
  return "--registry " + (dir / "registry.csv").string() + " --plan " + (dir / "plan.json").string() +
         " --taxonomy " + (dir / "taxonomy.txt").string() + " --config " + (dir / "config.json").string();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("qoscomp_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Cli, ComposeIsDeterministic) {
  const auto first = run("compose " + fixture_args("travel"));
  ASSERT_EQ(first.status, 0);
  EXPECT_NE(first.out.find("\"aggregate_score\""), std::string::npos);
  EXPECT_NE(first.out.find("geo_cheap"), std::string::npos);
  EXPECT_EQ(run("compose " + fixture_args("travel")).out, first.out);
}

TEST(Cli, SingleFixtureHasNoAlternative) {
  const auto r = run("compose " + fixture_args("single"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"alternative\": null"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("compose " + fixture_args("disjoint")).status, 29);
  EXPECT_EQ(run("compose --registry /nonexistent.csv --plan x --taxonomy y --config z").status, 2);
  EXPECT_EQ(run("compose").status, 1);
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("compose " + fixture_args("travel") + " --bins 1").status, 37);  // InvalidConfig
}

TEST(Cli, ClassifyPrintsRules) {
  const auto dir = kFixtures / "travel";
  const auto r = run("classify --registry " + (dir / "registry.csv").string() + " --config " +
                     (dir / "config.json").string());
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("DEFAULT "), std::string::npos);
}

TEST(Cli, ReplaceAgainstSavedReport) {
  const auto dir = scratch("replace");
  const auto report = (dir / "report.json").string();
  ASSERT_EQ(run("compose " + fixture_args("travel") + " --out " + report).status, 0);
  const auto r = run("replace " + fixture_args("travel") + " --report " + report +
                     " --task BookFlight --service fly_d");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"replacement\""), std::string::npos);
  EXPECT_EQ(run("replace " + fixture_args("travel") + " --report " + report +
                " --task BookFlight --service fly_a")
                .status,
            31);
  fs::remove_all(dir);
}

TEST(Cli, GenerateThenCompose) {
  const auto dir = scratch("generate");
  ASSERT_EQ(run("generate --tasks 4 --candidates 10 --seed 3 --out " + dir.string()).status, 0);
  for (const char* f : {"registry.csv", "plan.json", "taxonomy.txt", "config.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const std::string args = "--registry " + (dir / "registry.csv").string() + " --plan " +
                           (dir / "plan.json").string() + " --taxonomy " + (dir / "taxonomy.txt").string() +
                           " --config " + (dir / "config.json").string();
  EXPECT_EQ(run("compose " + args).status, 0);
  const auto registry = slurp(dir / "registry.csv");
  ASSERT_EQ(run("generate --tasks 4 --candidates 10 --seed 3 --out " + dir.string()).status, 0);
  EXPECT_EQ(slurp(dir / "registry.csv"), registry);
  fs::remove_all(dir);
}

TEST(Cli, BenchWritesCsv) {
  const auto r = run("bench --task-grid 2,3 --candidate-grid 10,12 --reps 1");
  ASSERT_EQ(r.status, 0);
  std::istringstream in(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
  EXPECT_EQ(r.out.rfind("tasks,candidates,", 0), 0u);
}
