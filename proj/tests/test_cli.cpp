#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args) {
  const fs::path out = fs::temp_directory_path() / ("diskpath_cli_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = std::string(DISKPATH_CLI) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  CliRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(out);
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("diskpath_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    line_ = (dir_ / "line.txt").string();
    ASSERT_EQ(cli("gen --kind line --n 4 --spacing 1,2,3 --variant unit-unweighted --output " + line_).code, 0);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
  std::string line_;
};

TEST_F(Cli, DecideExitCodes) {
  const CliRun yes = cli("decide --input " + line_ + " --source 0 --target 3 --k 3 --r 3");
  EXPECT_EQ(yes.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(yes.out)["feasible"].get<bool>());
  EXPECT_EQ(cli("decide --input " + line_ + " --source 0 --target 3 --k 3 --r 2").code, 1);

  const std::string bad = (dir_ / "bad.txt").string();
  std::ofstream(bad) << "diskpath-instance 2\n0 0 0\n1 oops 0\n";
  EXPECT_EQ(cli("decide --input " + bad + " --variant unit-unweighted --source 0 --target 1 --k 1 --r 1").code, 2);
  EXPECT_EQ(cli("decide --input " + line_ + " --source 0 --target 9 --k 3 --r 3").code, 2);
  EXPECT_EQ(cli("decide --input " + line_ + " --source 0 --target 3 --w 3 --r 3").code, 2);
  EXPECT_EQ(cli("decide --input " + line_ + " --source 0 --target 3 --k 3").code, 2);
}

TEST_F(Cli, SolveReportAndPlot) {
  const std::string svg = (dir_ / "plot.svg").string();
  const CliRun r = cli("solve --input " + line_ + " --source 0 --target 3 --k 3 --check-oracle --plot " + svg);
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["r_star"].get<double>(), 3.0);
  EXPECT_EQ(j["oracle_check"], "passed");
  EXPECT_EQ(j["path"], nlohmann::json::array({0, 2, 3}));
  EXPECT_TRUE(j.contains("stats"));
  // Keys come out sorted.
  std::string prev;
  for (auto it = j.begin(); it != j.end(); ++it) {
    EXPECT_LT(prev, it.key());
    prev = it.key();
  }
  std::ifstream in(svg);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  std::size_t circles = 0;
  for (auto p = text.find("<circle"); p != std::string::npos; p = text.find("<circle", p + 1)) ++circles;
  EXPECT_EQ(circles, 4u);

  EXPECT_EQ(cli("solve --input " + line_ + " --source 0 --target 3 --k 0").code, 1);
  const CliRun self = cli("solve --input " + line_ + " --source 1 --target 1 --k 0");
  EXPECT_EQ(self.code, 0);
  EXPECT_EQ(nlohmann::json::parse(self.out)["r_star"].get<double>(), 0.0);
  EXPECT_EQ(cli("solve --input " + line_ + " --variant unit-weighted --source 0 --target 3 --w 6 --params L=1,X=1,Y=2").code, 0);
  EXPECT_EQ(cli("solve --input " + line_ + " --source 0 --target 3 --k 3 --params Q=1").code, 2);
}

TEST_F(Cli, GenDeterminismAndErrors) {
  EXPECT_EQ(cli("gen --n 100 --seed 7").out, cli("gen --n 100 --seed 7").out);
  EXPECT_EQ(cli("gen --kind clusters --clusters 0 --n 10").code, 2);
  EXPECT_EQ(cli("gen --kind spiral --n 10").code, 2);
}

TEST_F(Cli, BenchCsv) {
  const CliRun r = cli("bench --variant disks-unweighted --sizes 40,80 --seeds 2");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "n,seed,wall_ms,decision_calls,bifurcations,phases,value");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    int commas = 0;
    for (char c : line) commas += c == ',';
    EXPECT_EQ(commas, 6);
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(cli("bench --variant disks-unweighted --seeds 2").code, 2);
}

}  // namespace
