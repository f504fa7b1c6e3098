#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RADIUSLAB_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("radiuslab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    std::ofstream(dir_ / "j2.json") << R"({"n":2,"data":[[0,0],[1,0],[0,0],[0,0]]})";
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, RadiusOfJ2) {
  const auto r = run("radius " + path("j2.json"));
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("w 0.5\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("norm 1\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("apriori_error"), std::string::npos);
}

TEST_F(Cli, HermiteHadamardDemo) {
  const auto r = run("hh-demo --function power:2 --a 0 --b 1");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("mid 0.25\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("integral 0.33333333333333331\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("endavg 0.5\n"), std::string::npos) << r.out;
}

TEST_F(Cli, ChainPrintsResult) {
  const auto r = run("chain THM_MAIN " + path("j2.json") + " --function power:2");
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("\"THM_MAIN\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("0.3333333333333333"), std::string::npos) << r.out;
  EXPECT_EQ(run("chain TWO_OP_SUP " + path("j2.json")).status, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("radius --bogus " + path("j2.json")).status, 2);
  EXPECT_EQ(run("").status, 2);
  const auto empty = run("verify --chains \"\"");
  EXPECT_EQ(empty.status, 2) << empty.out;
  EXPECT_NE(empty.out.find("chains"), std::string::npos);
  EXPECT_EQ(run("verify --samples 0 --chains KITTANEH").status, 2);
  EXPECT_EQ(run("hh-demo --function cosine").status, 2);
}

TEST_F(Cli, VerifyWritesReportsAndTightnessReadsThem) {
  const auto csv = path("out.csv");
  const auto json = path("out.json");
  const auto r = run("verify --chains KITTANEH,THM_MAIN --dims 2,3 --samples 2 --ensemble ginibre,normal "
                     "--function power:2 --seed 5 --out-csv " + csv + " --out-json " + json);
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_TRUE(fs::exists(csv));
  EXPECT_TRUE(fs::exists(json));
  const auto t = run("tightness " + csv);
  EXPECT_EQ(t.status, 0) << t.out;
  EXPECT_NE(t.out.find("refinement_mean"), std::string::npos) << t.out;
}

TEST_F(Cli, VerifyFromConfigFile) {
  std::ofstream(path("cfg.json")) << R"({"chains":["KITTANEH"],"ensemble":"nilpotent_jordan",)"
                                     R"("dims":[2],"samples":1})";
  const auto csv = path("cfg.csv");
  const auto r = run("verify --config " + path("cfg.json") + " --out-csv " + csv);
  EXPECT_EQ(r.status, 0) << r.out;
  std::ifstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_NE(row.find("KITTANEH,2,nilpotent_jordan"), std::string::npos) << row;
  EXPECT_NE(row.find(",0.25,0.5,"), std::string::npos) << row;
}
