#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "gridclass");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = gridclass::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Cli, Member) {
  auto r = run({"member", "-m", "1 -1", "2 4 1 3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(first_line(r.out), "false");
  r = run({"member", "-m", "1 -1", "1 3 2"});
  EXPECT_EQ(first_line(r.out), "true");
  EXPECT_NE(r.out.find("cells: 1 1 2"), std::string::npos);
}

TEST(Cli, BoundedBasis) {
  const auto r = run({"basis", "-m", "1 -1", "--max-length", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "213, 312\nmode: bounded-up-to-6\n");
}

TEST(Cli, CertifiedBasisWithExtensionMatrix) {
  const auto r = run({"basis", "-m", "1", "--extension-matrix", "1 0 1 / 0 1 0 / 1 0 1", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["basis"], nlohmann::json::array({"2 1"}));
  EXPECT_EQ(j["mode"], "certified-complete");
  EXPECT_EQ(j["certificate"]["universal"], true);
}

TEST(Cli, GeneratingFunctions) {
  auto r = run({"gf", "-m", "1"});
  EXPECT_EQ(first_line(r.out), "x/(1 - x)");
  r = run({"gf", "-m", "1", "--simple"});
  EXPECT_EQ(first_line(r.out), "x + x^2");
  r = run({"gf", "-m", "1 -1", "--json"});
  EXPECT_EQ(nlohmann::json::parse(r.out)["text"], "x/(1 - 2x)");
}

TEST(Cli, Count) {
  const auto r = run({"count", "-m", "1 / 1", "5"});
  EXPECT_EQ(r.out, "0: 1\n1: 1\n2: 2\n3: 5\n4: 12\n5: 27\n");
}

TEST(Cli, SubclassAndSubstitutionClosure) {
  auto r = run({"subclass-basis", "-m", "1 -1", "--avoid", "123", "--max-length", "5"});
  EXPECT_EQ(r.code, 0);
  r = run({"subclass-basis", "-m", "1 -1", "--sum-indec", "--max-length", "5"});
  EXPECT_EQ(r.code, 1);
  EXPECT_FALSE(r.err.empty());
  r = run({"sc-basis", "-m", "1 -1", "--max-length", "6"});
  EXPECT_EQ(first_line(r.out), "2413, 3142");
}

TEST(Cli, MatrixFile) {
  const auto path = std::filesystem::temp_directory_path() / "gridclass_cli_test_matrix.txt";
  std::ofstream(path) << "# two cells\n1 -1\n";
  const auto r = run({"basis", "--matrix-file", path.string(), "--max-length", "4"});
  std::filesystem::remove(path);
  EXPECT_EQ(first_line(r.out), "213, 312");
}

TEST(Cli, InputErrorsExitWithOne) {
  EXPECT_EQ(run({"member", "-m", "1 2", "1"}).code, 1);
  EXPECT_EQ(run({"member", "-m", "1", "1 1"}).code, 1);
  EXPECT_EQ(run({"basis"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  const auto r = run({"gf", "-m", "1 / 0 x"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("x"), std::string::npos);
}

TEST(Cli, BudgetExhaustionExitsWithTwo) {
  const auto r = run({"gf", "-m", "1 -1", "--max-states", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"subclass-basis", "-m", "1 1", "--avoid", "321", "--max-length", "5", "--json"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> report{"oracle", "-m", "1 -1", "--max-length", "4"};
  auto a = nlohmann::json::parse(run(report).out), b = nlohmann::json::parse(run(report).out);
  a.erase("seconds");
  b.erase("seconds");
  EXPECT_EQ(a, b);
}
