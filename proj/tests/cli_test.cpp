#include "../tools/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace asymptotica::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "asymptotica");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / ("asymptotica_cli_test_" + name);
  std::ofstream(p) << content;
  return p;
}

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(Cli, UnknownSubcommandIsArgumentError) {
  const auto r = run_cli({"bogus"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("\"error\""), std::string::npos);
}

TEST(Cli, BadFlagValueIsArgumentError) {
  EXPECT_EQ(run_cli({"--levels", "many", "demo", "delta"}).code, 2);
  EXPECT_EQ(run_cli({"--format", "xml", "lc", "eval", "1"}).code, 2);
  EXPECT_EQ(run_cli({"lc", "eval", "1 +"}).code, 2);
}

TEST(Cli, NumericalErrorExitsOne) {
  const auto r = run_cli({"lc", "eval", "inverse(0)"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("DivisionByZero"), std::string::npos);
}

TEST(Cli, LcEval) {
  const auto r = run_cli({"lc", "eval", "inverse(1+rho)"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("1 - rho + rho^2", 0), 0u) << r.out;
}

TEST(Cli, DumpConfigDefaults) {
  const auto r = run_cli({"--dump-config"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("seed = 42"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("truncation_order = 12"), std::string::npos) << r.out;
}

TEST(Cli, ConfigPrecedence) {
  const auto file = temp_file("config.txt", "# test\nseed = 7\ntruncation_order = 5\n");
  ::setenv("ASYMPTOTICA_CONFIG", file.c_str(), 1);
  const auto from_file = run_cli({"--dump-config"});
  const auto from_flag = run_cli({"--seed", "9", "--dump-config"});
  ::unsetenv("ASYMPTOTICA_CONFIG");
  EXPECT_NE(from_file.out.find("seed = 7"), std::string::npos) << from_file.out;
  EXPECT_NE(from_file.out.find("truncation_order = 5"), std::string::npos);
  EXPECT_NE(from_flag.out.find("seed = 9"), std::string::npos) << from_flag.out;
  EXPECT_NE(from_flag.out.find("truncation_order = 5"), std::string::npos);
  std::filesystem::remove(file);
}

TEST(Cli, BadConfigFileIsArgumentError) {
  const auto file = temp_file("bad_config.txt", "nosuchkey = 1\n");
  ::setenv("ASYMPTOTICA_CONFIG", file.c_str(), 1);
  const auto r = run_cli({"--dump-config"});
  ::unsetenv("ASYMPTOTICA_CONFIG");
  EXPECT_EQ(r.code, 2);
  std::filesystem::remove(file);
}

TEST(Cli, PairCsvHeader) {
  const auto csv = std::filesystem::temp_directory_path() / "asymptotica_cli_test_pair.csv";
  const auto r = run_cli({"gfunc", "pair", "--expr", "mul(H,delta)", "--csv", csv.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string text = read(csv);
  EXPECT_EQ(text.substr(0, text.find('\n')), "epsilon,re,im,abs_err_vs_limit");
  std::filesystem::remove(csv);
}

TEST(Cli, HeavisideDeltaDemoApproachesHalf) {
  const auto r = run_cli({"--format", "csv", "demo", "hdelta"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line, last;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#' && line[0] != 'e') last = line;
  }
  std::vector<double> fields;
  std::istringstream row(last);
  for (std::string f; std::getline(row, f, ',');) fields.push_back(std::stod(f));
  ASSERT_GE(fields.size(), 2u);
  const double tau0 = std::exp(-1.0 / (1.0 - 0.04));
  EXPECT_NEAR(fields[1], tau0 / 2, 5e-3);
}

TEST(Cli, DemoIsDeterministic) {
  const auto a = run_cli({"--seed", "42", "demo", "hb"});
  const auto b = run_cli({"--seed", "42", "demo", "hb"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, HbExtend) {
  const auto space = temp_file("space.json", R"({"weights":[1,1,1]})");
  const auto fn = temp_file("fn.json", R"({"domain":[0,1],"values":["1","rho^-1"]})");
  const auto out = std::filesystem::temp_directory_path() / "asymptotica_cli_test_ext.json";
  const auto r = run_cli({"hb", "extend", "--space", space.string(), "--functional", fn.string(), "--out", out.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  const std::string ext = read(out);
  EXPECT_NE(ext.find("\"domain\""), std::string::npos);
  EXPECT_NE(ext.find("2.718281828"), std::string::npos) << ext;
  for (const auto& p : {space, fn, out}) std::filesystem::remove(p);
}

TEST(Cli, MollifierGenAndCertify) {
  const auto file = std::filesystem::temp_directory_path() / "asymptotica_cli_test_phi.json";
  EXPECT_EQ(run_cli({"--n", "2", "mollifier", "gen", "--out", file.string()}).code, 0);
  const auto r = run_cli({"--n", "2", "mollifier", "certify", file.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  std::filesystem::remove(file);
}

}  // namespace
}  // namespace asymptotica::cli
