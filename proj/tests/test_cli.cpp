#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "zetaburst_cli/cli.hpp"

using namespace zetaburst::cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

std::string second_line(const std::string& s) {
  auto p = s.find('\n');
  return s.substr(p + 1, s.find('\n', p + 1) - p - 1);
}

}  // namespace

TEST(Cli, ZetaHalf) {
  CliRun r = run({"lvalue", "--char", "1.1", "--s", "1/2", "--digits", "50"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, 16), "-1.4603545088095");
  auto j = nlohmann::json::parse(second_line(r.out));
  for (const char* k : {"char", "s", "digits", "value", "radius", "algorithm", "seconds", "N1", "N2"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j["algorithm"], "afe");
}

TEST(Cli, Bernoulli) {
  CliRun r = run({"bernoulli", "12"});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "-691/2730");
  EXPECT_EQ(run({"euler", "10", "--algorithm", "ep"}).out.substr(0, 6), "-50521");
}

TEST(Cli, ExitCodes) {
  CliRun pole = run({"lvalue", "--char", "1.1", "--s", "1", "--digits", "50"});
  EXPECT_EQ(pole.code, kDomainError);
  EXPECT_NE(pole.err.find("pole"), std::string::npos);
  EXPECT_EQ(run({"lvalue", "--char", "4.2", "--s", "2"}).code, kDomainError);
  EXPECT_EQ(run({"lvalue", "--s", "1/x"}).code, kDomainError);
  EXPECT_EQ(run({"lvalue", "--s", "2", "--algorithm", "nope"}).code, kDomainError);
  EXPECT_EQ(run({"lvalue", "--s", "1/3", "--algorithm", "ramanujan"}).code, kDomainError);
  EXPECT_EQ(run({"frobnicate"}).code, kDomainError);
  EXPECT_EQ(run({"incgamma", "--a", "1/2", "--z", "-1"}).code, kDomainError);
  EXPECT_EQ(run({"constant", "pi"}).code, kDomainError);
  EXPECT_EQ(run({"--help"}).code, kOk);
}

TEST(Cli, AlgorithmsAgree) {
  std::string afe = run({"lvalue", "--char", "4.3", "--s", "3/2", "--digits", "30"}).out;
  std::string em = run({"lvalue", "--char", "4.3", "--s", "3/2", "--digits", "30", "--algorithm", "em"}).out;
  std::string ep = run({"lvalue", "--char", "4.3", "--s", "6", "--digits", "15", "--algorithm", "ep"}).out;
  EXPECT_EQ(afe.substr(0, 25), em.substr(0, 25));
  EXPECT_EQ(ep.substr(0, 8), "+9.98685");
}

TEST(Cli, IncGammaAndConstant) {
  CliRun g = run({"incgamma", "--a", "1/3", "--z", "2.5", "--digits", "30"});
  ASSERT_EQ(g.code, kOk) << g.err;
  EXPECT_EQ(g.out.substr(0, 12), "+3.686052091");
  CliRun k = run({"constant", "landau-ramanujan", "--digits", "20"});
  ASSERT_EQ(k.code, kOk);
  EXPECT_EQ(k.out.substr(0, 10), "+7.6422365");
}

TEST(Cli, BenchEmptySpec) {
  std::string path = temp_file("empty_spec.json", "{}");
  CliRun r = run({"bench", path, "--csv"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_EQ(r.out, "task,digits,algorithm,seconds,terms,digest\n");
  EXPECT_EQ(run({"bench", ::testing::TempDir() + "missing.json"}).code, kDomainError);
  EXPECT_EQ(run({"bench", temp_file("bad.json", "{")}).code, kDomainError);
}

TEST(Cli, BenchRecordsAndScaling) {
  BenchTable t = bench_suite(
      R"({"tasks":[{"task":"zeta-half","digits":[30,60],"algorithms":["afe","em"]},
                   {"task":"bernoulli","n":[20,40]},
                   {"task":"zeta-4/3","digits":[20],"algorithms":["bogus"]}]})");
  ASSERT_EQ(t.records.size(), 7u);
  for (const auto& r : t.records) {
    if (r.algorithm == "bogus") {
      EXPECT_FALSE(r.error.empty());
      continue;
    }
    EXPECT_TRUE(r.error.empty()) << r.error;
    EXPECT_FALSE(r.digest.empty());
    EXPECT_GT(r.peak_prec, 0);
  }
  EXPECT_EQ(t.records[0].digest.substr(0, 10), t.records[1].digest.substr(0, 10));
  EXPECT_EQ(t.scaling.size(), 3u);
  std::string csv = to_csv(t);
  EXPECT_EQ(csv.rfind("task,digits,algorithm,seconds,terms,digest\n", 0), 0u);
  auto j = nlohmann::json::parse(to_json(t));
  EXPECT_EQ(j["records"].size(), 7u);
  for (const auto& r : j["records"]) {
    for (const char* k : {"task", "digits", "algorithm", "seconds", "terms", "peak_prec", "digest"}) {
      EXPECT_TRUE(r.contains(k)) << k;
    }
  }
}

TEST(Cli, BenchDigestsReproducible) {
  const char* spec = R"({"tasks":[{"task":"l23-half","digits":[40]},{"task":"euler","n":[30]}]})";
  BenchTable a = bench_suite(spec);
  BenchTable b = bench_suite(spec, true);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) EXPECT_EQ(a.records[i].digest, b.records[i].digest);
}

TEST(Cli, DigitsToBits) {
  EXPECT_EQ(digits_to_bits(1), 14);
  EXPECT_EQ(digits_to_bits(1000), 3332);
}
