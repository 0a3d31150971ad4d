#include <gtest/gtest.h>

#include <sstream>

#include "widthlab/errors.hpp"
#include "widthlab/harness.hpp"

using namespace widthlab;

namespace {

struct Run {
  ExitCode code;
  std::string out, err;
};

Run run(const std::string& sub, std::map<std::string, std::string> params, std::uint64_t seed = 1,
        const std::string& format = "csv") {
  std::ostringstream out, err;
  ExitCode c = run_experiment(ExperimentConfig{sub, seed, format, std::move(params)}, out, err);
  return {c, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(Harness, UnknownKeyIsConfigError) {
  auto r = run("width-growth", {{"kmax", "3"}});
  EXPECT_EQ(r.code, ExitCode::ConfigError);
  EXPECT_NE(r.err.find("kmax"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run("nope", {}).code, ExitCode::ConfigError);
  EXPECT_EQ(run("width-growth", {}, 1, "xml").code, ExitCode::ConfigError);
  EXPECT_EQ(run("width-growth", {{"k_max", "x"}}).code, ExitCode::ConfigError);
  EXPECT_EQ(run("norm-axioms", {{"tol", "0.01"}}).code, ExitCode::ConfigError);
}

TEST(Harness, CanonicalHeader) {
  auto cfg = resolve(ExperimentConfig{"width-growth", 9, "csv", {{"k_max", "2"}}});
  EXPECT_EQ(canonical_json(cfg),
            R"({"format":"csv","params":{"k_max":"2","k_min":"1","r":"1","sign":"1"},"seed":9,"subcommand":"width-growth"})");
  auto r = run("width-growth", {{"k_max", "2"}}, 9);
  EXPECT_EQ(lines(r.out).front(), "# width-lab v0.1.0 config=" + canonical_json(cfg));
}

TEST(Harness, ConfigText) {
  auto m = parse_config_text("# comment\n k_max = 4 \n\nsign=-1\n");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m["k_max"], "4");
  EXPECT_EQ(m["sign"], "-1");
  EXPECT_THROW(parse_config_text("oops\n"), Error);
}

TEST(Harness, WidthGrowthRows) {
  auto r = run("width-growth", {{"k_max", "8"}});
  ASSERT_EQ(r.code, ExitCode::Ok);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 10u);
  EXPECT_EQ(ls[1], "k,target,lower_bound,abs_valuation_bound,word_length,verified");
  for (std::size_t i = 2; i < ls.size(); ++i) EXPECT_EQ(ls[i].substr(ls[i].size() - 4), "true");
}

TEST(Harness, WidthGrowthNegativeExponents) {
  auto r = run("width-growth", {{"k_min", "3"}, {"k_max", "3"}, {"sign", "-1"}}, 1, "jsonl");
  ASSERT_EQ(r.code, ExitCode::Ok);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_NE(ls[1].find("\"lower_bound\":3"), std::string::npos);
  EXPECT_NE(ls[1].find("\"verified\":true"), std::string::npos);
}

TEST(Harness, ComplementRatesExhaustive) {
  auto r = run("lemma3-rates", {{"p", "2"}, {"e", "1"}, {"f", "2"}});
  ASSERT_EQ(r.code, ExitCode::Ok);
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[2], "2,1,2,1/2,1/4,1/2,2,4,exhaustive,true,true");
}

TEST(Harness, BsetBuildExitCodes) {
  EXPECT_EQ(run("bset-build", {{"depth", "1"}}).code, ExitCode::Ok);
  EXPECT_EQ(run("bset-build", {{"budget", "0"}}).code, ExitCode::Exhausted);
  EXPECT_EQ(run("bset-build", {{"family", "cubic"}}).code, ExitCode::ConfigError);
  EXPECT_EQ(run("bset-build", {{"state", "/nonexistent.json"}}).code, ExitCode::ConfigError);
}

TEST(Harness, NormAxiomsSmall) {
  auto r = run("norm-axioms", {{"pairs", "5"}, {"suite", "valuation"}});
  ASSERT_EQ(r.code, ExitCode::Ok);
  EXPECT_EQ(lines(r.out).size(), 2u + 3u * (2u + 4u * 5u));
}

TEST(Harness, Deterministic) {
  for (const auto& sub : subcommands()) {
    std::map<std::string, std::string> p;
    if (sub == "norm-axioms") p = {{"pairs", "3"}};
    if (sub == "so2-witness") p = {{"n_max", "1"}};
    auto a = run(sub, p, 5), b = run(sub, p, 5);
    EXPECT_EQ(a.out, b.out) << sub;
    EXPECT_EQ(a.code, ExitCode::Ok) << sub << a.err;
  }
}
