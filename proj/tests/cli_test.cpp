#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fairrank/optimize.hpp"
#include "fairrank/ranking.hpp"
#include "fairrank/tournament.hpp"
#include "json.hpp"

namespace fairrank {
namespace {

namespace fs = std::filesystem;

constexpr const char* kThreeCycle = "3\n010\n001\n100\n";

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "fairrank");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, in, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("fairrank_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name), std::ios::binary) << content;
    return path(name);
  }

  std::string read(const std::string& name) const {
    std::ifstream file(path(name), std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(file), {});
  }

  fs::path dir_;
};

TEST_F(CliTest, GenRotationalFile) {
  const auto o = invoke({"gen", "--family", "rotational", "--l", "1", "--out", path("st1.txt")});
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_EQ(read("st1.txt"), kThreeCycle);
  EXPECT_EQ(o.out, "n=3 edges=3\n");
}

TEST_F(CliTest, GenCompositeSummary) {
  const auto o = invoke({"gen", "--family", "composite", "--l", "1", "-o", path("t1.txt")});
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_EQ(o.out, "n=9 edges=36\n");
  const auto json = invoke({"--format", "json", "gen", "--family", "composite", "--l", "1"});
  EXPECT_EQ(nlohmann::json::parse(json.err), nlohmann::json::parse(R"({"n":9,"edges":36})"));
  EXPECT_EQ(json.out, serialize_tournament(composite_tournament(1)));
}

TEST_F(CliTest, GenRandomDeterministic) {
  invoke({"gen", "--family", "random", "--n", "5", "--seed", "7", "--out", path("a.txt")});
  invoke({"gen", "--family", "random", "--n", "5", "--seed", "7", "--out", path("b.txt")});
  EXPECT_EQ(read("a.txt"), read("b.txt"));
  EXPECT_EQ(read("a.txt"), serialize_tournament(random_tournament(5, 7)));
}

TEST_F(CliTest, GenErrors) {
  EXPECT_EQ(invoke({"gen", "--family", "random"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"gen", "--family", "hexagonal", "--l", "1"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"gen", "--family", "rotational", "--l", "1", "--bogus"}).code,
            cli::kInputError);
  EXPECT_EQ(invoke({"gen", "--family", "composite", "--l", "60"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"gen", "--family", "rotational", "--l", "1", "--out",
                    path("missing/dir/x.txt")})
                .code,
            cli::kIoError);
}

TEST_F(CliTest, RankCopeland) {
  const auto cycle = write("c3.txt", kThreeCycle);
  const auto o = invoke({"rank", cycle, "--method", "copeland", "--out", path("r.txt")});
  EXPECT_EQ(o.code, cli::kOk);
  EXPECT_EQ(read("r.txt"), "1 1\n2 1\n3 1\n");
  EXPECT_NE(o.out.find("bw=0/1"), std::string::npos) << o.out;

  const auto t1 = write("t1.txt", serialize_tournament(composite_tournament(1)));
  const auto j = nlohmann::json::parse(invoke({"--format", "json", "rank", t1}).out);
  EXPECT_EQ(j["backward"]["total"], 36);
  EXPECT_EQ(j["backward"]["backward"].size(), 12u);
  EXPECT_EQ(j["backward"]["fraction"]["num"], 1);
  EXPECT_EQ(j["backward"]["fraction"]["den"], 3);
}

TEST_F(CliTest, RankLinearFairOnCycle) {
  const auto o = invoke({"--format", "json", "rank", "-", "--method", "linear-fair"}, kThreeCycle);
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  for (const auto& v : j["ranking"]) EXPECT_NEAR(std::stod(v.get<std::string>()), 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(j["solver"]["components"][0]["lambda"].get<double>(), 1.0, 1e-9);
  EXPECT_EQ(j["solver"]["verified"], true);

  const auto text = invoke({"rank", "-", "--method", "linear-fair"}, kThreeCycle);
  EXPECT_NE(text.out.find("component 1 size=3"), std::string::npos) << text.out;
  EXPECT_NE(text.out.find("verified=true"), std::string::npos);
}

TEST_F(CliTest, RankCsv) {
  const auto o = invoke({"--format", "csv", "rank", "-"}, kThreeCycle);
  EXPECT_EQ(o.out, "vertex,rank\n1,1\n2,1\n3,1\n");
}

TEST_F(CliTest, RankErrors) {
  EXPECT_EQ(invoke({"rank", "-"}, "3\n011\n001\n100\n").code, cli::kInputError);
  EXPECT_EQ(invoke({"rank", path("nope.txt")}).code, cli::kIoError);
  EXPECT_EQ(invoke({"rank", "-", "--method", "pagerank"}, kThreeCycle).code, cli::kInputError);
}

TEST_F(CliTest, CheckVerdicts) {
  const auto cycle = write("c3.txt", kThreeCycle);
  const auto zero = write("zero.txt", "1 0\n2 0\n3 0\n");
  const auto uneven = write("uneven.txt", "1 1\n2 1\n3 2\n");

  const auto pass = invoke({"check", cycle, zero, "--class", "nscop"});
  EXPECT_EQ(pass.code, cli::kOk);
  EXPECT_EQ(pass.out.substr(0, 10), "PASS nsCop");

  const auto fail = invoke({"check", cycle, uneven, "--class", "cop"});
  EXPECT_EQ(fail.code, cli::kFailVerdict);
  EXPECT_NE(fail.out.find("violation (3,1)"), std::string::npos) << fail.out;

  const auto j = nlohmann::json::parse(invoke({"--format", "json", "check", cycle, uneven, "--class", "cop"}).out);
  EXPECT_EQ(j["verdict"], "FAIL");
  EXPECT_EQ(j["violation"]["x"], 3);
  EXPECT_EQ(j["violation"]["y"], 1);
  EXPECT_EQ(j["backward"]["total"], 3);

  const auto chain = write("chain.txt", serialize_tournament(transitive_tournament(3)));
  const auto degrees = write("deg.txt", serialize_ranking(copeland_ranking(transitive_tournament(3))));
  EXPECT_EQ(invoke({"check", chain, degrees, "--class", "weak"}).code, cli::kOk);
}

TEST_F(CliTest, CheckErrors) {
  const auto cycle = write("c3.txt", kThreeCycle);
  const auto short_ranking = write("short.txt", "1 0\n2 0\n");
  EXPECT_EQ(invoke({"check", cycle, short_ranking, "--class", "weak"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"check", cycle, short_ranking, "--class", "borda"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"check", cycle, path("absent.txt"), "--class", "weak"}).code, cli::kIoError);
}

TEST_F(CliTest, Minimize) {
  const auto inj = invoke({"minimize", "-", "--space", "injective"}, kThreeCycle);
  EXPECT_EQ(inj.code, cli::kOk);
  EXPECT_EQ(inj.out.substr(0, inj.out.find('\n')),
            "count=1 fraction=1/3 (0.333333) space=permutations");

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = random_tournament(5, seed);
    const auto text = serialize_tournament(t);
    const auto scop = nlohmann::json::parse(
        invoke({"--format", "json", "minimize", "-", "--space", "weak-orders", "--class", "scop"}, text).out);
    EXPECT_EQ(scop["count"], min_backward_copeland_closed_form(t).count);
    const auto nscop = nlohmann::json::parse(
        invoke({"--format", "json", "minimize", "-", "--space", "weak-orders", "--class", "nscop"}, text).out);
    EXPECT_EQ(nscop["count"], 0);
  }

  const auto lin = invoke({"minimize", "-", "--space", "weak-orders", "--class", "lin"}, kThreeCycle);
  EXPECT_NE(lin.out.find("lower-bound candidate"), std::string::npos);
  EXPECT_EQ(invoke({"minimize", "-"}, serialize_tournament(random_tournament(11, 0))).code,
            cli::kInputError);
}

TEST_F(CliTest, EmnSweep) {
  const auto o = invoke({"--format", "json", "emn", "--family", "composite", "--lmax", "2", "--materialize", "2"});
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["rows"][0]["fraction"], nlohmann::json::parse(R"({"num":1,"den":3})"));
  EXPECT_EQ(j["rows"][1]["fraction"], nlohmann::json::parse(R"({"num":7,"den":15})"));

  const auto big = invoke({"--format", "json", "emn", "--family", "composite", "--lmax", "100",
                           "--materialize", "4", "--jobs", "2"});
  const auto jb = nlohmann::json::parse(big.out);
  EXPECT_EQ(jb["rows"][99]["fraction"], nlohmann::json::parse(R"({"num":15050,"den":20301})"));
  EXPECT_EQ(Rational(30100, 40602), Rational(15050, 20301));

  const auto text = invoke({"emn", "--lmax", "2", "--materialize", "2"});
  EXPECT_NE(text.out.find("fraction=7/15 (0.466667)"), std::string::npos) << text.out;
  const auto csv = invoke({"--format", "csv", "emn", "--lmax", "2"});
  EXPECT_EQ(csv.out, to_csv(emn_sweep_composite(2, 0)));
}

TEST_F(CliTest, EmnExhaustive) {
  const auto o = invoke({"--format", "json", "emn", "--exhaustive", "4"});
  ASSERT_EQ(o.code, cli::kOk);
  const auto j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j["tested"], 64);
  EXPECT_LE(Rational(j["max_fraction"]["num"].get<long long>(), j["max_fraction"]["den"].get<long long>()),
            Rational(2, 3));
  EXPECT_EQ(j["violations"], 0);
  EXPECT_EQ(invoke({"emn", "--exhaustive", "6"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"emn"}).code, cli::kInputError);
  EXPECT_EQ(invoke({"emn", "--lmax", "60", "--materialize", "60"}).code, cli::kInputError);
}

TEST_F(CliTest, Dump) {
  const auto plain = invoke({"dump", "-", "--table"}, kThreeCycle);
  EXPECT_EQ(plain.code, cli::kOk);
  EXPECT_EQ(plain.out.find('['), std::string::npos);
  EXPECT_EQ(std::count(plain.out.begin(), plain.out.end(), '*'), 3);

  const auto ranks = write("r.txt", "1 1\n2 2\n3 3\n");
  const auto ranked = invoke({"dump", "-", "--table", "--ranking", ranks}, kThreeCycle);
  std::size_t brackets = 0;
  for (std::size_t pos = 0; (pos = ranked.out.find("[*]", pos)) != std::string::npos; ++pos) ++brackets;
  EXPECT_EQ(brackets, 2u);

  const auto chain = serialize_tournament(transitive_tournament(3));
  const auto dom = write("dom.txt", "1 3\n2 2\n3 1\n");
  EXPECT_EQ(invoke({"dump", "-", "--ranking", dom}, chain).out.find('['), std::string::npos);
}

TEST_F(CliTest, HelpAndUnknownVerb) {
  EXPECT_EQ(invoke({"--help"}).code, cli::kOk);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kInputError);
  EXPECT_EQ(invoke({}).code, cli::kInputError);
}

// Linear-fair output always passes lin, spec and weak when checked back.
TEST_F(CliTest, RankThenCheckRoundTrip) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const std::size_t n = 1 + seed % 30;
    const auto tpath = path("t.txt");
    ASSERT_EQ(invoke({"gen", "--family", "random", "--n", std::to_string(n), "--seed",
                      std::to_string(seed), "--out", tpath})
                  .code,
              cli::kOk);
    ASSERT_EQ(invoke({"rank", tpath, "--method", "linear-fair", "--out", path("r.txt")}).code,
              cli::kOk);
    for (const char* c : {"lin", "spec", "weak"}) {
      const auto o = invoke({"check", tpath, path("r.txt"), "--class", c});
      EXPECT_EQ(o.code, cli::kOk) << "seed " << seed << " class " << c << "\n" << o.out;
    }
  }
}

}  // namespace
}  // namespace fairrank
