#include <bucketrank/bucketrank.hpp>
#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace fs = std::filesystem;
using namespace bucketrank;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bucketrank_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& contents) {
    const auto p = dir_ / name;
    std::ofstream(p) << contents;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream s(line);
    std::string f;
    while (std::getline(s, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_F(Cli, BumerankMatchesGoldenTrace) {
  const auto r = run({"bumerank", BUCKETRANK_TEST_DATA "/fixture4.rankcsv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, slurp(BUCKETRANK_GOLDEN "/bumerank_fixture4.csv"));
}

TEST_F(Cli, ScanMatchesDistortionBitExactly) {
  const auto data = path("d.csv");
  ASSERT_EQ(run({"simulate", "--model", "mallows:0.8", "--n", "5", "--samples", "300", "--seed", "3",
                 "--out", data})
                .code,
            0);
  const auto scan = run({"scan", data});
  ASSERT_EQ(scan.code, 0) << scan.err;
  EXPECT_EQ(scan.out.rfind("# schema=1\nK,shape,distortion,dimension,log10_dimension\n", 0), 0u);
  const auto rows = csv_rows(scan.out);
  ASSERT_EQ(rows.size(), 17u);

  const auto consensus = nlohmann::json::parse(run({"consensus", data}).out);
  std::vector<std::size_t> order = consensus["copeland"].get<std::vector<std::size_t>>();
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto shape = io::parse_shape(rows[r][1]);
    std::string spec;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < shape.size(); ++k) {
      spec += k ? "|{" : "{";
      for (std::size_t m = 0; m < shape[k]; ++m) spec += (m ? "," : "") + std::to_string(order[pos++]);
      spec += "}";
    }
    const auto d = run({"distortion", data, "--buckets", spec});
    ASSERT_EQ(d.code, 0) << d.err;
    const auto j = nlohmann::json::parse(d.out);
    EXPECT_EQ(j["distortion"].get<double>(), std::stod(rows[r][2])) << spec;
    EXPECT_EQ(j["dimension"].get<std::string>(), rows[r][3]);
  }
}

TEST_F(Cli, ScanOfBucketUniformSampleHasSingleZeroRow) {
  const auto data = path("appd.csv");
  ASSERT_EQ(run({"simulate", "--model", "bucket-uniform:2,3,1", "--samples", "2000", "--seed", "7",
                 "--out", data})
                .code,
            0);
  const auto rows = csv_rows(run({"scan", data}).out);
  ASSERT_EQ(rows.size(), 33u);
  int zeros = 0;
  for (std::size_t r = 1; r < rows.size(); ++r)
    if (rows[r][0] == "3" && std::stod(rows[r][2]) <= 1e-12) {
      ++zeros;
      EXPECT_EQ(rows[r][1], "2-3-1");
    }
  EXPECT_EQ(zeros, 1);
  EXPECT_EQ(rows[1][0], "1");
  EXPECT_EQ(rows[1][3], "719");
}

TEST_F(Cli, DistortionSingleBucket) {
  const auto data = file("d.csv", "1,2,3,4\n2,1,4,3\n");
  const auto r = run({"distortion", data, "--buckets", "{1,2,3,4}"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], 1);
  EXPECT_EQ(j["distortion"].get<double>(), 0.0);
  EXPECT_EQ(j["dimension"], "23");
}

TEST_F(Cli, ConsensusRefusesCycleUnlessBruteForce) {
  const auto data = file("cycle.pairs",
                         "winner,loser,weight\n1,2,9\n2,1,1\n2,3,9\n3,2,1\n3,1,9\n1,3,1\n");
  const auto refused = run({"consensus", data});
  EXPECT_EQ(refused.code, cli::kPrecondition);
  EXPECT_NE(refused.err.find("transitive"), std::string::npos);
  const auto brute = run({"consensus", data, "--brute-force"});
  ASSERT_EQ(brute.code, 0) << brute.err;
  const auto j = nlohmann::json::parse(brute.out);
  EXPECT_NEAR(j["kemeny_cost"].get<double>(), 1.1, 1e-12);
  EXPECT_EQ(j["kemeny_argmin_count"], 3);
  EXPECT_EQ(j["transitivity"], "none");
}

TEST_F(Cli, UnobservedPairsNeedFill) {
  const auto data = file("sparse.pairs", "1,2\n1,3\n");
  EXPECT_EQ(run({"consensus", data}).code, cli::kPrecondition);
  const auto filled = run({"consensus", data, "--fill", "0.5"});
  EXPECT_EQ(filled.code, 0) << filled.err;
}

TEST_F(Cli, ExitCodes) {
  const auto bad = file("bad.csv", "1,2,3\n1,2\n");
  const auto parse = run({"scan", bad});
  EXPECT_EQ(parse.code, cli::kParseError);
  EXPECT_NE(parse.err.find("line 2"), std::string::npos);

  const auto data = file("ok.csv", "1,2,3,4,5,6\n");
  EXPECT_EQ(run({"search", data, "--shape", "1,1,1,1,1,1", "--exhaustive", "--cap", "10"}).code,
            cli::kCapExceeded);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kParseError);
  EXPECT_EQ(run({"scan"}).code, cli::kParseError);
  EXPECT_EQ(run({"scan", path("missing.csv")}).code, cli::kParseError);
}

TEST_F(Cli, CapFromEnvironment) {
  const auto data = file("ok.csv", "1,2,3,4,5,6\n");
  ::setenv("BUCKETRANK_CAP", "10", 1);
  const auto capped = run({"search", data, "--shape", "2,2,2", "--exhaustive"});
  ::unsetenv("BUCKETRANK_CAP");
  EXPECT_EQ(capped.code, cli::kCapExceeded);
  EXPECT_EQ(run({"search", data, "--shape", "2,2,2", "--exhaustive"}).code, 0);
}

TEST_F(Cli, SearchModes) {
  const auto data = std::string(BUCKETRANK_TEST_DATA "/fixture4.rankcsv");
  const auto ex = nlohmann::json::parse(run({"search", data, "--shape", "2,2"}).out);
  EXPECT_EQ(ex["method"], "exhaustive");
  EXPECT_EQ(ex["buckets"], "{1,2}|{3,4}");
  EXPECT_EQ(ex["schema"], 1);
  const auto seg = nlohmann::json::parse(run({"search", data, "--shape", "3,1", "--segment"}).out);
  EXPECT_EQ(seg["method"], "segmentation");
  EXPECT_EQ(seg["distortion"].get<double>(), 0.3);
  const auto dp = nlohmann::json::parse(run({"search", data, "--segments", "2"}).out);
  EXPECT_EQ(dp["shape"], "2-2");
}

TEST_F(Cli, SelectPicksTwoBuckets) {
  const auto data = path("fixture.csv");
  ASSERT_EQ(run({"simulate", "--model", "fixture4", "--samples", "2000", "--seed", "42", "--out", data})
                .code,
            0);
  const auto cands = file("cands.txt", "2,2\n1,1,1,1\n");
  const auto r = run({"select", data, "--candidates", cands, "--seed", "42"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["chosen"], 1);
  EXPECT_EQ(j["buckets"], "{1,2}|{3,4}");
  EXPECT_EQ(j["candidates"].size(), 2u);
}

TEST_F(Cli, SimulateIsDeterministicAndRoundTrips) {
  const auto a = run({"simulate", "--model", "bucket-uniform:{1,3}|{2,4,5}", "--samples", "50",
                      "--seed", "9", "--contaminate", "0.2"});
  const auto b = run({"simulate", "--model", "bucket-uniform:{1,3}|{2,4,5}", "--samples", "50",
                      "--seed", "9", "--contaminate", "0.2"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto soc = run({"simulate", "--model", "mallows:1:3,1,2", "--samples", "20", "--format", "soc"});
  ASSERT_EQ(soc.code, 0) << soc.err;
  std::istringstream in(soc.out);
  const auto d = io::read_rankings(in, io::RankingFormat::soc);
  EXPECT_EQ(d.n(), 3u);
  EXPECT_EQ(d.total_weight(), 20.0);
  EXPECT_EQ(run({"simulate", "--model", "mallows:1"}).code, cli::kParseError);
  EXPECT_EQ(run({"simulate", "--model", "zipf:2"}).code, cli::kParseError);
}

TEST_F(Cli, MarginalsAndCars) {
  const auto data = file("m.csv", "1,2,3\n1,2,3\n1,2,3\n2,1,3\n");
  const auto m = run({"marginals", data});
  ASSERT_EQ(m.code, 0) << m.err;
  EXPECT_NE(m.out.find("1,2,0.75,4,0\n"), std::string::npos);
  const auto t = run({"marginals", data, "--triplets"});
  EXPECT_NE(t.out.find("1,2,3,0.75\n"), std::string::npos);

  const auto raw = file("cars.csv", "user,item1,item2,control\n1,2,1,0\n1,1,2,1\n");
  const auto out = path("cars.pairs");
  ASSERT_EQ(run({"normalize-cars", raw, "--out", out}).code, 0);
  EXPECT_EQ(slurp(out), "# n=2\nwinner,loser,weight\n2,1,1\n");
}
