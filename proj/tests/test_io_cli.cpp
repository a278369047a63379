// Copyright 2026 The mumsep Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "mumsep/mumsep.hpp"

using namespace mumsep;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run_command(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("mumsep_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    fs::path dir_;
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    f << text;
}

ErrorKind parse_kind(const std::string& text) {
    try {
        parse_state(text);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << text;
    return ErrorKind::InvalidArgument;
}

}  // namespace

TEST(StateIo, RoundTripIsBitIdentical) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const BipartiteState s = sample_state(SampleKind::Density, 2, 3, seed);
        const BipartiteState back = parse_state(serialize_state(s));
        EXPECT_EQ(back.d1(), 2);
        EXPECT_EQ(back.d2(), 3);
        EXPECT_EQ(back.matrix(), s.matrix());
    }
}

TEST(StateIo, ParseErrorKinds) {
    EXPECT_EQ(parse_kind("{not json"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind("[1,2]"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind(R"({"d1":1,"matrix":[[1,0]]})"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind(R"({"d1":1.5,"d2":1,"matrix":[[1,0]]})"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind(R"({"d1":1,"d2":1,"matrix":[[1,0],[0,0]]})"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind(R"({"d1":1,"d2":1,"matrix":[["1",0]]})"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind(R"({"d1":9,"d2":9,"matrix":[]})"), ErrorKind::ParseError);
    EXPECT_EQ(parse_kind(R"({"d1":1,"d2":1,"matrix":[[2,0]]})"), ErrorKind::TraceNotOne);
    EXPECT_EQ(parse_kind(R"({"d1":1,"d2":2,"matrix":[[0.5,0],[0,1],[0,1],[0.5,0]]})"), ErrorKind::NotHermitian);
    EXPECT_EQ(parse_kind(R"({"d1":1,"d2":2,"matrix":[[1.5,0],[0,0],[0,0],[-0.5,0]]})"), ErrorKind::NotPSD);
}

TEST(StateIo, MissingFileIsParseError) {
    try {
        load_state("/nonexistent/state.json");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ParseError);
    }
}

TEST(Formatting, TwelveSignificantDigits) {
    EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
    EXPECT_EQ(format_number(1.0), "1");
    EXPECT_EQ(format_number(-0.25), "-0.25");
}

TEST(Formatting, ScanCsvLayout) {
    ScanResult r;
    r.grid = {{0.0, 0.5, 1.0, false}, {1.0, 2.0, 1.0, true}};
    r.threshold = 0.5;
    std::ostringstream os;
    write_scan_csv(os, r);
    EXPECT_EQ(os.str(), "param,lhs,rhs,violated\n0,0.5,1,0\n1,2,1,1\nthreshold,0.5\n");
    r.threshold.reset();
    std::ostringstream none;
    write_scan_csv(none, r);
    EXPECT_NE(none.str().find("\nthreshold,none\n"), std::string::npos);
}

TEST(Cli, VerifyMeasurementsSucceeds) {
    const CliResult r = run({"verify-measurements", "--type", "mum", "--dim", "3", "--max"});
    EXPECT_EQ(r.code, cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["measurements"].get<int>(), 4);
    EXPECT_NEAR(j["kappa"].get<double>(), 5.0 / 9.0, 1e-9);
    EXPECT_EQ(run({"verify-measurements", "--type", "gsic", "--dim", "4"}).code, cli::kExitOk);
}

TEST(Cli, InfeasibleAlphaIsUsageError) {
    const CliResult r = run({"verify-measurements", "--type", "gsic", "--dim", "3", "--alpha", "0.01"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("AlphaInfeasible"), std::string::npos);
}

TEST(Cli, MalformedArgumentsExitTwo) {
    EXPECT_EQ(run({}).code, cli::kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"verify-measurements", "--type", "sic", "--dim", "3"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"verify-measurements", "--type", "mum", "--dim", "1"}).code, cli::kExitUsage);
    EXPECT_EQ(run({"verify-measurements", "--type", "mum", "--dim", "3", "--max", "--kappa", "0.5"}).code,
              cli::kExitUsage);
    EXPECT_EQ(run({"scan", "--family", "werner", "--criterion", "nope", "--from", "-1", "--to", "1"}).code,
              cli::kExitUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST_F(TempDir, DetectFlagsPureTiles) {
    ASSERT_EQ(run({"gen-state", "--family", "noisy_tiles", "--param", "1", "--out", path("t.json")}).code, 0);
    const CliResult r = run({"detect", "--state", path("t.json"), "--criterion", "mum_tracenorm"});
    ASSERT_EQ(r.code, cli::kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["violated"].get<bool>());
    EXPECT_GT(j["lhs"].get<double>(), j["rhs"].get<double>());
    EXPECT_EQ(j["criterion"], "mum_tracenorm");
}

TEST_F(TempDir, MaximallyMixedIsNeverFlagged) {
    ASSERT_EQ(run({"gen-state", "--family", "noisy_tiles", "--param", "0", "--out", path("mix.json")}).code, 0);
    for (CriterionId id : kAllCriteria) {
        const CliResult r = run({"detect", "--state", path("mix.json"), "--criterion", std::string(to_string(id))});
        ASSERT_EQ(r.code, cli::kExitOk) << r.err;
        EXPECT_FALSE(nlohmann::json::parse(r.out)["violated"].get<bool>()) << to_string(id);
    }
}

TEST_F(TempDir, WernerScanFooter) {
    const CliResult r = run({"scan", "--family", "werner", "--dim", "3", "--criterion", "mum_tracenorm", "--from", "-1",
                       "--to", "1", "--out", path("w.csv")});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    ASSERT_EQ(r.out.rfind("threshold,", 0), 0u);
    EXPECT_NEAR(std::stod(r.out.substr(10)), -0.334, 1e-3);
    std::ifstream f(path("w.csv"));
    std::string first, line, last;
    std::getline(f, first);
    int rows = 0;
    while (std::getline(f, line)) {
        last = line;
        ++rows;
    }
    EXPECT_EQ(first, "param,lhs,rhs,violated");
    EXPECT_EQ(rows, 201);
    EXPECT_EQ(last, r.out.substr(0, r.out.size() - 1));
}

TEST_F(TempDir, InvalidStateFileGivesOneLineDiagnostic) {
    write_text(path("bad.json"), R"({"d1":1,"d2":1,"matrix":[[2,0]]})");
    const CliResult r = run({"detect", "--state", path("bad.json"), "--criterion", "mum_tracenorm"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_EQ(r.err.rfind("error: TraceNotOne", 0), 0u);
    EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1);
    EXPECT_TRUE(r.out.empty());
}

TEST_F(TempDir, DiagonalCriterionOnUnequalDimensions) {
    save_state(sample_state(SampleKind::Density, 2, 3, 5), path("r.json"));
    const CliResult r = run({"detect", "--state", path("r.json"), "--criterion", "mum_diagonal"});
    EXPECT_EQ(r.code, cli::kExitUsage);
    EXPECT_NE(r.err.find("UnequalDimensions"), std::string::npos);
}
