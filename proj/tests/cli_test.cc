// Copyright 2026 The nlcubes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "../tools/cli.h"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "nlcubes/json_io.h"
#include "oracles.h"

namespace nlcubes {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("nlcubes_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string &name) const { return (dir_ / name).string(); }

    std::string write(const std::string &name, const std::string &text) const {
        std::ofstream(path(name), std::ios::binary) << text;
        return path(name);
    }

    fs::path dir_;
};

TEST_F(CliTest, ConstructWritesParsableArtifacts) {
    Result r = run({"construct", "--dims", "3,3,3", "--kind", "upb"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(state_set_from_json(r.out).size(), 19u);

    r = run({"construct", "--dims", "3,3,3,3,3", "--kind", "decomposition", "-o", path("d.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    Decomposition dec = decomposition_from_json(oracle::read_text(path("d.json")));
    EXPECT_EQ(dec.blocks.size(), 33u);

    r = run({"construct", "--dims", "4,4,4", "--kind", "ops"});
    ASSERT_EQ(r.code, 0);
    EXPECT_EQ(state_set_from_json(r.out).size(), 56u);
}

TEST_F(CliTest, ConstructIsByteDeterministic) {
    for (const char *kind : {"decomposition", "opb", "ops", "upb"}) {
        Result a = run({"construct", "--dims", "3,4,5", "--kind", kind});
        Result b = run({"construct", "--dims", "3,4,5", "--kind", kind});
        ASSERT_EQ(a.code, 0);
        EXPECT_EQ(a.out, b.out) << kind;
    }
}

TEST_F(CliTest, VerifyExitCodesFollowTheVerdicts) {
    std::string ops = write("ops.json", run({"construct", "--dims", "3,3,3", "--kind", "ops"}).out);
    std::string upb = write("upb.json", run({"construct", "--dims", "3,3,3", "--kind", "upb"}).out);
    std::string dec = write("dec.json", run({"construct", "--dims", "3,3,3", "--kind", "decomposition"}).out);

    Result r = run({"verify", "--in", ops, "--check", "orthogonality,nonlocality"});
    EXPECT_EQ(r.code, cli::kPass) << r.err;
    EXPECT_NE(r.out.find("\"Certified\""), std::string::npos);
    EXPECT_NE(r.err.find("nonlocality: ok"), std::string::npos);

    r = run({"verify", "--in", ops, "--check", "unextendibility"});
    EXPECT_EQ(r.code, cli::kRefuted);
    EXPECT_NE(r.out.find("\"Extendible\""), std::string::npos);

    r = run({"verify", "--in", upb, "--check", "orthogonality,unextendibility"});
    EXPECT_EQ(r.code, cli::kPass) << r.err;

    r = run({"verify", "--in", upb, "--check", "unextendibility", "--node-budget", "2"});
    EXPECT_EQ(r.code, cli::kUndecided);

    r = run({"verify", "--in", upb, "--check", "completeness"});
    EXPECT_EQ(r.code, cli::kRefuted);

    r = run({"verify", "--in", dec, "--check", "partition,cyclic,corners"});
    EXPECT_EQ(r.code, cli::kPass) << r.err;

    r = run({"verify", "--in", ops, "--backend", "float", "--tolerance", "1e-10"});
    EXPECT_EQ(r.code, cli::kPass) << r.err;
    EXPECT_NE(r.out.find("\"float\""), std::string::npos);
}

TEST_F(CliTest, VerifyRefutesADuplicatedState) {
    StateSet set = build_ops(PartyDims({3, 3, 3}));
    set.states.push_back(set.states[7]);
    std::string in = write("dup.json", state_set_to_json(set));
    Result r = run({"verify", "--in", in, "--check", "orthogonality"});
    EXPECT_EQ(r.code, cli::kRefuted);
    r = run({"verify", "--in", in, "--check", "nonlocality"});
    EXPECT_EQ(r.code, cli::kRefuted);
}

TEST_F(CliTest, ReportFileAndTraceToggle) {
    std::string ops = write("ops.json", run({"construct", "--dims", "3,3,3", "--kind", "ops"}).out);
    Result full = run({"verify", "--in", ops, "--check", "nonlocality", "--report", path("full.json")});
    Result bare = run({"verify", "--in", ops, "--check", "nonlocality", "--trace", "none", "--report",
                       path("bare.json")});
    ASSERT_EQ(full.code, 0);
    ASSERT_EQ(bare.code, 0);
    std::string a = oracle::read_text(path("full.json"));
    std::string b = oracle::read_text(path("bare.json"));
    EXPECT_NE(a.find("\"trace\""), std::string::npos);
    EXPECT_EQ(b.find("\"trace\""), std::string::npos);
    EXPECT_NE(a.find("\"exit_code\": 0"), std::string::npos);
}

TEST_F(CliTest, ReportsDoNotDependOnThreadCount) {
    std::string ops = write("ops.json", run({"construct", "--dims", "3,3,3,3,3", "--kind", "ops"}).out);
    std::vector<std::string> args = {"verify", "--in", ops, "--check", "orthogonality,nonlocality"};
    ::setenv("NONLOCAL_CUBES_THREADS", "1", 1);
    EXPECT_EQ(cli::thread_budget(), 1);
    Result one = run(args);
    ::setenv("NONLOCAL_CUBES_THREADS", "4", 1);
    EXPECT_LE(cli::thread_budget(), 4);
    Result four = run(args);
    ::setenv("NONLOCAL_CUBES_THREADS", "zero", 1);
    EXPECT_GE(cli::thread_budget(), 1);
    ::unsetenv("NONLOCAL_CUBES_THREADS");
    ASSERT_EQ(one.code, 0);
    EXPECT_EQ(one.out, four.out);
}

TEST_F(CliTest, RenderTable) {
    Result r = run({"render", "--dims", "3,3,3"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("{0,1}x{1,2}x{2}"), std::string::npos);
    EXPECT_NE(r.out.find("central B0: {1}x{1}x{1}"), std::string::npos);
    int rows = 0;
    std::istringstream in(r.out);
    for (std::string line; std::getline(in, line);) {
        rows += std::regex_search(line, std::regex(R"(^\s+\{[0-9,]*\}\s+\|)"));
    }
    EXPECT_EQ(rows, 4);

    r = run({"render", "--dims", "3,3,3,3,3"});
    ASSERT_EQ(r.code, 0);
    rows = 0;
    std::istringstream in5(r.out);
    for (std::string line; std::getline(in5, line);) {
        rows += std::regex_search(line, std::regex(R"(^\s+\{[0-9,]*\}\s+\|)"));
    }
    EXPECT_EQ(rows, 16);
}

TEST_F(CliTest, RenderSlicesNameEveryBlock) {
    Result r = run({"render", "--dims", "3,3,3", "--style", "slices"});
    ASSERT_EQ(r.code, 0);
    std::set<std::string> names;
    std::regex tok(R"((C1\{[0-9,]*\}|D1\{[0-9,]*\}|B0))");
    for (auto it = std::sregex_iterator(r.out.begin(), r.out.end(), tok); it != std::sregex_iterator(); ++it) {
        names.insert(it->str());
    }
    EXPECT_EQ(names.size(), 9u);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run({}).code, cli::kUsage);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
    EXPECT_EQ(run({"construct", "--dims", "3,3,3"}).code, cli::kUsage);
    EXPECT_EQ(run({"construct", "--dims", "3,3,3", "--kind", "cube"}).code, cli::kUsage);
    EXPECT_EQ(run({"construct", "--dims", "4,4", "--kind", "opb"}).code, cli::kUsage);
    EXPECT_EQ(run({"construct", "--dims", "5,3,3", "--kind", "opb"}).code, cli::kUsage);
    EXPECT_EQ(run({"verify", "--in", path("missing.json")}).code, cli::kUsage);
    std::string ops = write("ops.json", run({"construct", "--dims", "3,3,3", "--kind", "ops"}).out);
    EXPECT_EQ(run({"verify", "--in", ops, "--check", "bogus"}).code, cli::kUsage);
    EXPECT_EQ(run({"verify", "--in", ops, "--check", "nonlocality", "--backend", "float"}).code, cli::kUsage);
    std::string dec = write("dec.json", run({"construct", "--dims", "3,4,5", "--kind", "decomposition"}).out);
    EXPECT_EQ(run({"verify", "--in", dec, "--check", "orthogonality"}).code, cli::kUsage);
    EXPECT_EQ(run({"verify", "--in", dec, "--check", "cyclic"}).code, cli::kUsage);
    EXPECT_EQ(run({"--help"}).code, cli::kPass);
}

TEST_F(CliTest, MalformedInputs) {
    EXPECT_EQ(run({"verify", "--in", write("a.json", "{not json")}).code, cli::kMalformedInput);
    EXPECT_EQ(run({"verify", "--in", write("b.json", R"({"version": 1, "dims": [3,3,3]})")}).code,
              cli::kMalformedInput);
    std::string shifts = oracle::data_path("shifts.json");
    EXPECT_EQ(run({"verify", "--in", shifts, "--check", "nonlocality"}).code, cli::kMalformedInput);
    EXPECT_EQ(run({"verify", "--in", shifts, "--check", "unextendibility"}).code, cli::kPass);
}

}  // namespace
}  // namespace nlcubes
