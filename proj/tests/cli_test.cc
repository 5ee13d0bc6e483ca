// Copyright 2026 The helam Authors
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

#include "cli.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "test_util.h"

namespace helam {
namespace {

using testing::CorpusPath;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Cli(std::vector<std::string> args) {
  args.insert(args.begin(), "helam");
  std::vector<char*> argv;
  for (std::string& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return Outcome{code, out.str(), err.str()};
}

std::filesystem::path TempDir(const std::string& name) {
  std::filesystem::path dir = std::filesystem::temp_directory_path() /
                              ("helam_cli_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::filesystem::path WriteFile(const std::filesystem::path& dir,
                                const std::string& name,
                                const std::string& text) {
  std::filesystem::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

TEST(CliTest, CheckPrintsType) {
  Outcome o = Cli({"check", CorpusPath("kvs.hll")});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(o.out, "(() + ())@[client]\n");
}

TEST(CliTest, CheckRejectsKnowledgeOfChoice) {
  std::string path = CorpusPath("bad_koc.hll");
  Outcome o = Cli({"check", path});
  EXPECT_EQ(o.code, kExitRejected);
  EXPECT_EQ(o.err, path +
                       ":5:12: MaskUndefined: guard of type (() + ())@[p] is "
                       "not located at all of [p, q]\n");
}

TEST(CliTest, JsonDiagnostics) {
  Outcome o = Cli({"check", "--json", CorpusPath("bad_koc.hll")});
  EXPECT_EQ(o.code, kExitRejected);
  nlohmann::json j = nlohmann::json::parse(o.err);
  EXPECT_EQ(j["kind"], "MaskUndefined");
  EXPECT_EQ(j["line"], 5);
  EXPECT_EQ(j["col"], 12);
}

TEST(CliTest, ParseErrorsAreRejections) {
  std::filesystem::path dir = TempDir("parse");
  std::filesystem::path f = WriteFile(dir, "broken.hll", "let x = ;\n");
  Outcome o = Cli({"check", f.string()});
  EXPECT_EQ(o.code, kExitRejected);
  EXPECT_NE(o.err.find(":1:9: ParseError:"), std::string::npos) << o.err;
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(Cli({}).code, kExitUsage);
  EXPECT_EQ(Cli({"check"}).code, kExitUsage);
  EXPECT_EQ(Cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Cli({"check", "/nonexistent/file.hll"}).code, kExitUsage);
  EXPECT_EQ(Cli({"project", CorpusPath("kvs.hll")}).code, kExitUsage);
  EXPECT_EQ(Cli({"simulate", CorpusPath("kvs.hll"), "--seed", "1",
                 "--exhaustive"})
                .code,
            kExitUsage);
  EXPECT_EQ(Cli({"check", CorpusPath("kvs.hll"), "--theta", "p,,q"}).code,
            kExitUsage);
}

TEST(CliTest, ThetaOverride) {
  Outcome o = Cli({"check", CorpusPath("koc_fixed.hll"), "--theta", "p,q,r"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(o.out, "()@[p, q]\n");
  Outcome narrow = Cli({"check", CorpusPath("koc_fixed.hll"), "--theta", "p"});
  EXPECT_EQ(narrow.code, kExitRejected);
}

TEST(CliTest, RunWithTrace) {
  Outcome o = Cli({"run", "--trace", CorpusPath("koc_fixed.hll")});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("COMINL com[p][p, q]"), std::string::npos) << o.out;
  EXPECT_EQ(o.out.substr(o.out.rfind('\n', o.out.size() - 2) + 1),
            "()@[p, q]\n");
}

TEST(CliTest, ProjectOneAndAll) {
  Outcome one = Cli({"project", CorpusPath("koc_fixed.hll"), "--party", "z"});
  EXPECT_EQ(one.code, kExitOk);
  EXPECT_EQ(one.out, "bot\n");

  std::filesystem::path dir = TempDir("project");
  Outcome all = Cli({"project", CorpusPath("kvs.hll"), "--all", "--out",
                     dir.string()});
  EXPECT_EQ(all.code, kExitOk) << all.err;
  for (const char* p : {"backup", "client", "primary"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / (std::string(p) + ".hlp"))) << p;
  }
}

TEST(CliTest, SimulateSeededWithTrace) {
  Outcome o = Cli({"simulate", CorpusPath("delegation.hll"), "--seed", "7",
                   "--trace", "-"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("bob -> [alice]"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("\nrendezvous: 4\n"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("alice: Inl ()\n"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("bob: Inl ()\n"), std::string::npos) << o.out;
}

TEST(CliTest, SimulateExhaustive) {
  Outcome o = Cli({"simulate", CorpusPath("kvs_get.hll"), "--exhaustive"});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("terminals: 1\nrendezvous: 3..3\n"), std::string::npos)
      << o.out;
}

TEST(CliTest, SimulateTraceFile) {
  std::filesystem::path dir = TempDir("trace");
  std::filesystem::path trace = dir / "kvs.trace";
  Outcome o = Cli({"simulate", CorpusPath("kvs.hll"), "--trace",
                   trace.string()});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  std::ifstream in(trace);
  std::string line;
  size_t n = 0;
  while (std::getline(in, line)) {
    EXPECT_EQ(line.rfind("step ", 0), 0u) << line;
    ++n;
  }
  EXPECT_EQ(n, 4u);
}

TEST(CliTest, FmtIsStable) {
  Outcome first = Cli({"fmt", CorpusPath("bookseller.hll")});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  std::filesystem::path dir = TempDir("fmt");
  std::filesystem::path again = WriteFile(dir, "again.hll", first.out);
  Outcome second = Cli({"fmt", again.string()});
  EXPECT_EQ(second.code, kExitOk) << second.err;
  EXPECT_EQ(second.out, first.out);
}

TEST(CliTest, TestMetatheoryWritesReport) {
  std::filesystem::path dir = TempDir("meta");
  std::filesystem::path report = dir / "report.json";
  Outcome o = Cli({"test-metatheory", "--instances", "20", "--mask-pairs",
                   "100", "--runs", "5", "--threads", "1", "--report",
                   report.string()});
  EXPECT_EQ(o.code, kExitOk) << o.out;
  std::ifstream in(report);
  nlohmann::json j = nlohmann::json::parse(in);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["instances"], 20);
  EXPECT_FALSE(j["properties"].empty());
  EXPECT_TRUE(j["rule_coverage"].contains("TCOM"));
}

}  // namespace
}  // namespace helam
