// Copyright 2026 The Atomset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end checks of the command-line tool: output, JSON schema, exit
// codes, and byte-level determinism.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string command = std::string(ATOMSET_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  RunResult result;
  std::array<char, 512> buffer;
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
    result.output += buffer.data();
  }
  int status = pclose(pipe);
  result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string samples(const std::string& name) {
  return std::string(ATOMSET_SAMPLES_DIR) + "/" + name;
}

TEST(CliTest, ClassifyJson) {
  RunResult r = run_cli("--json classify \"basis(+{a} -{b}, 2)\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output,
            "{\"command\":\"classify\",\"input\":\"basis(+{a} -{b}, 2)\","
            "\"result\":{\"card\":\"infinite\"}}\n");
}

TEST(CliTest, ClassifyEmptyBasis) {
  RunResult r = run_cli("--json classify \"basis(+{a} -{a}, 2)\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"card\":\"empty\""), std::string::npos);
}

TEST(CliTest, ClassifyHuman) {
  RunResult r = run_cli("classify \"basis(+{a, b} -{}, 2)\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "finite(1)\n");
}

TEST(CliTest, ClassifyFromFile) {
  RunResult r = run_cli("classify @" + samples("basis.atomset"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "infinite\n");
}

TEST(CliTest, NormalForm) {
  RunResult r = run_cli("--json nf \"{ s : 2 | a in s }\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"h\":[{\"p\":[\"a\"],\"q\":[]}]"), std::string::npos);
  // A redundant parameter disappears from the normal form.
  RunResult full = run_cli("nf \"{ (x) | x = a | x != a }\"");
  EXPECT_EQ(full.exit_code, 0);
  EXPECT_EQ(full.output, "{ (v1) | true }\n");
}

TEST(CliTest, SupportCommand) {
  RunResult r = run_cli("support \"{ s : 2 | a in s & b notin s | a notin s & b notin s }\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "{b}\n");  // a is redundant: the family is "avoids b"
}

TEST(CliTest, CountCommands) {
  RunResult symbolic = run_cli("count --window 5 \"basis(+{a} -{b}, 2)\"");
  EXPECT_EQ(symbolic.exit_code, 0);
  EXPECT_EQ(symbolic.output, "3\n");
  RunResult oracle = run_cli("oracle count --window 5 \"basis(+{a} -{b}, 2)\"");
  EXPECT_EQ(oracle.exit_code, 0);
  EXPECT_EQ(oracle.output, "3\n");
}

TEST(CliTest, EqualCommand) {
  RunResult r = run_cli("equal \"{ s : 2 | a in s & b notin s }\" \"basis(+{a} -{b}, 2)\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.output, "equal\n");
  RunResult different = run_cli("equal \"basis(+{a} -{}, 2)\" \"basis(+{b} -{}, 2)\"");
  EXPECT_EQ(different.exit_code, 0);
  EXPECT_EQ(different.output, "not equal\n");
  RunResult mismatch = run_cli("equal \"basis(+{a} -{}, 2)\" \"{ (x) | x = a }\"");
  EXPECT_EQ(mismatch.exit_code, 2);
}

TEST(CliTest, OracleClassify) {
  RunResult r = run_cli("--json oracle classify --window 5 \"basis(+{a} -{b}, 2)\"");
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"growth\":\"growing\""), std::string::npos);
  RunResult below = run_cli("oracle classify --window 2 \"basis(+{a} -{b}, 2)\"");
  EXPECT_EQ(below.exit_code, 2);
}

TEST(CliTest, RklCommand) {
  RunResult r = run_cli("--json rkl @" + samples("singleton_pairs.atomset"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"case\":\"left\""), std::string::npos);
  EXPECT_NE(r.output.find("\"witness\":[\"x0\"]"), std::string::npos);
  RunResult oracle = run_cli("oracle rkl --window 8 @" + samples("singleton_pairs.atomset"));
  EXPECT_EQ(oracle.exit_code, 0);
  EXPECT_NE(oracle.output.find("growing"), std::string::npos);
}

TEST(CliTest, RefuteFamilyCommand) {
  RunResult r = run_cli("--json refute-family --k 2 @" + samples("singleton_pairs.atomset"));
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.output.find("\"witness\":[\"x0\",\"x3\"]"), std::string::npos);
  // Bases of 2-sets with |p| = 2 are finite: hypothesis violation.
  RunResult bad = run_cli("refute-family --k 1 @" + samples("singleton_pairs.atomset"));
  EXPECT_EQ(bad.exit_code, 2);
}

TEST(CliTest, MapCommands) {
  RunResult check = run_cli("map check " + samples("toggle.atommap"));
  EXPECT_EQ(check.exit_code, 0);
  EXPECT_NE(check.output.find("surjective: yes, injective: yes"), std::string::npos);
  EXPECT_NE(check.output.find("PASS"), std::string::npos);

  RunResult erase = run_cli("--json map check " + samples("erase.atommap"));
  EXPECT_EQ(erase.exit_code, 0);  // not surjective: instance passes vacuously
  EXPECT_NE(erase.output.find("\"surjective\":false"), std::string::npos);
  EXPECT_NE(erase.output.find("\"collision\""), std::string::npos);

  RunResult orbit = run_cli("map orbit " + samples("toggle.atommap") + " \"{x3}\"");
  EXPECT_EQ(orbit.exit_code, 0);
  EXPECT_NE(orbit.output.find("preperiod 0, period 2"), std::string::npos);
}

TEST(CliTest, NotionsCommands) {
  RunResult wdstar = run_cli("wdstar-transform " + samples("fibers.table"));
  EXPECT_EQ(wdstar.exit_code, 0);
  EXPECT_EQ(wdstar.output, "A_0 = {a}\nA_1 = {b, c, d}\n");

  RunResult split = run_cli("--json inexhaustible-check 5");
  EXPECT_EQ(split.exit_code, 0);
  EXPECT_NE(split.output.find("\"inexhaustible\":false"), std::string::npos);
  RunResult bad = run_cli("inexhaustible-check 1");
  EXPECT_EQ(bad.exit_code, 2);
}

TEST(CliTest, ParseErrorsExitTwo) {
  RunResult r = run_cli("classify \"basis(+{a} -{b}\"");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("parse error"), std::string::npos);
  RunResult unknown = run_cli("classify");
  EXPECT_EQ(unknown.exit_code, 2);  // missing required argument
}

TEST(CliTest, DeterministicOutput) {
  std::string args = "--json nf \"{ s : 2 | b in s & a notin s | b notin s & a notin s }\"";
  RunResult first = run_cli(args);
  RunResult second = run_cli(args);
  EXPECT_EQ(first.exit_code, 0);
  EXPECT_EQ(first.output, second.output);
}

}  // namespace
