// Copyright 2026 The aklt-optics Authors
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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "aklt/cli.hpp"

namespace aklt::cli {
namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "aklt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

TEST(cli, empty_arguments_print_usage) {
  const Invocation r = invoke({});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("build"), std::string::npos);
}

TEST(cli, help_exits_zero) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
}

TEST(cli, config_file_with_flag_override) {
  const auto cfg = temp_file("aklt_cli_test.toml",
                             "command = \"build\"\nn = 5\ntrials = 200\nseed = 9\n");
  const Invocation r = invoke({"--config", cfg.string(), "--trials", "300"});
  ASSERT_NE(r.code, 2) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["n"], 5);
  EXPECT_EQ(j["config"]["trials"], 300);
  EXPECT_EQ(j["seed"], 9);
}

TEST(cli, unknown_config_key_is_rejected) {
  const auto cfg = temp_file("aklt_cli_bad.toml", "command = \"build\"\nsources = 5\n");
  const Invocation r = invoke({"--config", cfg.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("valid keys"), std::string::npos);
}

TEST(cli, malformed_number_is_usage_error) {
  EXPECT_EQ(invoke({"build", "--n", "eight"}).code, 2);
  EXPECT_EQ(invoke({"build", "--strategy", "three-arm"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
}

TEST(cli, validate_beyond_full_state_limit) {
  const Invocation r = invoke({"validate", "--n", "6"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("N <= 4"), std::string::npos);
}

TEST(cli, same_seed_same_report) {
  const std::vector<std::string> args = {"build", "--n", "6", "--trials", "2000", "--seed", "5"};
  const Invocation a = invoke(args);
  const Invocation b = invoke(args);
  EXPECT_EQ(a.out, b.out);
  const Invocation c = invoke({"build", "--n", "6", "--trials", "2000", "--seed", "6"});
  EXPECT_NE(a.out, c.out);
}

TEST(cli, env_seed_used_unless_flag_given) {
  setenv("AKLT_SEED", "77", 1);
  const Json a = Json::parse(invoke({"teleport", "--trials", "10"}).out);
  const Json b = Json::parse(invoke({"teleport", "--trials", "10", "--seed", "3"}).out);
  unsetenv("AKLT_SEED");
  EXPECT_EQ(a["seed"], 77);
  EXPECT_EQ(b["seed"], 3);
}

TEST(cli, validate_report_passes) {
  const Invocation r = invoke({"validate", "--n", "2"});
  EXPECT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(cli, bell_stats_report_passes) {
  const Invocation r = invoke({"bell-stats", "--trials", "20000"});
  EXPECT_EQ(r.code, 0) << r.out;
}

TEST(cli, output_file_written) {
  const auto p = std::filesystem::temp_directory_path() / "aklt_cli_out.json";
  std::filesystem::remove(p);
  const Invocation r = invoke({"validate", "--n", "1", "--output", p.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(p);
  const Json j = Json::parse(f);
  EXPECT_EQ(j["command"], "validate");
}

TEST(report, quantity_comparisons) {
  EXPECT_TRUE((Quantity{"a", 1.04, 1.0, "analytic", "abs", 0.05}.pass()));
  EXPECT_FALSE((Quantity{"a", 1.06, 1.0, "analytic", "abs", 0.05}.pass()));
  EXPECT_TRUE((Quantity{"b", 0.4, 0.5, "paper", "le", 0.0}.pass()));
  EXPECT_FALSE((Quantity{"b", 0.6, 0.5, "paper", "le", 0.0}.pass()));
}

}  // namespace
}  // namespace aklt::cli
