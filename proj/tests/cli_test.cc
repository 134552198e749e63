// Copyright 2026 The dpseedkit Authors
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

// Drives the dpseedkit binary as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dpseedkit/bigint.h"
#include "golden_vectors.h"
#include "gtest/gtest.h"

namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

Result RunCli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" DPSEEDKIT_CLI_PATH "\" " + args + " 2>/dev/null";
  Result result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, got);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint64_t WordAt(const std::string& bytes, std::size_t i) {
  std::uint64_t w = 0;
  for (int b = 7; b >= 0; --b) {
    w = (w << 8) | static_cast<unsigned char>(bytes[8 * i + b]);
  }
  return w;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpseedkit_cli_" + std::to_string(getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kSeed(dpseedkit::golden::kAnchorEntropy);

TEST_F(CliTest, EntropyIsFreshAndUsableAsSeed) {
  const auto a = RunCli("entropy");
  const auto b = RunCli("entropy");
  ASSERT_EQ(a.status, 0);
  ASSERT_EQ(b.status, 0);
  EXPECT_NE(a.out, b.out);
  const auto value = dpseedkit::ParseDecimal(a.out.substr(0, a.out.find('\n')));
  EXPECT_LT(value, dpseedkit::BigUint(1) << 128);

  const std::string seed = a.out.substr(0, a.out.find('\n'));
  ASSERT_EQ(RunCli("sample --seed " + seed + " --n 16 --out " + Path("x")).status, 0);
  ASSERT_EQ(RunCli("sample --seed " + seed + " --n 16 --out " + Path("y")).status, 0);
  EXPECT_EQ(ReadFile(Path("x")), ReadFile(Path("y")));
}

TEST_F(CliTest, SpawnPrintsChildDescriptors) {
  const auto r = RunCli("spawn --seed " + kSeed + " --n 2");
  ASSERT_EQ(r.status, 0);
  const auto children = nlohmann::json::parse(r.out);
  ASSERT_EQ(children.size(), 2u);
  EXPECT_EQ(children[0].at("spawn_key"), nlohmann::json::array({0}));
  EXPECT_EQ(children[1].at("spawn_key"), nlohmann::json::array({1}));
  EXPECT_EQ(children[0].at("entropy"), kSeed);
  EXPECT_EQ(RunCli("spawn --seed " + kSeed + " --n 2").out, r.out);

  // A child descriptor reproduces the child stream.
  {
    std::ofstream(Path("child.json")) << children[0].dump();
  }
  ASSERT_EQ(RunCli("sample --descriptor " + Path("child.json") + " --n 4 --out " +
                   Path("child.bin"))
                .status,
            0);
  const auto bytes = ReadFile(Path("child.bin"));
  ASSERT_EQ(bytes.size(), 32u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(WordAt(bytes, i), dpseedkit::golden::kAnchorChildPcgOutputs[i]);
  }
  EXPECT_EQ(RunCli("spawn --n 2").status, 2);
}

TEST_F(CliTest, SampleWritesDumpAndSidecar) {
  ASSERT_EQ(RunCli("sample --seed " + kSeed + " --n 8 --out " + Path("a.bin")).status, 0);
  const auto bytes = ReadFile(Path("a.bin"));
  ASSERT_EQ(bytes.size(), 64u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(WordAt(bytes, i), dpseedkit::golden::kAnchorPcgOutputs[i]);
  }
  const auto meta = nlohmann::json::parse(ReadFile(Path("a.bin.json")));
  EXPECT_EQ(meta.at("generator"), "pcg64");
  EXPECT_EQ(meta.at("word_size"), 64);
  EXPECT_EQ(meta.at("n_words"), 8);

  ASSERT_EQ(RunCli("sample --seed " + kSeed + " --n 8 --out " + Path("b.bin")).status, 0);
  EXPECT_EQ(ReadFile(Path("b.bin")), bytes);

  const auto stdout_dump = RunCli("sample --seed " + kSeed + " --n 8");
  EXPECT_EQ(stdout_dump.status, 0);
  EXPECT_EQ(stdout_dump.out, bytes);

  ASSERT_EQ(RunCli("sample --seed " + kSeed + " --n 0 --out " + Path("empty.bin")).status, 0);
  EXPECT_TRUE(fs::exists(Path("empty.bin")));
  EXPECT_EQ(fs::file_size(Path("empty.bin")), 0u);

  ASSERT_EQ(RunCli("sample --generator mt19937 --seed 5 --n 10 --out " + Path("mt.bin")).status,
            0);
  EXPECT_EQ(fs::file_size(Path("mt.bin")), 40u);
  EXPECT_EQ(nlohmann::json::parse(ReadFile(Path("mt.bin.json"))).at("word_size"), 32);

  EXPECT_EQ(RunCli("sample --generator csprng --seed 1 --n 4").status, 2);
  EXPECT_EQ(RunCli("sample --generator bogus --n 4").status, 2);
  EXPECT_EQ(RunCli("sample --seed -3 --n 4").status, 2);
  EXPECT_EQ(RunCli("sample --n 4 --out " + Path("missing/dir/x.bin")).status, 3);

  ASSERT_EQ(RunCli("sample --generator csprng --n 4 --out " + Path("c1")).status, 0);
  ASSERT_EQ(RunCli("sample --generator csprng --n 4 --out " + Path("c2")).status, 0);
  EXPECT_NE(ReadFile(Path("c1")), ReadFile(Path("c2")));
}

TEST_F(CliTest, TestSubcommandExitCodes) {
  {
    std::ofstream zeros(Path("zeros.bin"), std::ios::binary);
    const std::string block(8 * 10'000, '\0');
    zeros << block;
  }
  const auto bad = RunCli("test " + Path("zeros.bin"));
  EXPECT_EQ(bad.status, 1);
  EXPECT_FALSE(nlohmann::json::parse(bad.out).at("passed").get<bool>());

  ASSERT_EQ(RunCli("sample --seed 42 --n 1000000 --out " + Path("good.bin")).status, 0);
  const auto good = RunCli("test " + Path("good.bin") + " --alpha 0.001");
  EXPECT_EQ(good.status, 0);
  const auto report = nlohmann::json::parse(good.out);
  EXPECT_TRUE(report.at("passed").get<bool>());
  EXPECT_EQ(report.at("reports").size(), 3u);

  {
    std::ofstream odd(Path("odd.bin"), std::ios::binary);
    odd << "abcde";
  }
  EXPECT_EQ(RunCli("test " + Path("odd.bin")).status, 3);
  {
    std::ofstream empty(Path("empty.bin"), std::ios::binary);
  }
  EXPECT_EQ(RunCli("test " + Path("empty.bin")).status, 3);
  EXPECT_EQ(RunCli("test " + Path("nope.bin")).status, 3);
  EXPECT_EQ(RunCli("test " + Path("good.bin") + " --alpha 2").status, 2);
}

TEST_F(CliTest, BenchReportsEveryGenerator) {
  const auto r = RunCli("bench --n 100000");
  ASSERT_EQ(r.status, 0);
  const auto rows = nlohmann::json::parse(r.out);
  ASSERT_EQ(rows.size(), 3u);
  std::vector<std::string> names;
  for (const auto& row : rows) {
    names.push_back(row.at("generator"));
    EXPECT_GT(row.at("words_per_second").get<double>(), 0.0);
  }
  std::sort(names.begin(), names.end());
  EXPECT_EQ(names, (std::vector<std::string>{"csprng", "mt19937", "pcg64"}));
  EXPECT_EQ(RunCli("bench --n 0").status, 2);
  EXPECT_EQ(nlohmann::json::parse(RunCli("bench --generator pcg64 --n 1000").out).size(), 1u);
}

TEST_F(CliTest, DpNoise) {
  const std::string args = "dpnoise --epsilon 0.5 --sensitivity 1 --value 10";
  const auto a = RunCli(args + " --seed 7");
  const auto b = RunCli(args + " --seed 7");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(std::stod(a.out), 10.0);

  const auto c = RunCli(args);
  const auto d = RunCli(args);
  ASSERT_EQ(c.status, 0);
  EXPECT_NE(c.out, d.out);

  EXPECT_EQ(std::stod(RunCli("dpnoise --epsilon 1 --sensitivity 0 --value 3.25").out), 3.25);
  EXPECT_EQ(RunCli("dpnoise --epsilon 0 --sensitivity 1 --value 1").status, 2);
  EXPECT_EQ(RunCli("dpnoise --epsilon 1 --sensitivity -1 --value 1").status, 2);
  EXPECT_EQ(RunCli("dpnoise --epsilon 1 --sensitivity 1").status, 2);
}

TEST_F(CliTest, ScanSampled) {
  const auto r = RunCli("scan --n 20000 --seed 1");
  ASSERT_EQ(r.status, 0);
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_EQ(report.at("mode"), "sampled");
  EXPECT_EQ(report.at("seeds_scanned"), 20000);
  EXPECT_EQ(report.at("target_hits").size(), 2u);
  EXPECT_EQ(RunCli("scan --n 0").status, 2);
}

TEST_F(CliTest, BlockUsesLedger) {
  const std::string env = "DPSEEDKIT_LEDGER=" + Path("ledger.tsv");
  const std::string base = "block --seed " + kSeed + " --n 1000 --out ";
  EXPECT_EQ(RunCli(base + Path("b0.bin") + " --task 0").status, 2);  // no ledger
  ASSERT_EQ(RunCli(base + Path("b0.bin") + " --task 0", env).status, 0);
  ASSERT_EQ(RunCli(base + Path("b1.bin") + " --task 1", env).status, 0);
  EXPECT_EQ(RunCli(base + Path("b2.bin") + " --task 1", env).status, 2);

  ASSERT_EQ(RunCli("sample --seed " + kSeed + " --n 2000 --out " + Path("all.bin")).status, 0);
  EXPECT_EQ(ReadFile(Path("b0.bin")) + ReadFile(Path("b1.bin")), ReadFile(Path("all.bin")));

  {
    std::ofstream(Path("ledger.tsv"), std::ios::app) << "garbage line\n";
  }
  EXPECT_EQ(RunCli(base + Path("b3.bin") + " --task 3", env).status, 3);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli("").status, 2);
  EXPECT_EQ(RunCli("frobnicate").status, 2);
  EXPECT_EQ(RunCli("sample --descriptor '{\"entropy\": \"x\"}' --n 1").status, 2);
}

}  // namespace
