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

#include "dpseedkit/parallel.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>

#include "dpseedkit/seed_descriptor.h"
#include "gtest/gtest.h"

namespace dpseedkit {
namespace {

const Pcg64& PcgOf(const GeneratorHandle& h) { return std::get<Pcg64>(h.bit_generator()); }

HandlePtr SeededPcg(int seed) {
  return std::make_shared<GeneratorHandle>(GeneratorHandle::FromSeedSequence(SeedSequence(seed)));
}

std::filesystem::path TempLedger(const std::string& name) {
  auto path = std::filesystem::temp_directory_path() /
              ("dpseedkit_" + name + "_" + std::to_string(::getpid()) + ".ledger");
  std::filesystem::remove(path);
  return path;
}

TEST(SpawnGeneratorsTest, ChildrenAreDistinctAndRederivable) {
  SeedSequence root(ParseDecimal("287955962967732827663192315245491885249"));
  auto kids = SpawnGenerators(root, 2);
  ASSERT_EQ(kids.size(), 2u);
  EXPECT_EQ(kids[0]->provenance(), Provenance::kSeeded);
  const auto descriptor = ToDescriptor(*kids[1]->seed_sequence());
  auto again = GeneratorHandle::FromSeedSequence(FromDescriptor(descriptor));
  const auto a = kids[0]->NextU64();
  const auto b = kids[1]->NextU64();
  EXPECT_NE(a, b);
  EXPECT_EQ(again.NextU64(), b);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(again.NextU64(), kids[1]->NextU64());
}

TEST(SpawnGeneratorsTest, GrandchildrenFromChildHandle) {
  SeedSequence root(11);
  auto kids = SpawnGenerators(root, 1);
  auto grandkids = SpawnGenerators(*kids[0], 2);
  EXPECT_EQ(grandkids[0]->seed_sequence()->spawn_key(), (std::vector<std::uint64_t>{0, 0}));
  EXPECT_EQ(grandkids[1]->seed_sequence()->spawn_key(), (std::vector<std::uint64_t>{0, 1}));
  auto more = SpawnGenerators(*kids[0], 1);
  EXPECT_EQ(more[0]->seed_sequence()->spawn_key(), (std::vector<std::uint64_t>{0, 2}));

  auto unseeded = GeneratorHandle::UserProvided(Pcg64(1, 1));
  EXPECT_THROW(SpawnGenerators(unseeded, 1), UnsupportedOperation);
  EXPECT_THROW(SpawnGenerators(root, 0), std::domain_error);
}

TEST(SpawnGeneratorsTest, TenThousandChildrenHaveUniqueFirstOutputs) {
  SeedSequence root(5);
  auto kids = SpawnGenerators(root, 10'000);
  std::set<std::uint64_t> firsts;
  for (auto& kid : kids) firsts.insert(kid->NextU64());
  EXPECT_EQ(firsts.size(), 10'000u);
}

TEST(SpawnGeneratorsTest, Mt19937Children) {
  SeedSequence root(5);
  auto kids = SpawnGenerators(root, 2, GeneratorKind::kMt19937);
  EXPECT_EQ(kids[0]->kind(), GeneratorKind::kMt19937);
  EXPECT_NE(kids[0]->NextU64(), kids[1]->NextU64());
}

TEST(JumpedTest, JumpDistanceDerivation) {
  // floor((phi - 1) * 2^128) = floor((sqrt(5 * 2^256) - 2^128) / 2).
  const BigUint two128 = BigUint(1) << 128;
  const BigUint root = boost::multiprecision::sqrt(BigUint(5) << 256);
  ASSERT_LE(root * root, BigUint(5) << 256);
  ASSERT_GT((root + 1) * (root + 1), BigUint(5) << 256);
  EXPECT_EQ(FromUint128(kPcg64JumpDistance), (root - two128) / 2);
}

TEST(JumpedTest, ZeroJumpKeepsState) {
  auto base = SeededPcg(1);
  EXPECT_EQ(PcgOf(*Jumped(*base, 0)), PcgOf(*base));
}

TEST(JumpedTest, OriginalUntouchedAndNoSeedSequence) {
  auto base = SeededPcg(1);
  const auto before = PcgOf(*base);
  auto jumped = Jumped(*base);
  EXPECT_EQ(PcgOf(*base), before);
  EXPECT_NE(PcgOf(*jumped), before);
  EXPECT_FALSE(jumped->seed_sequence().has_value());
  EXPECT_EQ(jumped->provenance(), Provenance::kSeeded);
}

TEST(JumpedTest, Additivity) {
  auto base = SeededPcg(2);
  EXPECT_EQ(PcgOf(*Jumped(*Jumped(*base, 1), 1)), PcgOf(*Jumped(*base, 2)));
  Pcg64 sampler(3, 4);
  for (int i = 0; i < 100; ++i) {
    const uint128 k1 = sampler.NextU64();
    const uint128 k2 = sampler.NextU64();
    EXPECT_EQ(PcgOf(*Jumped(*Jumped(*base, k1), k2)), PcgOf(*Jumped(*base, k1 + k2)));
  }
}

TEST(JumpedTest, JumpThenComplementReturnsToStart) {
  auto base = SeededPcg(3);
  Pcg64 pcg = PcgOf(*Jumped(*base, 1));
  pcg.Advance(uint128{0} - kPcg64JumpDistance);
  EXPECT_EQ(pcg, PcgOf(*base));
}

TEST(JumpedTest, UnsupportedGenerators) {
  auto mt = GeneratorHandle::UserProvided(Mt19937::FromU32(1));
  EXPECT_THROW(Jumped(mt), UnsupportedOperation);
  auto secure = GeneratorHandle::DefaultSecure();
  EXPECT_THROW(Jumped(secure), UnsupportedOperation);
}

TEST(JumpedTest, JumpedAndSpawnedStreamsDoNotAlias) {
  SeedSequence root(77);
  auto base = std::make_shared<GeneratorHandle>(GeneratorHandle::FromSeedSequence(root));
  std::vector<HandlePtr> streams = {Jumped(*base, 1), Jumped(*base, 2)};
  for (auto& kid : SpawnGenerators(root, 8)) streams.push_back(kid);
  streams.push_back(base);
  std::set<std::vector<std::uint64_t>> prefixes;
  for (auto& s : streams) {
    std::vector<std::uint64_t> prefix;
    for (int i = 0; i < 4; ++i) prefix.push_back(s->NextU64());
    prefixes.insert(prefix);
  }
  EXPECT_EQ(prefixes.size(), streams.size());
}

std::vector<std::uint64_t> MotherPrefix(int seed, std::size_t n) {
  auto mother = SeededPcg(seed);
  std::vector<std::uint64_t> out(n);
  for (auto& v : out) v = mother->NextU64();
  return out;
}

TEST(LeapfrogTest, StrideOneIsIdentity) {
  auto mother = SeededPcg(4);
  LeapfrogStream stream(*mother, 1, 0);
  for (auto expected : MotherPrefix(4, 50)) EXPECT_EQ(stream.NextU64(), expected);
}

TEST(LeapfrogTest, TwoSubstreamsInterleaveToMother) {
  auto mother = SeededPcg(4);
  LeapfrogStream even(*mother, 2, 0);
  LeapfrogStream odd(*mother, 2, 1);
  const auto expected = MotherPrefix(4, 100);
  for (std::size_t i = 0; i < 100; ++i) {
    EXPECT_EQ(i % 2 == 0 ? even.NextU64() : odd.NextU64(), expected[i]) << i;
  }
}

TEST(LeapfrogTest, IndexOffset) {
  auto mother = SeededPcg(4);
  LeapfrogStream stream(*mother, 3, 2);
  const auto expected = MotherPrefix(4, 9);
  EXPECT_EQ(stream.NextU64(), expected[2]);
  EXPECT_EQ(stream.NextU64(), expected[5]);
  EXPECT_EQ(stream.NextU64(), expected[8]);
}

TEST(LeapfrogTest, WorksOnMt19937AndRejectsBadArguments) {
  auto mt = GeneratorHandle::UserProvided(Mt19937::FromU32(5489));
  auto copy = std::get<Mt19937>(mt.bit_generator());
  LeapfrogStream stream(mt, 2, 1);
  copy.NextU64();
  EXPECT_EQ(stream.NextU64(), copy.NextU64());
  EXPECT_THROW(LeapfrogStream(mt, 3, 3), std::domain_error);
  EXPECT_THROW(LeapfrogStream(mt, 0, 0), std::domain_error);
  auto secure = GeneratorHandle::DefaultSecure();
  EXPECT_THROW(LeapfrogStream(secure, 2, 0), UnsupportedOperation);
}

TEST(BlockLedgerTest, AssignsOffsets) {
  BlockLedger ledger;
  const auto block = ledger.Assign("s", 0, 10);
  EXPECT_EQ(block.offset, 0u);
  EXPECT_EQ(block.length, 10u);
  EXPECT_EQ(ledger.Assign("s", 3, 10).offset, 30u);
  EXPECT_TRUE(ledger.Contains("s", 3));
  EXPECT_FALSE(ledger.Contains("s", 1));
}

TEST(BlockLedgerTest, DuplicateAndMismatchedBlocksRaiseOverlap) {
  BlockLedger ledger;
  ledger.Assign("s", 1, 100);
  EXPECT_THROW(ledger.Assign("s", 1, 100), BlockOverlapError);
  EXPECT_THROW(ledger.Assign("s", 2, 50), BlockOverlapError);
  EXPECT_NO_THROW(ledger.Assign("other", 1, 50));
  EXPECT_EQ(ledger.size(), 2u);
  EXPECT_THROW(ledger.Assign("s", 5, 0), std::domain_error);
  EXPECT_THROW(ledger.Assign("bad\tid", 0, 1), std::domain_error);
  EXPECT_THROW(ledger.Assign("", 0, 1), std::domain_error);
}

TEST(BlockLedgerTest, BlocksReproduceMotherStream) {
  BlockLedger ledger;
  auto mother = SeededPcg(8);
  const auto expected = MotherPrefix(8, 2000);
  std::vector<std::uint64_t> joined;
  for (std::uint64_t t = 0; t < 2; ++t) {
    auto gen = BlockGenerator(*mother, ledger.Assign("m", t, 1000));
    for (int i = 0; i < 1000; ++i) joined.push_back(gen->NextU64());
  }
  EXPECT_EQ(joined, expected);
  auto mt = GeneratorHandle::UserProvided(Mt19937::FromU32(1));
  EXPECT_THROW(BlockGenerator(mt, ledger.Assign("mt", 0, 5)), UnsupportedOperation);
}

TEST(BlockLedgerTest, PersistsAndReloads) {
  const auto path = TempLedger("persist");
  {
    auto ledger = BlockLedger::Open(path);
    ledger.Assign("alpha", 0, 64);
    ledger.Assign("alpha", 1, 64);
    ledger.Assign("beta", 7, 8);
  }
  auto reloaded = BlockLedger::Open(path);
  EXPECT_EQ(reloaded.size(), 3u);
  EXPECT_TRUE(reloaded.Contains("beta", 7));
  EXPECT_THROW(reloaded.Assign("alpha", 1, 64), BlockOverlapError);
  EXPECT_THROW(reloaded.Assign("alpha", 2, 32), BlockOverlapError);
  reloaded.Assign("alpha", 2, 64);
  EXPECT_EQ(BlockLedger::Open(path).assigned(), reloaded.assigned());

  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.substr(0, first.rfind('\t')), "alpha\t0\t64");
  std::filesystem::remove(path);
}

TEST(BlockLedgerTest, DetectsCorruption) {
  const auto path = TempLedger("corrupt");
  {
    auto ledger = BlockLedger::Open(path);
    ledger.Assign("alpha", 0, 64);
  }
  std::string text;
  {
    std::ifstream in(path);
    std::getline(in, text);
  }
  auto write = [&](const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    out << content;
  };
  std::string tampered = text;
  tampered[tampered.find("64")] = '9';
  write(tampered + "\n");
  EXPECT_THROW(BlockLedger::Open(path), LedgerCorruptError);
  write("alpha\t0\n");
  EXPECT_THROW(BlockLedger::Open(path), LedgerCorruptError);
  write(text + "\n" + text + "\n");
  EXPECT_THROW(BlockLedger::Open(path), LedgerCorruptError);
  write(text + "\n");
  EXPECT_NO_THROW(BlockLedger::Open(path));
  std::filesystem::remove(path);
}

TEST(CollisionProbabilityTest, SmallCases) {
  EXPECT_EQ(CollisionProbability(0, 8), 0.0);
  EXPECT_EQ(CollisionProbability(1, 8), 0.0);
  EXPECT_EQ(CollisionProbability(2, 2), 0.25);
  EXPECT_EQ(CollisionProbability(5, 2), 1.0);
  EXPECT_THROW(CollisionProbability(2, 0), std::domain_error);
}

TEST(CollisionProbabilityTest, MatchesEnumeration) {
  // Brute force over every assignment of n keys from 2^bits cells.
  for (unsigned bits = 1; bits <= 3; ++bits) {
    const std::uint64_t cells = 1u << bits;
    for (std::uint64_t n = 0; n <= 4; ++n) {
      std::uint64_t total = 1;
      for (std::uint64_t i = 0; i < n; ++i) total *= cells;
      std::uint64_t colliding = 0;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::set<std::uint64_t> seen;
        std::uint64_t c = code;
        for (std::uint64_t i = 0; i < n; ++i, c /= cells) seen.insert(c % cells);
        colliding += seen.size() < n;
      }
      EXPECT_DOUBLE_EQ(CollisionProbability(n, bits),
                       static_cast<double>(colliding) / static_cast<double>(total))
          << "n=" << n << " bits=" << bits;
    }
  }
}

TEST(CollisionProbabilityTest, MillionStreams128Bits) {
  // 1 - exp(-n(n-1)/2^129) evaluated at 50 digits.
  constexpr double kOracle = 1.4693664691599208571e-27;
  const double exact = CollisionProbability(1'000'000, 128);
  const double approx = CollisionProbabilityApprox(1'000'000, 128).convert_to<double>();
  EXPECT_NEAR(approx / kOracle, 1.0, 1e-15);
  EXPECT_NEAR(exact / approx, 1.0, 1e-3);
}

}  // namespace
}  // namespace dpseedkit
