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

#include "dpseedkit/seed_sequence.h"

#include <stdexcept>
#include <utility>

#include "dpseedkit/os_entropy.h"

namespace dpseedkit {
namespace {

constexpr std::uint32_t kInitA = 0x43b0d7e5;
constexpr std::uint32_t kMultA = 0x931e8875;
constexpr std::uint32_t kInitB = 0x8b51f9dd;
constexpr std::uint32_t kMultB = 0x58f38ded;
constexpr std::uint32_t kMixMultL = 0xca01f9dd;
constexpr std::uint32_t kMixMultR = 0x4973f715;
constexpr int kXShift = 16;

std::uint32_t HashMix(std::uint32_t value, std::uint32_t& hash_const) {
  value ^= hash_const;
  hash_const *= kMultA;
  value *= hash_const;
  value ^= value >> kXShift;
  return value;
}

std::uint32_t Mix(std::uint32_t x, std::uint32_t y) {
  std::uint32_t result = kMixMultL * x - kMixMultR * y;
  result ^= result >> kXShift;
  return result;
}

void AppendWords(std::vector<std::uint32_t>& out, const BigUint& value) {
  const auto words = IntToWordArray(value);
  out.insert(out.end(), words.begin(), words.end());
}

BigUint DrawDefaultEntropy() {
  const auto bytes = OsEntropy(SeedSequence::kDefaultEntropyBits / 8);
  BigUint value = 0;
  for (std::uint8_t b : bytes) {
    value <<= 8;
    value |= b;
  }
  return value;
}

}  // namespace

SeedSequence::SeedSequence() : SeedSequence(DrawDefaultEntropy()) {}

SeedSequence::SeedSequence(const BigUint& seed,
                           std::vector<std::uint64_t> spawn_key)
    : entropy_values_{seed}, spawn_key_(std::move(spawn_key)) {
  AppendWords(entropy_words_, seed);
  MixEntropy();
}

SeedSequence::SeedSequence(std::vector<BigUint> seeds,
                           std::vector<std::uint64_t> spawn_key)
    : entropy_values_(std::move(seeds)),
      entropy_is_list_(true),
      spawn_key_(std::move(spawn_key)) {
  if (entropy_values_.empty()) {
    throw std::domain_error("seed list must not be empty");
  }
  for (const auto& value : entropy_values_) {
    AppendWords(entropy_words_, value);
  }
  MixEntropy();
}

void SeedSequence::MixEntropy() {
  // Assembled entropy: run entropy, zero-padded to the pool size when a spawn
  // key follows, then the spawn key words.
  std::vector<std::uint32_t> assembled = entropy_words_;
  if (!spawn_key_.empty()) {
    if (assembled.size() < kPoolSize) {
      assembled.resize(kPoolSize, 0);
    }
    for (std::uint64_t k : spawn_key_) {
      AppendWords(assembled, BigUint(k));
    }
  }

  std::uint32_t hash_const = kInitA;
  for (std::size_t i = 0; i < kPoolSize; ++i) {
    pool_[i] = HashMix(i < assembled.size() ? assembled[i] : 0, hash_const);
  }
  for (std::size_t src = 0; src < kPoolSize; ++src) {
    for (std::size_t dst = 0; dst < kPoolSize; ++dst) {
      if (src != dst) {
        pool_[dst] = Mix(pool_[dst], HashMix(pool_[src], hash_const));
      }
    }
  }
  for (std::size_t src = kPoolSize; src < assembled.size(); ++src) {
    for (std::size_t dst = 0; dst < kPoolSize; ++dst) {
      pool_[dst] = Mix(pool_[dst], HashMix(assembled[src], hash_const));
    }
  }
}

std::vector<std::uint32_t> SeedSequence::GenerateState32(
    std::size_t n_words) const {
  if (n_words == 0) {
    throw std::domain_error("generate_state needs at least one word");
  }
  std::vector<std::uint32_t> state(n_words);
  std::uint32_t hash_const = kInitB;
  for (std::size_t i = 0; i < n_words; ++i) {
    std::uint32_t value = pool_[i % kPoolSize];
    value ^= hash_const;
    hash_const *= kMultB;
    value *= hash_const;
    value ^= value >> kXShift;
    state[i] = value;
  }
  return state;
}

std::vector<std::uint64_t> SeedSequence::GenerateState64(
    std::size_t n_words) const {
  if (n_words == 0) {
    throw std::domain_error("generate_state needs at least one word");
  }
  const auto halves = GenerateState32(2 * n_words);
  std::vector<std::uint64_t> state(n_words);
  for (std::size_t i = 0; i < n_words; ++i) {
    state[i] = static_cast<std::uint64_t>(halves[2 * i]) |
               (static_cast<std::uint64_t>(halves[2 * i + 1]) << 32);
  }
  return state;
}

std::vector<std::uint64_t> SeedSequence::GenerateState(
    std::size_t n_words, WordSize word_size) const {
  if (word_size == WordSize::k64) {
    return GenerateState64(n_words);
  }
  const auto words = GenerateState32(n_words);
  return {words.begin(), words.end()};
}

std::vector<SeedSequence> SeedSequence::Spawn(std::size_t n) {
  if (n == 0) {
    throw std::domain_error("spawn needs at least one child");
  }
  std::vector<SeedSequence> children;
  children.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    auto key = spawn_key_;
    key.push_back(children_spawned_ + j);
    SeedSequence child = *this;
    child.spawn_key_ = std::move(key);
    child.children_spawned_ = 0;
    child.MixEntropy();
    children.push_back(std::move(child));
  }
  children_spawned_ += n;
  return children;
}

}  // namespace dpseedkit
