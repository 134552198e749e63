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

#ifndef DPSEEDKIT_SEED_SEQUENCE_H_
#define DPSEEDKIT_SEED_SEQUENCE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "dpseedkit/bigint.h"

namespace dpseedkit {

enum class WordSize { k32 = 32, k64 = 64 };

// Entropy-conditioning seed sequence compatible with NumPy's SeedSequence
// (itself derived from O'Neill's seed_seq alternative).
//
// The user seed is split into 32-bit words lowest bits first, concatenated with
// the spawn key, and hashed into a 4-word pool. Generators then draw as many
// words as their state needs through GenerateState(). The pool is a pure
// function of (entropy, spawn_key), so a sequence can be re-created from its
// reported entropy and key on any platform.
//
// Everything except the child counter is immutable. Spawn() mutates the counter
// and is not thread-safe: spawn from one thread and hand the children out.
class SeedSequence {
 public:
  static constexpr std::size_t kPoolSize = 4;
  // Bits of OS entropy drawn when no seed is given.
  static constexpr int kDefaultEntropyBits = 128;

  using Pool = std::array<std::uint32_t, kPoolSize>;

  // Unseeded root: draws 128 bits of OS entropy and keeps them as the seed.
  SeedSequence();

  explicit SeedSequence(const BigUint& seed,
                        std::vector<std::uint64_t> spawn_key = {});

  // List-valued seed; each element is decomposed separately and the word
  // arrays are concatenated.
  SeedSequence(std::vector<BigUint> seeds, std::vector<std::uint64_t> spawn_key);

  // True when the sequence was built from a list of integers.
  bool entropy_is_list() const { return entropy_is_list_; }

  // The seed as given. For list seeds this is the first element; use
  // entropy_values() for the full list.
  const BigUint& entropy() const { return entropy_values_.front(); }
  const std::vector<BigUint>& entropy_values() const { return entropy_values_; }

  const std::vector<std::uint32_t>& entropy_words() const {
    return entropy_words_;
  }
  const std::vector<std::uint64_t>& spawn_key() const { return spawn_key_; }
  const Pool& pool() const { return pool_; }
  std::uint64_t children_spawned() const { return children_spawned_; }

  // Pure function of the pool. Throws std::domain_error when n_words == 0.
  std::vector<std::uint32_t> GenerateState32(std::size_t n_words) const;
  // 64-bit words are two consecutive 32-bit outputs, low word first.
  std::vector<std::uint64_t> GenerateState64(std::size_t n_words) const;
  std::vector<std::uint64_t> GenerateState(std::size_t n_words,
                                           WordSize word_size) const;

  // Children share this sequence's entropy and get spawn_key ++ [i] for the
  // next n unused child indices. Throws std::domain_error when n == 0.
  std::vector<SeedSequence> Spawn(std::size_t n);

  friend bool operator==(const SeedSequence& a, const SeedSequence& b) {
    return a.entropy_words_ == b.entropy_words_ &&
           a.spawn_key_ == b.spawn_key_ && a.pool_ == b.pool_;
  }

 private:
  void MixEntropy();

  std::vector<BigUint> entropy_values_;
  bool entropy_is_list_ = false;
  std::vector<std::uint32_t> entropy_words_;
  std::vector<std::uint64_t> spawn_key_;
  Pool pool_{};
  std::uint64_t children_spawned_ = 0;
};

}  // namespace dpseedkit

#endif  // DPSEEDKIT_SEED_SEQUENCE_H_
