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

#ifndef DPSEEDKIT_MT19937_H_
#define DPSEEDKIT_MT19937_H_

#include <array>
#include <cstddef>
#include <cstdint>

namespace dpseedkit {

class SeedSequence;

// Canonical 32-bit Mersenne Twister (Matsumoto & Nishimura, 1998).
class Mt19937 {
 public:
  static constexpr std::size_t kStateWords = 624;

  struct State {
    std::array<std::uint32_t, kStateWords> words{};
    // Next word to temper; kStateWords means "twist before the next output".
    std::size_t index = kStateWords;

    friend bool operator==(const State&, const State&) = default;
  };

  // Words 1..623 come from seq.GenerateState32(624); word 0 is pinned to
  // 0x80000000 so the state is never all-zero. The first draw twists.
  static Mt19937 FromSeedSequence(const SeedSequence& seq);

  // Classic init_genrand single-word initialization.
  static Mt19937 FromU32(std::uint32_t seed);

  explicit Mt19937(const State& state);

  std::uint32_t NextU32();
  // Two 32-bit draws, the first one becomes the high half.
  std::uint64_t NextU64();

  const State& state() const { return state_; }

  friend bool operator==(const Mt19937& a, const Mt19937& b) {
    return a.state_ == b.state_;
  }

 private:
  Mt19937() = default;
  void Twist();

  State state_;
};

// First NextU32() of Mt19937::FromU32(seed), computed without building the
// full state. Only words 0, 1 and 397 of the initial vector are involved.
std::uint32_t Mt19937FirstOutput(std::uint32_t seed);

}  // namespace dpseedkit

#endif  // DPSEEDKIT_MT19937_H_
