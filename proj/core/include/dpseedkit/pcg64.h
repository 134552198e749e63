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

#ifndef DPSEEDKIT_PCG64_H_
#define DPSEEDKIT_PCG64_H_

#include <cstdint>

#include "dpseedkit/bigint.h"

namespace dpseedkit {

class SeedSequence;

// PCG XSL-RR 128/64, "setseq" variant (selectable stream). Same algorithm and
// seeding as NumPy's PCG64: the LCG steps first, then the new state is output.
class Pcg64 {
 public:
  static constexpr uint128 kMultiplier =
      MakeUint128(2549297995355413924ULL, 4865540595714422341ULL);

  // Draws 4 64-bit words: (state hi, state lo, stream hi, stream lo).
  static Pcg64 FromSeedSequence(const SeedSequence& seq);

  // pcg_setseq_128_srandom_r: increment = (init_seq << 1) | 1.
  Pcg64(uint128 init_state, uint128 init_seq);

  // Raw state restore. Throws std::domain_error for an even increment.
  static Pcg64 FromRawState(uint128 state, uint128 increment);

  std::uint64_t NextU64() {
    Step();
    return Output(state_);
  }

  // Skip ahead by `delta` steps (mod 2^128) in O(log delta).
  void Advance(uint128 delta);

  uint128 state() const { return state_; }
  uint128 increment() const { return increment_; }

  friend bool operator==(const Pcg64&, const Pcg64&) = default;

 private:
  Pcg64() = default;

  void Step() { state_ = state_ * kMultiplier + increment_; }

  static std::uint64_t Output(uint128 state) {
    const auto xored =
        static_cast<std::uint64_t>(state >> 64) ^ static_cast<std::uint64_t>(state);
    const auto rot = static_cast<unsigned>(state >> 122);
    return (xored >> rot) | (xored << ((-rot) & 63u));
  }

  uint128 state_ = 0;
  uint128 increment_ = 1;
};

}  // namespace dpseedkit

#endif  // DPSEEDKIT_PCG64_H_
