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

#include "dpseedkit/pcg64.h"

#include <stdexcept>

#include "dpseedkit/seed_sequence.h"

namespace dpseedkit {

Pcg64::Pcg64(uint128 init_state, uint128 init_seq) {
  state_ = 0;
  increment_ = (init_seq << 1) | 1u;
  Step();
  state_ += init_state;
  Step();
}

Pcg64 Pcg64::FromSeedSequence(const SeedSequence& seq) {
  const auto words = seq.GenerateState64(4);
  return Pcg64(MakeUint128(words[0], words[1]), MakeUint128(words[2], words[3]));
}

Pcg64 Pcg64::FromRawState(uint128 state, uint128 increment) {
  if ((increment & 1u) == 0) {
    throw std::domain_error("PCG64 increment must be odd");
  }
  Pcg64 pcg;
  pcg.state_ = state;
  pcg.increment_ = increment;
  return pcg;
}

void Pcg64::Advance(uint128 delta) {
  // Brown, "Random number generation with arbitrary strides" (1994).
  uint128 cur_mult = kMultiplier;
  uint128 cur_plus = increment_;
  uint128 acc_mult = 1;
  uint128 acc_plus = 0;
  while (delta > 0) {
    if (delta & 1u) {
      acc_mult *= cur_mult;
      acc_plus = acc_plus * cur_mult + cur_plus;
    }
    cur_plus = (cur_mult + 1) * cur_plus;
    cur_mult *= cur_mult;
    delta >>= 1;
  }
  state_ = acc_mult * state_ + acc_plus;
}

}  // namespace dpseedkit
