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

#include "dpseedkit/mt19937.h"

#include <stdexcept>

#include "dpseedkit/seed_sequence.h"

namespace dpseedkit {
namespace {

constexpr std::size_t kN = Mt19937::kStateWords;
constexpr std::size_t kM = 397;
constexpr std::uint32_t kMatrixA = 0x9908b0dfu;
constexpr std::uint32_t kUpperMask = 0x80000000u;
constexpr std::uint32_t kLowerMask = 0x7fffffffu;
constexpr std::uint32_t kInitMult = 1812433253u;

constexpr std::uint32_t Temper(std::uint32_t y) {
  y ^= y >> 11;
  y ^= (y << 7) & 0x9d2c5680u;
  y ^= (y << 15) & 0xefc60000u;
  y ^= y >> 18;
  return y;
}

constexpr std::uint32_t TwistWord(std::uint32_t cur, std::uint32_t next,
                                  std::uint32_t far) {
  const std::uint32_t y = (cur & kUpperMask) | (next & kLowerMask);
  return far ^ (y >> 1) ^ ((y & 1u) ? kMatrixA : 0u);
}

}  // namespace

Mt19937::Mt19937(const State& state) : state_(state) {
  if (state_.index > kN) {
    throw std::domain_error("MT19937 index out of range");
  }
}

Mt19937 Mt19937::FromSeedSequence(const SeedSequence& seq) {
  const auto words = seq.GenerateState32(kN);
  Mt19937 mt;
  std::copy(words.begin(), words.end(), mt.state_.words.begin());
  mt.state_.words[0] = kUpperMask;
  mt.state_.index = kN;
  return mt;
}

Mt19937 Mt19937::FromU32(std::uint32_t seed) {
  Mt19937 mt;
  auto& w = mt.state_.words;
  w[0] = seed;
  for (std::size_t i = 1; i < kN; ++i) {
    w[i] = kInitMult * (w[i - 1] ^ (w[i - 1] >> 30)) +
           static_cast<std::uint32_t>(i);
  }
  mt.state_.index = kN;
  return mt;
}

void Mt19937::Twist() {
  auto& w = state_.words;
  for (std::size_t i = 0; i < kN; ++i) {
    w[i] = TwistWord(w[i], w[(i + 1) % kN], w[(i + kM) % kN]);
  }
  state_.index = 0;
}

std::uint32_t Mt19937::NextU32() {
  if (state_.index >= kN) {
    Twist();
  }
  return Temper(state_.words[state_.index++]);
}

std::uint64_t Mt19937::NextU64() {
  const std::uint64_t hi = NextU32();
  const std::uint64_t lo = NextU32();
  return (hi << 32) | lo;
}

std::uint32_t Mt19937FirstOutput(std::uint32_t seed) {
  std::uint32_t w0 = seed;
  std::uint32_t prev = seed;
  std::uint32_t w1 = 0;
  for (std::uint32_t i = 1; i <= kM; ++i) {
    prev = kInitMult * (prev ^ (prev >> 30)) + i;
    if (i == 1) w1 = prev;
  }
  return Temper(TwistWord(w0, w1, prev));
}

}  // namespace dpseedkit
