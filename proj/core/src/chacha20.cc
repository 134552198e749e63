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

#include "dpseedkit/chacha20.h"

#include <bit>
#include <string.h>

#include "dpseedkit/os_entropy.h"

namespace dpseedkit {
namespace {

constexpr std::array<std::uint32_t, 4> kSigma = {0x61707865u, 0x3320646eu,
                                                 0x79622d32u, 0x6b206574u};

inline void QuarterRound(ChaChaBlock& x, int a, int b, int c, int d) {
  x[a] += x[b]; x[d] = std::rotl(x[d] ^ x[a], 16);
  x[c] += x[d]; x[b] = std::rotl(x[b] ^ x[c], 12);
  x[a] += x[b]; x[d] = std::rotl(x[d] ^ x[a], 8);
  x[c] += x[d]; x[b] = std::rotl(x[b] ^ x[c], 7);
}

}  // namespace

ChaChaBlock ChaCha20Block(const ChaChaKey& key, std::uint64_t counter,
                          std::uint64_t nonce) {
  ChaChaBlock input;
  for (int i = 0; i < 4; ++i) input[i] = kSigma[i];
  for (int i = 0; i < 8; ++i) input[4 + i] = key[i];
  input[12] = static_cast<std::uint32_t>(counter);
  input[13] = static_cast<std::uint32_t>(counter >> 32);
  input[14] = static_cast<std::uint32_t>(nonce);
  input[15] = static_cast<std::uint32_t>(nonce >> 32);

  ChaChaBlock x = input;
  for (int round = 0; round < 10; ++round) {
    QuarterRound(x, 0, 4, 8, 12);
    QuarterRound(x, 1, 5, 9, 13);
    QuarterRound(x, 2, 6, 10, 14);
    QuarterRound(x, 3, 7, 11, 15);
    QuarterRound(x, 0, 5, 10, 15);
    QuarterRound(x, 1, 6, 11, 12);
    QuarterRound(x, 2, 7, 8, 13);
    QuarterRound(x, 3, 4, 9, 14);
  }
  for (int i = 0; i < 16; ++i) x[i] += input[i];
  return x;
}

ChaCha20Rng::ChaCha20Rng(std::span<const std::uint8_t, 32> key) {
  for (std::size_t i = 0; i < 8; ++i) {
    key_[i] = static_cast<std::uint32_t>(key[4 * i]) |
              (static_cast<std::uint32_t>(key[4 * i + 1]) << 8) |
              (static_cast<std::uint32_t>(key[4 * i + 2]) << 16) |
              (static_cast<std::uint32_t>(key[4 * i + 3]) << 24);
  }
}

ChaCha20Rng ChaCha20Rng::FromOsEntropy() {
  std::array<std::uint8_t, 32> key;
  FillOsEntropy(key);
  ChaCha20Rng rng(key);
  explicit_bzero(key.data(), key.size());
  return rng;
}

ChaCha20Rng::ChaCha20Rng(ChaCha20Rng&& other) noexcept
    : key_(other.key_),
      counter_(other.counter_),
      buffer_(other.buffer_),
      position_(other.position_) {
  other.Wipe();
}

ChaCha20Rng& ChaCha20Rng::operator=(ChaCha20Rng&& other) noexcept {
  if (this != &other) {
    key_ = other.key_;
    counter_ = other.counter_;
    buffer_ = other.buffer_;
    position_ = other.position_;
    other.Wipe();
  }
  return *this;
}

ChaCha20Rng::~ChaCha20Rng() { Wipe(); }

void ChaCha20Rng::Wipe() {
  explicit_bzero(key_.data(), sizeof(key_));
  explicit_bzero(buffer_.data(), sizeof(buffer_));
  position_ = buffer_.size();
}

void ChaCha20Rng::Refill() {
  buffer_ = ChaCha20Block(key_, counter_, 0);
  ++counter_;
  position_ = 0;
}

std::uint64_t ChaCha20Rng::NextU64() {
  if (position_ + 2 > buffer_.size()) {
    Refill();
  }
  const std::uint64_t lo = buffer_[position_];
  const std::uint64_t hi = buffer_[position_ + 1];
  position_ += 2;
  return lo | (hi << 32);
}

}  // namespace dpseedkit
