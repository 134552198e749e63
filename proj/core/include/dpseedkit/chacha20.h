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

#ifndef DPSEEDKIT_CHACHA20_H_
#define DPSEEDKIT_CHACHA20_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace dpseedkit {

using ChaChaKey = std::array<std::uint32_t, 8>;
using ChaChaBlock = std::array<std::uint32_t, 16>;

// One 20-round ChaCha block in the original layout: words 12-13 hold a 64-bit
// block counter (low word first), words 14-15 a 64-bit nonce.
ChaChaBlock ChaCha20Block(const ChaChaKey& key, std::uint64_t counter,
                          std::uint64_t nonce);

// Cryptographically secure generator: ChaCha20 keystream in counter mode with
// a zero nonce. Outputs are the keystream read as little-endian 64-bit words.
//
// The key cannot be read back and the engine cannot be copied, so a secure
// stream is never duplicated or exported. The key is wiped on destruction.
class ChaCha20Rng {
 public:
  // Fresh 256-bit key from the OS.
  static ChaCha20Rng FromOsEntropy();

  // Keyed construction (32 bytes, little-endian words). Intended for
  // known-answer tests; production code uses FromOsEntropy().
  explicit ChaCha20Rng(std::span<const std::uint8_t, 32> key);

  ChaCha20Rng(const ChaCha20Rng&) = delete;
  ChaCha20Rng& operator=(const ChaCha20Rng&) = delete;
  ChaCha20Rng(ChaCha20Rng&& other) noexcept;
  ChaCha20Rng& operator=(ChaCha20Rng&& other) noexcept;
  ~ChaCha20Rng();

  std::uint64_t NextU64();

  // Number of keystream blocks produced so far; strictly increasing.
  std::uint64_t counter() const { return counter_; }

 private:
  void Refill();
  void Wipe();

  ChaChaKey key_{};
  std::uint64_t counter_ = 0;
  ChaChaBlock buffer_{};
  std::size_t position_ = 16;  // 32-bit words consumed from buffer_
};

}  // namespace dpseedkit

#endif  // DPSEEDKIT_CHACHA20_H_
