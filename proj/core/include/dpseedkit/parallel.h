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

#ifndef DPSEEDKIT_PARALLEL_H_
#define DPSEEDKIT_PARALLEL_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "dpseedkit/bigint.h"
#include "dpseedkit/dispatch.h"

namespace dpseedkit {

// Raised for operations a generator cannot support, e.g. jumping MT19937 or
// cloning the CSPRNG.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when a block would overlap one already handed out.
class BlockOverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a persisted ledger fails its checksum or format checks.
class LedgerCorruptError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One Seeded handle per child of seq.Spawn(n). Each child keeps its seed
// sequence, so grandchildren come from spawning the child's handle.
std::vector<HandlePtr> SpawnGenerators(SeedSequence& seq, std::size_t n,
                                       GeneratorKind kind = GeneratorKind::kPcg64);
// Spawns from the handle's own seed sequence. Throws UnsupportedOperation for
// handles without one.
std::vector<HandlePtr> SpawnGenerators(GeneratorHandle& parent, std::size_t n);

// floor((phi - 1) * 2^128), the PCG64 jump distance.
inline constexpr uint128 kPcg64JumpDistance =
    MakeUint128(0x9e3779b97f4a7c15ULL, 0xf39cc0605cedc834ULL);

// New handle whose PCG64 state is advanced by k * kPcg64JumpDistance
// (mod 2^128). The original is untouched. The result has no seed sequence, so
// it cannot spawn children that alias the original's. Throws
// UnsupportedOperation for other generators.
HandlePtr Jumped(const GeneratorHandle& handle, uint128 k = 1);

// Substream of a copy of `mother`: the j-th output is mother output jT + t,
// where outputs are 64-bit draws. Skips by discarding T - 1 draws per step.
class LeapfrogStream {
 public:
  // Throws std::domain_error unless 0 <= t < T, UnsupportedOperation for the
  // CSPRNG.
  LeapfrogStream(const GeneratorHandle& mother, std::uint64_t stride,
                 std::uint64_t index);

  std::uint64_t NextU64();

 private:
  std::variant<Mt19937, Pcg64> generator_;
  std::uint64_t stride_;
  std::uint64_t index_;
  bool started_ = false;
};

struct BlockDescriptor {
  std::string stream_id;
  std::uint64_t task = 0;
  std::uint64_t length = 0;
  uint128 offset = 0;  // task * length

  friend bool operator==(const BlockDescriptor&, const BlockDescriptor&) = default;
};

// Records which (stream id, task) blocks have been handed out. The set only
// grows. When opened on a file, every assignment is appended as
//   stream-id <TAB> task <TAB> length <TAB> crc32-hex
// and the file is replayed and verified on open.
class BlockLedger {
 public:
  BlockLedger() = default;
  // Loads (or creates) a persisted ledger. Throws LedgerCorruptError on a bad
  // line and std::system_error-derived errors on I/O failure.
  static BlockLedger Open(const std::filesystem::path& path);

  // Blocks of one stream all have the length of the first block assigned to
  // it. Throws BlockOverlapError for a reused (stream id, task) or a length
  // mismatch, std::domain_error for length 0 or an id containing tabs or
  // newlines.
  BlockDescriptor Assign(const std::string& stream_id, std::uint64_t task,
                         std::uint64_t length);

  bool Contains(const std::string& stream_id, std::uint64_t task) const;
  std::size_t size() const { return assigned_.size(); }
  const std::set<std::pair<std::string, std::uint64_t>>& assigned() const {
    return assigned_;
  }
  const std::optional<std::filesystem::path>& path() const { return path_; }

 private:
  void Record(const std::string& stream_id, std::uint64_t task,
              std::uint64_t length);

  std::set<std::pair<std::string, std::uint64_t>> assigned_;
  std::map<std::string, std::uint64_t> lengths_;
  std::optional<std::filesystem::path> path_;
};

// Copy of `mother` advanced to the block's first draw (PCG64 only).
HandlePtr BlockGenerator(const GeneratorHandle& mother,
                         const BlockDescriptor& block);

using HighPrecisionFloat = boost::multiprecision::cpp_bin_float_100;

// Birthday bound for n streams with uniformly random key_bits-bit keys:
//   1 - prod_{i=1}^{n-1} (1 - i / 2^key_bits),
// evaluated term by term in 100-digit arithmetic (O(n)). Throws
// std::domain_error for key_bits < 1.
HighPrecisionFloat CollisionProbabilityExact(std::uint64_t n, unsigned key_bits);
// 1 - exp(-n(n-1) / 2^(key_bits+1)) in 100-digit arithmetic.
HighPrecisionFloat CollisionProbabilityApprox(std::uint64_t n, unsigned key_bits);

inline double CollisionProbability(std::uint64_t n, unsigned key_bits) {
  return CollisionProbabilityExact(n, key_bits).convert_to<double>();
}

}  // namespace dpseedkit

#endif  // DPSEEDKIT_PARALLEL_H_
