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

#ifndef DPSEEDKIT_DISPATCH_H_
#define DPSEEDKIT_DISPATCH_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <variant>

#include "dpseedkit/bigint.h"
#include "dpseedkit/chacha20.h"
#include "dpseedkit/mt19937.h"
#include "dpseedkit/pcg64.h"
#include "dpseedkit/seed_sequence.h"

namespace dpseedkit {

enum class GeneratorKind { kMt19937, kPcg64, kChaCha20 };

std::string_view GeneratorName(GeneratorKind kind);
// Accepts "mt19937", "pcg64" and "csprng". Throws std::invalid_argument.
GeneratorKind ParseGeneratorKind(std::string_view name);

// Where a generator came from.
enum class Provenance {
  kSeeded,        // built here from an explicit seed; reproducible
  kUserProvided,  // constructed by the caller and passed in as-is
  kDefaultSecure  // no seed given; wraps the CSPRNG
};

std::string_view ProvenanceName(Provenance provenance);

using BitGenerator = std::variant<Mt19937, Pcg64, ChaCha20Rng>;

// A bit generator plus its provenance and, for seeded handles, the seed
// sequence it was built from. Single owner: move between threads freely, never
// use concurrently.
class GeneratorHandle {
 public:
  GeneratorHandle(BitGenerator generator, Provenance provenance,
                  std::optional<SeedSequence> seed_sequence = std::nullopt);

  // Seeded handle built from `seq`.
  static GeneratorHandle FromSeedSequence(SeedSequence seq,
                                          GeneratorKind kind = GeneratorKind::kPcg64);
  // Fresh CSPRNG with DefaultSecure provenance.
  static GeneratorHandle DefaultSecure();
  // Wraps a caller-built generator.
  static GeneratorHandle UserProvided(BitGenerator generator);

  std::uint64_t NextU64();

  GeneratorKind kind() const;
  Provenance provenance() const { return provenance_; }
  bool is_secure() const { return kind() == GeneratorKind::kChaCha20; }

  const BitGenerator& bit_generator() const { return generator_; }
  BitGenerator& bit_generator() { return generator_; }

  // Present for handles created from a seed sequence.
  const std::optional<SeedSequence>& seed_sequence() const { return seed_sequence_; }
  std::optional<SeedSequence>& seed_sequence() { return seed_sequence_; }

 private:
  BitGenerator generator_;
  Provenance provenance_;
  std::optional<SeedSequence> seed_sequence_;
};

using HandlePtr = std::shared_ptr<GeneratorHandle>;

// The three accepted forms of a random_state argument.
class RandomStateSpec {
 public:
  struct Absent {};

  static RandomStateSpec Unseeded() { return RandomStateSpec(Absent{}); }
  // Throws std::domain_error for a negative seed.
  static RandomStateSpec Seed(BigUint seed);
  // Throws std::invalid_argument for a null handle.
  static RandomStateSpec Instance(HandlePtr handle);

  bool is_absent() const { return std::holds_alternative<Absent>(value_); }
  const BigUint* seed() const { return std::get_if<BigUint>(&value_); }
  const HandlePtr* instance() const { return std::get_if<HandlePtr>(&value_); }

 private:
  using Value = std::variant<Absent, BigUint, HandlePtr>;
  explicit RandomStateSpec(Value value) : value_(std::move(value)) {}

  Value value_;
};

// Absent -> new DefaultSecure CSPRNG handle.
// Seed s -> new PCG64 handle from SeedSequence(s), provenance Seeded.
// Instance h -> h itself (same object, so draws are visible to all holders).
HandlePtr CheckRandomState(const RandomStateSpec& spec);

// Uniform noise interface shared by the secure and seeded backends.
class NoiseSource {
 public:
  explicit NoiseSource(HandlePtr handle);

  std::uint64_t NextU64() { return handle_->NextU64(); }

  bool is_secure() const { return handle_->is_secure(); }
  Provenance provenance() const { return handle_->provenance(); }
  const GeneratorHandle& handle() const { return *handle_; }

 private:
  HandlePtr handle_;
};

// DefaultSecure handles get a fresh CSPRNG per call; Seeded and UserProvided
// handles are used as they are, so seeded runs stay reproducible.
NoiseSource ResolveDpNoiseSource(const HandlePtr& handle);

}  // namespace dpseedkit

#endif  // DPSEEDKIT_DISPATCH_H_
