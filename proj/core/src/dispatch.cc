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

#include "dpseedkit/dispatch.h"

#include <stdexcept>
#include <string>
#include <utility>

namespace dpseedkit {

std::string_view GeneratorName(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kMt19937:
      return "mt19937";
    case GeneratorKind::kPcg64:
      return "pcg64";
    case GeneratorKind::kChaCha20:
      return "csprng";
  }
  return "unknown";
}

GeneratorKind ParseGeneratorKind(std::string_view name) {
  if (name == "mt19937") return GeneratorKind::kMt19937;
  if (name == "pcg64") return GeneratorKind::kPcg64;
  if (name == "csprng") return GeneratorKind::kChaCha20;
  throw std::invalid_argument("unknown generator: " + std::string(name));
}

std::string_view ProvenanceName(Provenance provenance) {
  switch (provenance) {
    case Provenance::kSeeded:
      return "seeded";
    case Provenance::kUserProvided:
      return "user_provided";
    case Provenance::kDefaultSecure:
      return "default_secure";
  }
  return "unknown";
}

GeneratorHandle::GeneratorHandle(BitGenerator generator, Provenance provenance,
                                 std::optional<SeedSequence> seed_sequence)
    : generator_(std::move(generator)),
      provenance_(provenance),
      seed_sequence_(std::move(seed_sequence)) {
  if (provenance_ == Provenance::kDefaultSecure && !is_secure()) {
    throw std::invalid_argument("DefaultSecure handles must wrap the CSPRNG");
  }
}

GeneratorHandle GeneratorHandle::FromSeedSequence(SeedSequence seq,
                                                  GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kMt19937: {
      auto mt = Mt19937::FromSeedSequence(seq);
      return GeneratorHandle(std::move(mt), Provenance::kSeeded, std::move(seq));
    }
    case GeneratorKind::kPcg64: {
      auto pcg = Pcg64::FromSeedSequence(seq);
      return GeneratorHandle(pcg, Provenance::kSeeded, std::move(seq));
    }
    case GeneratorKind::kChaCha20:
      break;
  }
  throw std::invalid_argument("the CSPRNG cannot be seeded");
}

GeneratorHandle GeneratorHandle::DefaultSecure() {
  return GeneratorHandle(ChaCha20Rng::FromOsEntropy(), Provenance::kDefaultSecure);
}

GeneratorHandle GeneratorHandle::UserProvided(BitGenerator generator) {
  return GeneratorHandle(std::move(generator), Provenance::kUserProvided);
}

std::uint64_t GeneratorHandle::NextU64() {
  return std::visit([](auto& gen) { return gen.NextU64(); }, generator_);
}

GeneratorKind GeneratorHandle::kind() const {
  switch (generator_.index()) {
    case 0:
      return GeneratorKind::kMt19937;
    case 1:
      return GeneratorKind::kPcg64;
    default:
      return GeneratorKind::kChaCha20;
  }
}

RandomStateSpec RandomStateSpec::Seed(BigUint seed) {
  if (seed < 0) {
    throw std::domain_error("random_state seed must be non-negative");
  }
  return RandomStateSpec(std::move(seed));
}

RandomStateSpec RandomStateSpec::Instance(HandlePtr handle) {
  if (!handle) {
    throw std::invalid_argument("random_state instance must not be null");
  }
  return RandomStateSpec(std::move(handle));
}

HandlePtr CheckRandomState(const RandomStateSpec& spec) {
  if (spec.is_absent()) {
    return std::make_shared<GeneratorHandle>(GeneratorHandle::DefaultSecure());
  }
  if (const BigUint* seed = spec.seed()) {
    return std::make_shared<GeneratorHandle>(
        GeneratorHandle::FromSeedSequence(SeedSequence(*seed)));
  }
  return *spec.instance();
}

NoiseSource::NoiseSource(HandlePtr handle) : handle_(std::move(handle)) {
  if (!handle_) {
    throw std::invalid_argument("noise source needs a generator");
  }
}

NoiseSource ResolveDpNoiseSource(const HandlePtr& handle) {
  if (!handle) {
    throw std::invalid_argument("noise source needs a generator");
  }
  if (handle->provenance() == Provenance::kDefaultSecure) {
    return NoiseSource(
        std::make_shared<GeneratorHandle>(GeneratorHandle::DefaultSecure()));
  }
  return NoiseSource(handle);
}

}  // namespace dpseedkit
