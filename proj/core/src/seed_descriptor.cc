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

#include "dpseedkit/seed_descriptor.h"

#include <stdexcept>
#include <string>
#include <vector>

namespace dpseedkit {
namespace {

BigUint EntropyValue(const nlohmann::json& value) {
  if (value.is_string()) {
    return ParseDecimal(value.get<std::string>());
  }
  if (value.is_number_unsigned()) {
    return BigUint(value.get<std::uint64_t>());
  }
  throw std::invalid_argument(
      "descriptor entropy must be a decimal string or non-negative integer");
}

}  // namespace

nlohmann::json ToDescriptor(const SeedSequence& seq) {
  nlohmann::json entropy;
  if (seq.entropy_is_list()) {
    entropy = nlohmann::json::array();
    for (const auto& value : seq.entropy_values()) {
      entropy.push_back(ToDecimal(value));
    }
  } else {
    entropy = ToDecimal(seq.entropy());
  }
  return nlohmann::json{{"entropy", entropy}, {"spawn_key", seq.spawn_key()}};
}

SeedSequence FromDescriptor(const nlohmann::json& descriptor) {
  if (!descriptor.is_object() || !descriptor.contains("entropy")) {
    throw std::invalid_argument("descriptor must be an object with \"entropy\"");
  }
  std::vector<std::uint64_t> spawn_key;
  if (descriptor.contains("spawn_key")) {
    const auto& key = descriptor.at("spawn_key");
    if (!key.is_array()) {
      throw std::invalid_argument("descriptor spawn_key must be an array");
    }
    for (const auto& k : key) {
      if (!k.is_number_unsigned()) {
        throw std::invalid_argument(
            "descriptor spawn_key entries must be non-negative integers");
      }
      spawn_key.push_back(k.get<std::uint64_t>());
    }
  }
  const auto& entropy = descriptor.at("entropy");
  if (entropy.is_array()) {
    std::vector<BigUint> values;
    for (const auto& v : entropy) values.push_back(EntropyValue(v));
    return SeedSequence(std::move(values), std::move(spawn_key));
  }
  return SeedSequence(EntropyValue(entropy), std::move(spawn_key));
}

SeedSequence ParseDescriptor(std::string_view json_text) {
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("descriptor is not valid JSON: ") +
                                e.what());
  }
  return FromDescriptor(parsed);
}

}  // namespace dpseedkit
