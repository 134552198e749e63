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

#ifndef DPSEEDKIT_SEED_DESCRIPTOR_H_
#define DPSEEDKIT_SEED_DESCRIPTOR_H_

#include <string_view>

#include <nlohmann/json.hpp>

#include "dpseedkit/seed_sequence.h"

namespace dpseedkit {

// Spawn descriptor: {"entropy": "<decimal>", "spawn_key": [k0, k1, ...]}.
// List-valued entropy is written as an array of decimal strings. Decimal
// strings keep entropy wider than 64 bits exact in any JSON reader.
nlohmann::json ToDescriptor(const SeedSequence& seq);

// Inverse of ToDescriptor. Also accepts a bare JSON integer for "entropy".
// Throws std::invalid_argument on malformed input.
SeedSequence FromDescriptor(const nlohmann::json& descriptor);
SeedSequence ParseDescriptor(std::string_view json_text);

}  // namespace dpseedkit

#endif  // DPSEEDKIT_SEED_DESCRIPTOR_H_
