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

#include "dpseedkit/bigint.h"

#include <stdexcept>

namespace dpseedkit {

BigUint ParseDecimal(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("empty decimal integer");
  }
  BigUint value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a non-negative decimal integer: " +
                                  std::string(text));
    }
    value *= 10;
    value += static_cast<unsigned>(c - '0');
  }
  return value;
}

std::string ToDecimal(const BigUint& value) { return value.str(); }

std::vector<std::uint32_t> IntToWordArray(const BigUint& n) {
  if (n < 0) {
    throw std::domain_error("seed must be non-negative");
  }
  std::vector<std::uint32_t> words;
  BigUint rest = n;
  do {
    words.push_back(static_cast<std::uint32_t>(rest & 0xffffffffu));
    rest >>= 32;
  } while (rest != 0);
  return words;
}

BigUint WordArrayToInt(std::span<const std::uint32_t> words) {
  BigUint value = 0;
  for (auto it = words.rbegin(); it != words.rend(); ++it) {
    value <<= 32;
    value |= *it;
  }
  return value;
}

uint128 ToUint128(const BigUint& value) {
  if (value < 0 || (value >> 128) != 0) {
    throw std::domain_error("value does not fit in 128 bits");
  }
  const auto lo = static_cast<std::uint64_t>(value & 0xffffffffffffffffull);
  const auto hi = static_cast<std::uint64_t>(value >> 64);
  return MakeUint128(hi, lo);
}

BigUint FromUint128(uint128 value) {
  BigUint out = static_cast<std::uint64_t>(value >> 64);
  out <<= 64;
  out |= static_cast<std::uint64_t>(value);
  return out;
}

}  // namespace dpseedkit
