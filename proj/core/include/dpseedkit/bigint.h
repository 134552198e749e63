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

#ifndef DPSEEDKIT_BIGINT_H_
#define DPSEEDKIT_BIGINT_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dpseedkit {

// Arbitrary-precision integer used for seeds and entropy. Seeds must be
// non-negative; every entry point that accepts one checks this.
using BigUint = boost::multiprecision::cpp_int;

__extension__ typedef unsigned __int128 uint128;

// Parses a seed written as a plain decimal string ("0", "12345", ...). No sign,
// no whitespace, no radix prefix. Throws std::invalid_argument otherwise.
BigUint ParseDecimal(std::string_view text);

std::string ToDecimal(const BigUint& value);

// Little-endian base-2^32 digits of `n`, lowest bits first. IntToWordArray(0)
// is {0}. Throws std::domain_error for negative input.
std::vector<std::uint32_t> IntToWordArray(const BigUint& n);

BigUint WordArrayToInt(std::span<const std::uint32_t> words);

// Throws std::domain_error if `value` is negative or does not fit in 128 bits.
uint128 ToUint128(const BigUint& value);
BigUint FromUint128(uint128 value);

inline constexpr uint128 MakeUint128(std::uint64_t hi, std::uint64_t lo) {
  return (static_cast<uint128>(hi) << 64) | lo;
}

}  // namespace dpseedkit

#endif  // DPSEEDKIT_BIGINT_H_
