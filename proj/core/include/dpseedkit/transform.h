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

#ifndef DPSEEDKIT_TRANSFORM_H_
#define DPSEEDKIT_TRANSFORM_H_

#include <concepts>
#include <cstdint>
#include <limits>

#include "dpseedkit/bigint.h"

namespace dpseedkit {

// Anything that yields uniformly distributed 64-bit words.
template <typename G>
concept UniformBitSource = requires(G& g) {
  { g.NextU64() } -> std::same_as<std::uint64_t>;
};

inline constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

// Uniform double in [0, 1) with 53-bit granularity: (word >> 11) * 2^-53.
// Consumes exactly one 64-bit word.
template <UniformBitSource G>
double NextDouble(G& gen) {
  return static_cast<double>(gen.NextU64() >> 11) * kTwoPowMinus53;
}

// Uniform integer in [low, high] without modulo bias (Lemire's multiply-shift
// with rejection on the low product bits). The full 64-bit range returns the
// raw word. Throws std::domain_error when low > high.
template <UniformBitSource G>
std::uint64_t BoundedUint(G& gen, std::uint64_t low, std::uint64_t high) {
  if (low > high) {
    throw std::domain_error("bounded_int: low > high");
  }
  const std::uint64_t range = high - low;
  if (range == std::numeric_limits<std::uint64_t>::max()) {
    return gen.NextU64();
  }
  const std::uint64_t span = range + 1;
  uint128 product = static_cast<uint128>(gen.NextU64()) * span;
  auto low_bits = static_cast<std::uint64_t>(product);
  if (low_bits < span) {
    const std::uint64_t threshold = (0 - span) % span;
    while (low_bits < threshold) {
      product = static_cast<uint128>(gen.NextU64()) * span;
      low_bits = static_cast<std::uint64_t>(product);
    }
  }
  return low + static_cast<std::uint64_t>(product >> 64);
}

template <UniformBitSource G>
std::int64_t BoundedInt(G& gen, std::int64_t low, std::int64_t high) {
  if (low > high) {
    throw std::domain_error("bounded_int: low > high");
  }
  const auto offset = BoundedUint(
      gen, 0, static_cast<std::uint64_t>(high) - static_cast<std::uint64_t>(low));
  return static_cast<std::int64_t>(static_cast<std::uint64_t>(low) + offset);
}

// Inverse CDF of Laplace(0, scale) at u in (0, 1):
//   -scale * sign(u - 1/2) * ln(1 - 2|u - 1/2|).
// Evaluated as scale*ln(2u) below the median and -scale*ln(2 - 2u) above it,
// which keeps the result exactly antisymmetric whenever 1 - u is exact.
// Throws std::domain_error for u outside (0, 1) or scale <= 0.
double LaplaceInverseCdf(double u, double scale);

}  // namespace dpseedkit

#endif  // DPSEEDKIT_TRANSFORM_H_
