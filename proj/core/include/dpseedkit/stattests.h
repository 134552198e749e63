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

#ifndef DPSEEDKIT_STATTESTS_H_
#define DPSEEDKIT_STATTESTS_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace dpseedkit {

// Outcome of one statistical test. passed == applicable && p_value >= alpha.
// A test whose precondition fails is reported with applicable = false,
// p_value = 0 and passed = false.
struct TestReport {
  std::string name;
  std::size_t sample_size = 0;
  double statistic = 0.0;
  double p_value = 0.0;
  double alpha = 0.0;
  bool applicable = true;
  bool passed = false;
};

nlohmann::json ToJson(const TestReport& report);

// Bit string backed by bytes. Bit i is bit (i % 8) of byte i / 8, least
// significant bit first.
class BitString {
 public:
  BitString() = default;
  static BitString FromBytes(std::span<const std::uint8_t> bytes);
  // Words are laid out little-endian, as in a raw dump.
  static BitString FromWords(std::span<const std::uint64_t> words);
  // "1011..." in bit order. Throws std::invalid_argument on other characters.
  static BitString FromString(std::string_view bits);

  std::size_t size() const { return n_bits_; }
  bool operator[](std::size_t i) const {
    return (bytes_[i >> 3] >> (i & 7)) & 1u;
  }
  std::size_t CountOnes() const;
  std::span<const std::uint8_t> bytes() const { return bytes_; }

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t n_bits_ = 0;
};

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), by
// series for x < a + 1 and by Lentz's continued fraction otherwise. Relative
// accuracy about 1e-14. Throws std::domain_error unless a > 0 and x >= 0.
double RegularizedGammaQ(double a, double x);

// Frequency (monobit) test: p = erfc(|S_n| / sqrt(2n)), S_n = #ones - #zeros.
// Throws std::domain_error for fewer than 10 bits.
TestReport Monobit(const BitString& bits, double alpha);

// Runs test: V = 1 + number of bit changes, p = erfc(|V - 2n pi (1 - pi)| /
// (2 sqrt(2n) pi (1 - pi))). Not applicable when |pi - 1/2| >= 2 / sqrt(n).
// Throws std::domain_error for fewer than 10 bits.
TestReport RunsTest(const BitString& bits, double alpha);

// Pearson chi-square against the uniform distribution on k bins, k - 1
// degrees of freedom. Throws std::domain_error when k < 2, when the expected
// count per bin is below 5, or for a sample outside [0, k).
TestReport ChiSquareUniform(std::span<const std::uint64_t> samples,
                            std::uint64_t bins, double alpha);
TestReport ChiSquareFromCounts(std::span<const std::uint64_t> counts, double alpha);
// 256-bin chi-square over byte values.
TestReport ChiSquareBytes(std::span<const std::uint8_t> bytes, double alpha);

// Monobit, runs and 256-bin byte chi-square over one raw stream. Tests whose
// domain checks fail are reported as not applicable.
std::vector<TestReport> RunBattery(std::span<const std::uint8_t> bytes,
                                   double alpha);

struct BiasScanReport {
  static constexpr std::size_t kMaxWitnesses = 64;

  std::uint64_t seeds_scanned = 0;
  // (target, number of seeds whose first output equals it)
  std::vector<std::pair<std::uint32_t, std::uint64_t>> target_hits;
  // Up to kMaxWitnesses seeds per target, in target order, ascending.
  std::vector<std::vector<std::uint32_t>> witnesses;
  // Distinct first outputs among the scanned seeds (sampled scans only).
  std::optional<std::uint64_t> distinct_outputs;
  // Values below small_value_bound never produced as a first output (range
  // scans only).
  std::uint32_t small_value_bound = 0;
  std::vector<std::uint32_t> unreachable_small_values;
};

nlohmann::json ToJson(const BiasScanReport& report);

// First 32-bit output of MT19937 with the classic single-word init for each
// seed; counts hits on `targets`. Throws std::domain_error for an empty seed
// set.
BiasScanReport FirstOutputBiasScan(std::span<const std::uint32_t> seeds,
                                   std::span<const std::uint32_t> targets);

// Same over the seed range [begin, end) (end <= 2^32), split across `threads`
// workers. Also records which values below small_value_bound are never hit.
// distinct_outputs is not computed: it would need a 2^32-bit table.
BiasScanReport FirstOutputBiasScanRange(std::uint64_t begin, std::uint64_t end,
                                        std::span<const std::uint32_t> targets,
                                        std::uint32_t small_value_bound,
                                        unsigned threads);

}  // namespace dpseedkit

#endif  // DPSEEDKIT_STATTESTS_H_
