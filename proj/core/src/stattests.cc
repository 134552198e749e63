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

#include "dpseedkit/stattests.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "dpseedkit/mt19937.h"

namespace dpseedkit {
namespace {

constexpr std::size_t kMinBits = 10;

TestReport MakeReport(std::string name, std::size_t n, double statistic,
                      double p_value, double alpha) {
  TestReport report;
  report.name = std::move(name);
  report.sample_size = n;
  report.statistic = statistic;
  report.p_value = std::clamp(p_value, 0.0, 1.0);
  report.alpha = alpha;
  report.applicable = true;
  report.passed = report.p_value >= alpha;
  return report;
}

TestReport NotApplicable(std::string name, std::size_t n, double statistic,
                         double alpha) {
  TestReport report;
  report.name = std::move(name);
  report.sample_size = n;
  report.statistic = statistic;
  report.p_value = 0.0;
  report.alpha = alpha;
  report.applicable = false;
  report.passed = false;
  return report;
}

void CheckBits(const BitString& bits) {
  if (bits.size() < kMinBits) {
    throw std::domain_error("bit test needs at least 10 bits");
  }
}

double GammaQSeries(double a, double x) {
  // P(a, x) = e^-x x^a / Gamma(a + 1) * sum_n x^n / ((a+1)...(a+n))
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
  }
  const double log_prefix = -x + a * std::log(x) - std::lgamma(a);
  return 1.0 - sum * std::exp(log_prefix);
}

double GammaQContinuedFraction(double a, double x) {
  // Modified Lentz evaluation of the continued fraction for Gamma(a, x).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

nlohmann::json ToJson(const TestReport& report) {
  return nlohmann::json{{"test", report.name},
                        {"sample_size", report.sample_size},
                        {"statistic", report.statistic},
                        {"p_value", report.p_value},
                        {"alpha", report.alpha},
                        {"applicable", report.applicable},
                        {"passed", report.passed}};
}

BitString BitString::FromBytes(std::span<const std::uint8_t> bytes) {
  BitString bits;
  bits.bytes_.assign(bytes.begin(), bytes.end());
  bits.n_bits_ = bytes.size() * 8;
  return bits;
}

BitString BitString::FromWords(std::span<const std::uint64_t> words) {
  BitString bits;
  bits.bytes_.resize(words.size() * 8);
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (int b = 0; b < 8; ++b) {
      bits.bytes_[8 * i + b] = static_cast<std::uint8_t>(words[i] >> (8 * b));
    }
  }
  bits.n_bits_ = words.size() * 64;
  return bits;
}

BitString BitString::FromString(std::string_view text) {
  BitString bits;
  bits.bytes_.assign((text.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      bits.bytes_[i >> 3] |= static_cast<std::uint8_t>(1u << (i & 7));
    } else if (text[i] != '0') {
      throw std::invalid_argument("bit strings may only contain 0 and 1");
    }
  }
  bits.n_bits_ = text.size();
  return bits;
}

std::size_t BitString::CountOnes() const {
  std::size_t ones = 0;
  for (std::uint8_t byte : bytes_) ones += std::popcount(byte);
  return ones;
}

double RegularizedGammaQ(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0)) {
    throw std::domain_error("incomplete gamma needs a > 0 and x >= 0");
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return std::clamp(GammaQSeries(a, x), 0.0, 1.0);
  return std::clamp(GammaQContinuedFraction(a, x), 0.0, 1.0);
}

TestReport Monobit(const BitString& bits, double alpha) {
  CheckBits(bits);
  const double n = static_cast<double>(bits.size());
  const double s = 2.0 * static_cast<double>(bits.CountOnes()) - n;
  const double statistic = std::fabs(s) / std::sqrt(n);
  return MakeReport("monobit", bits.size(), statistic,
                    std::erfc(statistic / std::sqrt(2.0)), alpha);
}

TestReport RunsTest(const BitString& bits, double alpha) {
  CheckBits(bits);
  const double n = static_cast<double>(bits.size());
  const double pi = static_cast<double>(bits.CountOnes()) / n;
  if (std::fabs(pi - 0.5) >= 2.0 / std::sqrt(n)) {
    return NotApplicable("runs", bits.size(), 0.0, alpha);
  }
  std::uint64_t changes = 0;
  for (std::size_t i = 1; i < bits.size(); ++i) {
    changes += bits[i] != bits[i - 1];
  }
  const double runs = static_cast<double>(changes) + 1.0;
  const double spread = pi * (1.0 - pi);
  const double p = std::erfc(std::fabs(runs - 2.0 * n * spread) /
                             (2.0 * std::sqrt(2.0 * n) * spread));
  return MakeReport("runs", bits.size(), runs, p, alpha);
}

TestReport ChiSquareFromCounts(std::span<const std::uint64_t> counts,
                               double alpha) {
  if (counts.size() < 2) {
    throw std::domain_error("chi-square needs at least 2 bins");
  }
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  const double expected =
      static_cast<double>(total) / static_cast<double>(counts.size());
  if (expected < 5.0) {
    throw std::domain_error("chi-square needs an expected count of 5 per bin");
  }
  double statistic = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - expected;
    statistic += diff * diff / expected;
  }
  const double dof = static_cast<double>(counts.size() - 1);
  return MakeReport("chi_square", total, statistic,
                    RegularizedGammaQ(dof / 2.0, statistic / 2.0), alpha);
}

TestReport ChiSquareUniform(std::span<const std::uint64_t> samples,
                            std::uint64_t bins, double alpha) {
  if (bins < 2) {
    throw std::domain_error("chi-square needs at least 2 bins");
  }
  if (static_cast<double>(samples.size()) < 5.0 * static_cast<double>(bins)) {
    throw std::domain_error("chi-square needs an expected count of 5 per bin");
  }
  std::vector<std::uint64_t> counts(bins, 0);
  for (auto s : samples) {
    if (s >= bins) {
      throw std::domain_error("chi-square sample outside [0, k)");
    }
    ++counts[s];
  }
  return ChiSquareFromCounts(counts, alpha);
}

TestReport ChiSquareBytes(std::span<const std::uint8_t> bytes, double alpha) {
  std::vector<std::uint64_t> counts(256, 0);
  for (auto b : bytes) ++counts[b];
  return ChiSquareFromCounts(counts, alpha);
}

std::vector<TestReport> RunBattery(std::span<const std::uint8_t> bytes,
                                   double alpha) {
  const auto bits = BitString::FromBytes(bytes);
  std::vector<TestReport> reports;
  auto guarded = [&](const char* name, auto&& test) {
    try {
      reports.push_back(test());
    } catch (const std::domain_error&) {
      reports.push_back(NotApplicable(name, bits.size(), 0.0, alpha));
    }
  };
  guarded("monobit", [&] { return Monobit(bits, alpha); });
  guarded("runs", [&] { return RunsTest(bits, alpha); });
  guarded("chi_square", [&] { return ChiSquareBytes(bytes, alpha); });
  return reports;
}

nlohmann::json ToJson(const BiasScanReport& report) {
  nlohmann::json hits = nlohmann::json::array();
  for (std::size_t i = 0; i < report.target_hits.size(); ++i) {
    const auto& [target, count] = report.target_hits[i];
    nlohmann::json hit{{"target", target}, {"hits", count}};
    if (i < report.witnesses.size()) hit["seeds"] = report.witnesses[i];
    hits.push_back(std::move(hit));
  }
  nlohmann::json out{{"seeds_scanned", report.seeds_scanned}, {"target_hits", hits}};
  if (report.distinct_outputs) out["distinct_outputs"] = *report.distinct_outputs;
  if (report.small_value_bound > 0) {
    out["small_value_bound"] = report.small_value_bound;
    out["unreachable_small_values"] = report.unreachable_small_values;
  }
  return out;
}

BiasScanReport FirstOutputBiasScan(std::span<const std::uint32_t> seeds,
                                   std::span<const std::uint32_t> targets) {
  if (seeds.empty()) {
    throw std::domain_error("bias scan needs at least one seed");
  }
  BiasScanReport report;
  report.seeds_scanned = seeds.size();
  for (auto t : targets) report.target_hits.emplace_back(t, 0);
  report.witnesses.resize(targets.size());

  std::vector<std::uint32_t> outputs;
  outputs.reserve(seeds.size());
  for (auto seed : seeds) {
    const std::uint32_t first = Mt19937FirstOutput(seed);
    outputs.push_back(first);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (first != targets[i]) continue;
      ++report.target_hits[i].second;
      report.witnesses[i].push_back(seed);
    }
  }
  for (auto& w : report.witnesses) {
    std::sort(w.begin(), w.end());
    w.erase(std::unique(w.begin(), w.end()), w.end());
    if (w.size() > BiasScanReport::kMaxWitnesses) w.resize(BiasScanReport::kMaxWitnesses);
  }
  std::sort(outputs.begin(), outputs.end());
  report.distinct_outputs = static_cast<std::uint64_t>(
      std::unique(outputs.begin(), outputs.end()) - outputs.begin());
  return report;
}

BiasScanReport FirstOutputBiasScanRange(std::uint64_t begin, std::uint64_t end,
                                        std::span<const std::uint32_t> targets,
                                        std::uint32_t small_value_bound,
                                        unsigned threads) {
  constexpr std::uint64_t kSeedSpace = std::uint64_t{1} << 32;
  if (begin >= end || end > kSeedSpace) {
    throw std::domain_error("bias scan needs a non-empty range within [0, 2^32)");
  }
  threads = std::max(1u, threads);

  struct Partial {
    std::vector<std::uint64_t> hits;
    std::vector<std::vector<std::uint32_t>> witnesses;
    std::vector<bool> seen_small;
  };
  std::vector<Partial> partials(threads);
  std::vector<std::thread> workers;
  const std::uint64_t total = end - begin;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t lo = begin + total * w / threads;
    const std::uint64_t hi = begin + total * (w + 1) / threads;
    workers.emplace_back([&, w, lo, hi] {
      Partial& part = partials[w];
      part.hits.assign(targets.size(), 0);
      part.witnesses.resize(targets.size());
      part.seen_small.assign(small_value_bound, false);
      for (std::uint64_t seed = lo; seed < hi; ++seed) {
        const std::uint32_t first =
            Mt19937FirstOutput(static_cast<std::uint32_t>(seed));
        if (first < small_value_bound) part.seen_small[first] = true;
        for (std::size_t i = 0; i < targets.size(); ++i) {
          if (first != targets[i]) continue;
          if (++part.hits[i] <= BiasScanReport::kMaxWitnesses) {
            part.witnesses[i].push_back(static_cast<std::uint32_t>(seed));
          }
        }
      }
    });
  }
  for (auto& worker : workers) worker.join();

  BiasScanReport report;
  report.seeds_scanned = total;
  report.small_value_bound = small_value_bound;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::uint64_t hits = 0;
    std::vector<std::uint32_t> witnesses;
    for (const auto& part : partials) {
      hits += part.hits[i];
      witnesses.insert(witnesses.end(), part.witnesses[i].begin(), part.witnesses[i].end());
    }
    if (witnesses.size() > BiasScanReport::kMaxWitnesses) {
      witnesses.resize(BiasScanReport::kMaxWitnesses);
    }
    report.target_hits.emplace_back(targets[i], hits);
    report.witnesses.push_back(std::move(witnesses));
  }
  for (std::uint32_t v = 0; v < small_value_bound; ++v) {
    bool seen = false;
    for (const auto& part : partials) seen = seen || part.seen_small[v];
    if (!seen) report.unreachable_small_values.push_back(v);
  }
  return report;
}

}  // namespace dpseedkit
