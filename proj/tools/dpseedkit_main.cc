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

// dpseedkit: reproducible seeding, sampling and auditing from the shell.
//
// Exit codes: 0 success or all tests passed, 1 a statistical test failed,
// 2 usage error, 3 I/O or file-format error.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dpseedkit/dispatch.h"
#include "dpseedkit/laplace.h"
#include "dpseedkit/parallel.h"
#include "dpseedkit/seed_descriptor.h"
#include "dpseedkit/seed_sequence.h"
#include "dpseedkit/stattests.h"
#include "dpseedkit/transform.h"

namespace dpseedkit {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitTestFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

constexpr const char* kLedgerEnv = "DPSEEDKIT_LEDGER";

// Usage problems detected after parsing (bad seed, conflicting flags, ...).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable/unwritable files and malformed inputs.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> ReadBinaryFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading " + path.string());
  return bytes;
}

// Seed source shared by the seeded subcommands: --seed or --descriptor.
struct SeedOptions {
  std::optional<std::string> seed;
  std::optional<std::string> descriptor;

  void Add(CLI::App* cmd) {
    auto* s = cmd->add_option("--seed", seed, "Seed as a decimal integer of any size");
    auto* d = cmd->add_option("--descriptor", descriptor,
                              "Spawn descriptor JSON, inline or a file path");
    s->excludes(d);
  }

  bool given() const { return seed.has_value() || descriptor.has_value(); }

  // nullopt when neither flag was given.
  std::optional<SeedSequence> Resolve() const {
    if (seed) {
      try {
        return SeedSequence(ParseDecimal(*seed));
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--seed: ") + e.what());
      }
    }
    if (descriptor) {
      const bool inline_json =
          descriptor->find_first_not_of(" \t\r\n") != std::string::npos &&
          (*descriptor)[descriptor->find_first_not_of(" \t\r\n")] == '{';
      const std::string text =
          inline_json ? *descriptor : ReadTextFile(*descriptor);
      try {
        return ParseDescriptor(text);
      } catch (const std::invalid_argument& e) {
        if (inline_json) throw UsageError(std::string("--descriptor: ") + e.what());
        throw IoError(std::string("--descriptor: ") + e.what());
      }
    }
    return std::nullopt;
  }
};

// Writes `value` as `bytes` little-endian bytes.
void PutLittleEndian(std::ostream& out, std::uint64_t value, int bytes) {
  char buf[8];
  for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>(value >> (8 * i));
  out.write(buf, bytes);
}

int WordBytes(GeneratorKind kind) {
  return kind == GeneratorKind::kMt19937 ? 4 : 8;
}

// Writes n native words of `gen` (32-bit for MT19937, 64-bit otherwise).
void DumpWords(GeneratorHandle& gen, std::uint64_t n, std::ostream& out) {
  if (auto* mt = std::get_if<Mt19937>(&gen.bit_generator())) {
    for (std::uint64_t i = 0; i < n; ++i) PutLittleEndian(out, mt->NextU32(), 4);
  } else {
    for (std::uint64_t i = 0; i < n; ++i) PutLittleEndian(out, gen.NextU64(), 8);
  }
}

void WriteDump(GeneratorHandle& gen, std::uint64_t n, const std::string& out_path,
               const nlohmann::json& seed_json) {
  if (out_path == "-") {
    DumpWords(gen, n, std::cout);
    std::cout.flush();
    if (!std::cout) throw IoError("error writing to stdout");
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + out_path + " for writing");
  DumpWords(gen, n, out);
  out.close();
  if (!out) throw IoError("error writing " + out_path);

  const nlohmann::json sidecar{{"generator", GeneratorName(gen.kind())},
                               {"word_size", 8 * WordBytes(gen.kind())},
                               {"n_words", n},
                               {"byte_order", "little"},
                               {"seed", seed_json}};
  std::ofstream meta(out_path + ".json", std::ios::trunc);
  meta << sidecar.dump(2) << '\n';
  meta.close();
  if (!meta) throw IoError("error writing " + out_path + ".json");
}

GeneratorHandle MakeGenerator(GeneratorKind kind,
                              const std::optional<SeedSequence>& seq) {
  if (kind == GeneratorKind::kChaCha20) return GeneratorHandle::DefaultSecure();
  return GeneratorHandle::FromSeedSequence(seq ? *seq : SeedSequence(), kind);
}

int CmdEntropy() {
  std::cout << ToDecimal(SeedSequence().entropy()) << '\n';
  return kExitOk;
}

int CmdSpawn(const SeedOptions& seed, std::uint64_t n) {
  if (!seed.given()) throw UsageError("spawn needs --seed or --descriptor");
  if (n == 0) throw UsageError("--n must be at least 1");
  SeedSequence parent = *seed.Resolve();
  nlohmann::json children = nlohmann::json::array();
  for (const auto& child : parent.Spawn(n)) children.push_back(ToDescriptor(child));
  std::cout << children.dump(2) << '\n';
  return kExitOk;
}

int CmdSample(const SeedOptions& seed, const std::string& generator,
              std::uint64_t n, const std::string& out_path) {
  const GeneratorKind kind = ParseGeneratorKind(generator);
  if (kind == GeneratorKind::kChaCha20 && seed.given()) {
    throw UsageError("the csprng generator cannot be seeded");
  }
  std::optional<SeedSequence> seq = seed.Resolve();
  if (!seq && kind != GeneratorKind::kChaCha20) seq.emplace();
  GeneratorHandle gen = MakeGenerator(kind, seq);
  WriteDump(gen, n, out_path, seq ? ToDescriptor(*seq) : nlohmann::json(nullptr));
  return kExitOk;
}

int CmdTest(const std::string& input, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
  const auto bytes = ReadBinaryFile(input);
  int word_bytes = 4;
  const std::filesystem::path sidecar = input + ".json";
  if (std::filesystem::exists(sidecar)) {
    try {
      word_bytes = nlohmann::json::parse(ReadTextFile(sidecar)).at("word_size").get<int>() / 8;
    } catch (const nlohmann::json::exception& e) {
      throw IoError("malformed sidecar " + sidecar.string() + ": " + e.what());
    }
    if (word_bytes != 4 && word_bytes != 8) {
      throw IoError("sidecar word_size must be 32 or 64");
    }
  }
  if (bytes.empty() || bytes.size() % word_bytes != 0) {
    throw IoError(input + ": not a whole number of " + std::to_string(8 * word_bytes) +
                  "-bit words");
  }
  const auto reports = RunBattery(bytes, alpha);
  bool all_passed = true;
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) {
    all_passed = all_passed && r.passed;
    out.push_back(ToJson(r));
  }
  std::cout << nlohmann::json{{"input", input}, {"reports", out}, {"passed", all_passed}}
                   .dump(2)
            << '\n';
  return all_passed ? kExitOk : kExitTestFailed;
}

int CmdBench(const std::optional<std::string>& generator, std::uint64_t n) {
  if (n == 0) throw UsageError("--n must be at least 1");
  std::vector<GeneratorKind> kinds = {GeneratorKind::kMt19937, GeneratorKind::kPcg64,
                                      GeneratorKind::kChaCha20};
  if (generator) kinds = {ParseGeneratorKind(*generator)};

  struct Row {
    GeneratorKind kind;
    double seconds;
  };
  std::vector<Row> rows;
  for (auto kind : kinds) {
    GeneratorHandle gen = MakeGenerator(kind, SeedSequence(0));
    std::uint64_t sink = 0;
    const auto start = std::chrono::steady_clock::now();
    std::visit(
        [&](auto& g) {
          for (std::uint64_t i = 0; i < n; ++i) sink ^= g.NextU64();
        },
        gen.bit_generator());
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    // Keep the loop from being optimized away.
    if (sink == 0x5eed) std::cerr << "";
    rows.push_back({kind, std::max(elapsed.count(), 1e-12)});
  }
  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return a.seconds < b.seconds; });
  nlohmann::json report = nlohmann::json::array();
  for (const auto& row : rows) {
    const double words_per_second = static_cast<double>(n) / row.seconds;
    report.push_back({{"generator", GeneratorName(row.kind)},
                      {"words", n},
                      {"word_bits", 64},
                      {"seconds", row.seconds},
                      {"words_per_second", words_per_second},
                      {"bytes_per_second", 8.0 * words_per_second}});
  }
  std::cout << report.dump(2) << '\n';
  return kExitOk;
}

int CmdDpNoise(double epsilon, double sensitivity, double value,
               const std::optional<std::string>& seed) {
  RandomStateSpec spec = RandomStateSpec::Unseeded();
  if (seed) {
    try {
      spec = RandomStateSpec::Seed(ParseDecimal(*seed));
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--seed: ") + e.what());
    }
  }
  LaplaceMechanism mech(epsilon, sensitivity, spec);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", mech.Randomise(value));
  std::cout << buf << '\n';
  return kExitOk;
}

int CmdScan(const SeedOptions& seed, std::uint64_t n, bool exhaustive,
            const std::vector<std::uint32_t>& targets, std::uint32_t bound,
            unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  nlohmann::json out;
  if (exhaustive) {
    if (seed.given()) throw UsageError("--exhaustive scans every seed; drop --seed");
    const auto report = FirstOutputBiasScanRange(0, std::uint64_t{1} << 32, targets,
                                                 bound, threads);
    out = ToJson(report);
    out["mode"] = "exhaustive";
  } else {
    if (n == 0) throw UsageError("--n must be at least 1");
    std::optional<SeedSequence> seq = seed.Resolve();
    if (!seq) seq.emplace();
    Pcg64 sampler = Pcg64::FromSeedSequence(*seq);
    std::vector<std::uint32_t> seeds(n);
    for (auto& s : seeds) s = static_cast<std::uint32_t>(BoundedUint(sampler, 0, 0xffffffffu));
    out = ToJson(FirstOutputBiasScan(seeds, targets));
    out["mode"] = "sampled";
    out["sampler_seed"] = ToDescriptor(*seq);
  }
  std::cout << out.dump(2) << '\n';
  return kExitOk;
}

int CmdBlock(const SeedOptions& seed, const std::string& stream_id,
             std::uint64_t task, std::uint64_t length, const std::string& out_path) {
  const char* ledger_path = std::getenv(kLedgerEnv);
  if (ledger_path == nullptr || *ledger_path == '\0') {
    throw UsageError(std::string("block needs the ledger path in ") + kLedgerEnv);
  }
  if (!seed.given()) throw UsageError("block needs --seed or --descriptor");
  SeedSequence seq = *seed.Resolve();
  BlockLedger ledger = BlockLedger::Open(ledger_path);
  const auto mother = GeneratorHandle::FromSeedSequence(seq, GeneratorKind::kPcg64);
  const BlockDescriptor block = ledger.Assign(stream_id, task, length);
  HandlePtr gen = BlockGenerator(mother, block);
  nlohmann::json seed_json = ToDescriptor(seq);
  seed_json["block"] = {{"stream_id", block.stream_id},
                        {"task", block.task},
                        {"length", block.length},
                        {"offset", ToDecimal(FromUint128(block.offset))}};
  WriteDump(*gen, length, out_path, seed_json);
  return kExitOk;
}

int Run(int argc, char** argv) {
  CLI::App app{"Reproducible seeding, sampling and auditing of random streams"};
  app.require_subcommand(1);

  auto* entropy = app.add_subcommand("entropy", "Print a fresh 128-bit entropy integer");

  SeedOptions spawn_seed;
  std::uint64_t spawn_n = 1;
  auto* spawn = app.add_subcommand("spawn", "Print child spawn descriptors as JSON");
  spawn_seed.Add(spawn);
  spawn->add_option("--n", spawn_n, "Number of children")->required();

  SeedOptions sample_seed;
  std::string sample_generator = "pcg64";
  std::uint64_t sample_n = 0;
  std::string sample_out = "-";
  auto* sample = app.add_subcommand("sample", "Write a raw little-endian word dump");
  sample_seed.Add(sample);
  sample->add_option("--generator", sample_generator, "mt19937, pcg64 or csprng");
  sample->add_option("--n", sample_n, "Number of words")->required();
  sample->add_option("--out", sample_out, "Output path, '-' for stdout");

  std::string test_input;
  double test_alpha = 0.001;
  auto* test = app.add_subcommand("test", "Run monobit, runs and chi-square on a dump");
  test->add_option("input", test_input, "Raw dump to test")->required();
  test->add_option("--alpha", test_alpha, "Significance level");

  std::optional<std::string> bench_generator;
  std::uint64_t bench_n = 10'000'000;
  auto* bench = app.add_subcommand("bench", "Measure generator throughput");
  bench->add_option("--generator", bench_generator, "Only this generator");
  bench->add_option("--n", bench_n, "64-bit draws per generator");

  double dp_epsilon = 0.0;
  double dp_sensitivity = 0.0;
  double dp_value = 0.0;
  std::optional<std::string> dp_seed;
  auto* dpnoise = app.add_subcommand("dpnoise", "Add Laplace noise to a value");
  dpnoise->add_option("--epsilon", dp_epsilon, "Privacy budget")->required();
  dpnoise->add_option("--sensitivity", dp_sensitivity, "Query sensitivity")->required();
  dpnoise->add_option("--value", dp_value, "Value to randomise")->required();
  dpnoise->add_option("--seed", dp_seed, "Decimal seed; omit for secure noise");

  SeedOptions scan_seed;
  std::uint64_t scan_n = 1'000'000;
  bool scan_exhaustive = false;
  std::vector<std::uint32_t> scan_targets = {7, 3};
  std::uint32_t scan_bound = 1024;
  unsigned scan_threads = 0;
  auto* scan = app.add_subcommand(
      "scan", "MT19937 first-output bias scan over single-word seeds");
  scan_seed.Add(scan);
  scan->add_option("--n", scan_n, "Number of sampled seeds");
  scan->add_flag("--exhaustive", scan_exhaustive, "Scan all 2^32 seeds");
  scan->add_option("--targets", scan_targets, "First outputs to count")->delimiter(',');
  scan->add_option("--bound", scan_bound,
                   "Report values below this never seen (exhaustive mode)");
  scan->add_option("--threads", scan_threads, "Worker threads, 0 for all cores");

  SeedOptions block_seed;
  std::string block_stream = "default";
  std::uint64_t block_task = 0;
  std::uint64_t block_n = 0;
  std::string block_out = "-";
  auto* block = app.add_subcommand(
      "block", "Assign a PCG64 block through the ledger and dump its words");
  block_seed.Add(block);
  block->add_option("--stream-id", block_stream, "Stream identifier");
  block->add_option("--task", block_task, "Task index t")->required();
  block->add_option("--n", block_n, "Block length N")->required();
  block->add_option("--out", block_out, "Output path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (entropy->parsed()) return CmdEntropy();
    if (spawn->parsed()) return CmdSpawn(spawn_seed, spawn_n);
    if (sample->parsed()) return CmdSample(sample_seed, sample_generator, sample_n, sample_out);
    if (test->parsed()) return CmdTest(test_input, test_alpha);
    if (bench->parsed()) return CmdBench(bench_generator, bench_n);
    if (dpnoise->parsed()) return CmdDpNoise(dp_epsilon, dp_sensitivity, dp_value, dp_seed);
    if (scan->parsed()) {
      return CmdScan(scan_seed, scan_n, scan_exhaustive, scan_targets, scan_bound,
                     scan_threads);
    }
    if (block->parsed()) return CmdBlock(block_seed, block_stream, block_task, block_n, block_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BlockOverlapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const LedgerCorruptError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::system_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace dpseedkit

int main(int argc, char** argv) { return dpseedkit::Run(argc, argv); }
