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

#include "dpseedkit/parallel.h"

#include <cerrno>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <boost/crc.hpp>

namespace dpseedkit {
namespace {

std::uint32_t LineChecksum(const std::string& payload) {
  boost::crc_32_type crc;
  crc.process_bytes(payload.data(), payload.size());
  return crc.checksum();
}

std::string LinePayload(const std::string& stream_id, std::uint64_t task,
                        std::uint64_t length) {
  return stream_id + '\t' + std::to_string(task) + '\t' + std::to_string(length);
}

std::uint64_t ParseU64Field(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw LedgerCorruptError("ledger: bad integer field '" + text + "'");
  }
  std::size_t used = 0;
  try {
    const auto value = std::stoull(text, &used);
    return value;
  } catch (const std::exception&) {
    throw LedgerCorruptError("ledger: integer out of range '" + text + "'");
  }
}

const Pcg64& RequirePcg64(const GeneratorHandle& handle, const char* what) {
  const auto* pcg = std::get_if<Pcg64>(&handle.bit_generator());
  if (pcg == nullptr) {
    throw UnsupportedOperation(std::string(what) + " requires a PCG64 generator, got " +
                               std::string(GeneratorName(handle.kind())));
  }
  return *pcg;
}

}  // namespace

std::vector<HandlePtr> SpawnGenerators(SeedSequence& seq, std::size_t n,
                                       GeneratorKind kind) {
  auto children = seq.Spawn(n);
  std::vector<HandlePtr> handles;
  handles.reserve(children.size());
  for (auto& child : children) {
    handles.push_back(std::make_shared<GeneratorHandle>(
        GeneratorHandle::FromSeedSequence(std::move(child), kind)));
  }
  return handles;
}

std::vector<HandlePtr> SpawnGenerators(GeneratorHandle& parent, std::size_t n) {
  auto& seq = parent.seed_sequence();
  if (!seq) {
    throw UnsupportedOperation("generator has no seed sequence to spawn from");
  }
  return SpawnGenerators(*seq, n, parent.kind());
}

HandlePtr Jumped(const GeneratorHandle& handle, uint128 k) {
  Pcg64 pcg = RequirePcg64(handle, "jumped");
  pcg.Advance(k * kPcg64JumpDistance);
  return std::make_shared<GeneratorHandle>(pcg, handle.provenance());
}

LeapfrogStream::LeapfrogStream(const GeneratorHandle& mother,
                               std::uint64_t stride, std::uint64_t index)
    : generator_(Pcg64(0, 0)), stride_(stride), index_(index) {
  if (stride == 0 || index >= stride) {
    throw std::domain_error("leapfrog needs 0 <= t < T");
  }
  if (const auto* mt = std::get_if<Mt19937>(&mother.bit_generator())) {
    generator_ = *mt;
  } else if (const auto* pcg = std::get_if<Pcg64>(&mother.bit_generator())) {
    generator_ = *pcg;
  } else {
    throw UnsupportedOperation("the CSPRNG stream cannot be cloned for leapfrogging");
  }
}

std::uint64_t LeapfrogStream::NextU64() {
  const std::uint64_t skip = started_ ? stride_ - 1 : index_;
  started_ = true;
  return std::visit(
      [skip](auto& gen) {
        for (std::uint64_t i = 0; i < skip; ++i) gen.NextU64();
        return gen.NextU64();
      },
      generator_);
}

BlockLedger BlockLedger::Open(const std::filesystem::path& path) {
  BlockLedger ledger;
  std::ifstream in(path);
  if (in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto where = " at line " + std::to_string(line_no);
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, '\t')) fields.push_back(field);
      if (fields.size() != 4 || fields[0].empty() || fields[3].size() != 8) {
        throw LedgerCorruptError("ledger: malformed record" + where);
      }
      const std::uint64_t task = ParseU64Field(fields[1]);
      const std::uint64_t length = ParseU64Field(fields[2]);
      std::uint32_t stored = 0;
      try {
        std::size_t used = 0;
        stored = static_cast<std::uint32_t>(std::stoul(fields[3], &used, 16));
        if (used != 8) throw std::invalid_argument("checksum");
      } catch (const std::exception&) {
        throw LedgerCorruptError("ledger: bad checksum field" + where);
      }
      if (stored != LineChecksum(LinePayload(fields[0], task, length))) {
        throw LedgerCorruptError("ledger: checksum mismatch" + where);
      }
      try {
        ledger.Record(fields[0], task, length);
      } catch (const BlockOverlapError& e) {
        throw LedgerCorruptError(std::string("ledger: ") + e.what() + where);
      }
    }
    if (in.bad()) {
      throw std::system_error(errno, std::generic_category(),
                              "reading " + path.string());
    }
  } else if (std::filesystem::exists(path)) {
    throw std::system_error(errno, std::generic_category(),
                            "opening " + path.string());
  }
  ledger.path_ = path;
  return ledger;
}

void BlockLedger::Record(const std::string& stream_id, std::uint64_t task,
                         std::uint64_t length) {
  if (length == 0) {
    throw std::domain_error("block length must be at least 1");
  }
  if (stream_id.empty() ||
      stream_id.find_first_of("\t\n\r") != std::string::npos) {
    throw std::domain_error("stream id must be non-empty without tabs or newlines");
  }
  if (const auto it = lengths_.find(stream_id);
      it != lengths_.end() && it->second != length) {
    throw BlockOverlapError("stream '" + stream_id + "' uses block length " +
                            std::to_string(it->second) + ", not " +
                            std::to_string(length));
  }
  if (!assigned_.emplace(stream_id, task).second) {
    throw BlockOverlapError("block " + std::to_string(task) + " of stream '" +
                            stream_id + "' was already assigned");
  }
  lengths_.emplace(stream_id, length);
}

BlockDescriptor BlockLedger::Assign(const std::string& stream_id,
                                    std::uint64_t task, std::uint64_t length) {
  Record(stream_id, task, length);
  if (path_) {
    const auto payload = LinePayload(stream_id, task, length);
    char checksum[9];
    std::snprintf(checksum, sizeof(checksum), "%08x", LineChecksum(payload));
    std::ofstream out(*path_, std::ios::app);
    out << payload << '\t' << checksum << '\n';
    out.flush();
    if (!out) {
      assigned_.erase({stream_id, task});
      throw std::system_error(errno, std::generic_category(),
                              "appending to " + path_->string());
    }
  }
  return BlockDescriptor{stream_id, task, length,
                         static_cast<uint128>(task) * length};
}

bool BlockLedger::Contains(const std::string& stream_id,
                           std::uint64_t task) const {
  return assigned_.contains({stream_id, task});
}

HandlePtr BlockGenerator(const GeneratorHandle& mother,
                         const BlockDescriptor& block) {
  Pcg64 pcg = RequirePcg64(mother, "blocking");
  pcg.Advance(block.offset);
  return std::make_shared<GeneratorHandle>(pcg, mother.provenance());
}

HighPrecisionFloat CollisionProbabilityExact(std::uint64_t n, unsigned key_bits) {
  if (key_bits < 1) {
    throw std::domain_error("key_bits must be at least 1");
  }
  const HighPrecisionFloat cells = boost::multiprecision::ldexp(HighPrecisionFloat(1), static_cast<int>(key_bits));
  HighPrecisionFloat no_collision = 1;
  for (std::uint64_t i = 1; i < n; ++i) {
    if (HighPrecisionFloat(i) >= cells) {
      return 1;
    }
    no_collision *= 1 - HighPrecisionFloat(i) / cells;
  }
  return 1 - no_collision;
}

HighPrecisionFloat CollisionProbabilityApprox(std::uint64_t n, unsigned key_bits) {
  if (key_bits < 1) {
    throw std::domain_error("key_bits must be at least 1");
  }
  if (n < 2) {
    return 0;
  }
  const HighPrecisionFloat pairs =
      HighPrecisionFloat(n) * HighPrecisionFloat(n - 1);
  const HighPrecisionFloat exponent =
      boost::multiprecision::ldexp(pairs, -static_cast<int>(key_bits) - 1);
  return -boost::multiprecision::expm1(-exponent);
}

}  // namespace dpseedkit
