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

#ifndef DPSEEDKIT_OS_ENTROPY_H_
#define DPSEEDKIT_OS_ENTROPY_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <system_error>
#include <vector>

namespace dpseedkit {

// Raised when the operating system cannot supply entropy. Callers never get a
// silent fallback to a weaker source.
class EntropyError : public std::system_error {
 public:
  using std::system_error::system_error;
};

// Fills `out` from the kernel CSPRNG (getrandom(2)). Not seedable, not
// reproducible.
void FillOsEntropy(std::span<std::uint8_t> out);

std::vector<std::uint8_t> OsEntropy(std::size_t n_bytes);

}  // namespace dpseedkit

#endif  // DPSEEDKIT_OS_ENTROPY_H_
