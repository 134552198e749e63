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

#include "dpseedkit/transform.h"

#include <cmath>
#include <stdexcept>

namespace dpseedkit {

double LaplaceInverseCdf(double u, double scale) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("laplace_inverse_cdf: u must lie in (0, 1)");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::domain_error("laplace_inverse_cdf: scale must be positive");
  }
  if (u < 0.5) {
    return scale * std::log(2.0 * u);
  }
  return -scale * std::log(2.0 - 2.0 * u);
}

}  // namespace dpseedkit
