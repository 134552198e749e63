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

#include "dpseedkit/laplace.h"

#include <cmath>
#include <stdexcept>

#include "dpseedkit/transform.h"

namespace dpseedkit {
namespace {

double CheckEpsilon(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::domain_error("epsilon must be positive and finite");
  }
  return epsilon;
}

double CheckSensitivity(double sensitivity) {
  if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity)) {
    throw std::domain_error("sensitivity must be non-negative and finite");
  }
  return sensitivity;
}

}  // namespace

LaplaceMechanism::LaplaceMechanism(double epsilon, double sensitivity,
                                   const RandomStateSpec& random_state)
    : epsilon_(CheckEpsilon(epsilon)),
      sensitivity_(CheckSensitivity(sensitivity)),
      noise_(ResolveDpNoiseSource(CheckRandomState(random_state))) {}

double LaplaceMechanism::Randomise(double value) {
  if (!std::isfinite(value)) {
    throw std::domain_error("randomise: value must be finite");
  }
  const double noise_scale = scale();
  if (noise_scale == 0.0) {
    return value;
  }
  double u = 0.0;
  do {
    u = NextDouble(noise_);
  } while (u == 0.0);
  return value + LaplaceInverseCdf(u, noise_scale);
}

}  // namespace dpseedkit
