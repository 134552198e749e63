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

#ifndef DPSEEDKIT_LAPLACE_H_
#define DPSEEDKIT_LAPLACE_H_

#include "dpseedkit/dispatch.h"

namespace dpseedkit {

// Laplace mechanism with scale sensitivity / epsilon.
//
// The noise source is resolved once, at construction:
//   - Unseeded spec: a fresh CSPRNG, never a deterministic generator.
//   - Seed s: a private PCG64 seeded from s, so equal arguments give equal
//     outputs across constructions.
//   - Instance h: draws from h itself, so repeated calls differ but a re-run
//     of the whole program reproduces them.
// A mechanism owns its noise source and is not thread-safe.
class LaplaceMechanism {
 public:
  // Throws std::domain_error unless epsilon > 0 and sensitivity >= 0 (both
  // finite).
  LaplaceMechanism(double epsilon, double sensitivity,
                   const RandomStateSpec& random_state);

  // value + Laplace(0, scale) noise. The uniform u comes from NextDouble();
  // u == 0 is redrawn so u lies in (0, 1). With scale 0 the value is returned
  // unchanged and nothing is drawn. Throws std::domain_error for non-finite
  // input.
  double Randomise(double value);

  double epsilon() const { return epsilon_; }
  double sensitivity() const { return sensitivity_; }
  double scale() const { return sensitivity_ / epsilon_; }
  const NoiseSource& noise_source() const { return noise_; }

 private:
  double epsilon_;
  double sensitivity_;
  NoiseSource noise_;
};

}  // namespace dpseedkit

#endif  // DPSEEDKIT_LAPLACE_H_
