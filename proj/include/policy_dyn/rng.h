// Copyright 2026 The policy-dyn Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef POLICY_DYN_RNG_H_
#define POLICY_DYN_RNG_H_

#include <cstdint>
#include <random>
#include <span>

namespace policy_dyn {

// Seeded pseudo-random stream. Copies are independent and continue from the
// same position, which is what counterfactual replay relies on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform double in [0,1) built from the top 53 bits, so the value depends
  // only on the engine output and not on the standard library's
  // distribution implementation.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t NextU64() { return engine_(); }

  // Inverse-CDF draw over the canonical order of `probs`.
  std::size_t Sample(std::span<const double> probs);

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

// Deterministic seed derivation (splitmix64 finalizer over seed and stream).
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace policy_dyn

#endif  // POLICY_DYN_RNG_H_
