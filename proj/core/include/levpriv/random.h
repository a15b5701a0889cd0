// Copyright 2026 The levpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEVPRIV_RANDOM_H_
#define LEVPRIV_RANDOM_H_

#include <cstdint>
#include <random>

namespace levpriv {

// The random stream every sampler takes explicitly. mt19937_64 output is
// fully specified by the standard, so seeded results are portable.
using Rng = std::mt19937_64;

// Independent stream for the `index`-th task of a run seeded with `seed`.
Rng MakeStream(std::uint64_t seed, std::uint64_t index = 0);

// Uniform double in [0, 1) with 53 random bits.
double UniformUnit(Rng& rng);

// Seed drawn from the operating system's entropy source.
std::uint64_t EntropySeed();

}  // namespace levpriv

#endif  // LEVPRIV_RANDOM_H_
