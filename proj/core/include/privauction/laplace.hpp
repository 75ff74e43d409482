//
// Copyright 2026 The privauction Authors
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
//

#ifndef PRIVAUCTION_LAPLACE_HPP_
#define PRIVAUCTION_LAPLACE_HPP_

#include <cstdint>
#include <random>

namespace privauction {

// Seeded 64-bit Mersenne Twister; the conversions below are hand-written.
using Rng = std::mt19937_64;

// Uniform double in the open interval (0, 1) from the top 53 bits.
double uniform_open01(Rng& rng);

// Laplace(0, scale) by inverse CDF. scale == 0 returns 0 without consuming
// randomness.
double sample_laplace(Rng& rng, double scale);

double laplace_log_density(double y, double mean, double scale);

// splitmix64 finalizer; derives independent per-item seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index);

}  // namespace privauction

#endif  // PRIVAUCTION_LAPLACE_HPP_
