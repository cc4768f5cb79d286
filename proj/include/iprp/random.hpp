/*
 * Copyright 2026 The iprp Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IPRP_RANDOM_HPP_
#define IPRP_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace iprp {

// All stochastic code draws from this engine. Only raw engine output is used
// (never std:: distributions), so streams are identical across standard
// library implementations.
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// FNV-1a; stable across platforms, unlike std::hash.
std::uint64_t stable_hash(std::string_view text);

// Order-sensitive mix of a base seed with further stream coordinates.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a,
                          std::uint64_t b = 0, std::uint64_t c = 0);

// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

// Uniform integer in [0, n). n must be > 0.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

bool bernoulli(Rng& rng, double p);

// Box-Muller standard normal.
double standard_normal(Rng& rng);

}  // namespace iprp

#endif  // IPRP_RANDOM_HPP_
