// SPDX-License-Identifier: Apache-2.0
//
// mimosec: secrecy rate regions for the two-user MIMO Gaussian broadcast channel
// Copyright (C) 2026 The mimosec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef MIMOSEC_RANDOM_HPP
#define MIMOSEC_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include <mimosec/matrixkit.hpp>

namespace mimosec
{

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Independent generator for item `index` of a run seeded with `seed`. Keying
/// by index keeps parallel evaluation independent of the worker count.
inline Rng substream(std::uint64_t seed, std::uint64_t index)
{
    return Rng(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
}

/// Matrix of i.i.d. CN(0, variance) entries.
inline CMatrix complex_gaussian(Index rows, Index cols, Rng &rng, double variance = 1.0)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    CMatrix out(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = Complex(re, im);
        }
    return out;
}

inline double uniform(Rng &rng, double lo = 0.0, double hi = 1.0)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

} // namespace mimosec

#endif
