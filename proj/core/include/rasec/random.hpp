// SPDX-License-Identifier: Apache-2.0
//
// rasec - secure multicast with two-level rotatable antenna arrays
// Copyright (C) 2026 The rasec authors
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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace rasec
{
    using Engine = std::mt19937_64;

    /// SplitMix64 finalizer; used to derive independent stream seeds from a master seed.
    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Seed of the sub-stream addressed by `path` under `master`. Distinct paths give
    /// statistically independent engines; the mapping is fixed across platforms.
    constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t s = splitmix64(master);
        for (std::uint64_t p : path)
            s = splitmix64(s ^ splitmix64(p + 0x632be59bd9b4e019ULL));
        return s;
    }

    // Stream identifiers below a trial seed.
    enum class Stream : std::uint64_t
    {
        scene = 1,
        sensing_noise = 2,
        rotation_error = 3,
        solver_init = 4,
    };

    inline Engine make_engine(std::uint64_t trial_seed, Stream stream)
    {
        return Engine(derive_seed(trial_seed, {static_cast<std::uint64_t>(stream)}));
    }
}
