// Copyright 2026 The scarkit Authors
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

#pragma once

// Test-side helpers: spec builders, a seeded generator and oracles that
// share no code with the library.

#include "scarkit/freqarith.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

namespace scarkit::testing {

/// splitmix64; fixed seeds keep property tests reproducible.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /// Uniform in [0, 1).
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(next() % std::uint64_t(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

inline freqarith::FrequencySpec spec_of(const char *text) {
    return freqarith::parse_frequency_spec(text);
}

inline freqarith::HarmonicDecomposition one_one() {
    return freqarith::decompose(freqarith::FrequencySpec::rational({1, 1}));
}

inline freqarith::HarmonicDecomposition two_three() {
    return freqarith::decompose(freqarith::FrequencySpec::rational({2, 3}));
}

inline freqarith::HarmonicDecomposition sqrt2() {
    return freqarith::decompose(spec_of("generators = one:1, r2:sqrt(2)\n"
                                        "omega_1 = 1 0\n"
                                        "omega_2 = 0 1\n"));
}

inline freqarith::HarmonicDecomposition sqrt2_sqrt3() {
    return freqarith::decompose(spec_of("generators = one:1, r2:sqrt(2), r3:sqrt(3)\n"
                                        "omega_1 = 1 0 0\n"
                                        "omega_2 = 0 1 0\n"
                                        "omega_3 = 0 0 1\n"));
}

/// Conductor of positive generators by a reachability sieve up to a bound
/// past the Frobenius number.
inline std::int64_t sieve_conductor(const std::vector<std::int64_t> &gens) {
    std::int64_t lo = 0, hi = 0;
    for (auto g : gens) {
        if (g > 0) {
            lo = lo == 0 ? g : std::min(lo, g);
            hi = std::max(hi, g);
        }
    }
    // Frobenius number < lo * hi for coprime generators
    const std::int64_t limit = lo * hi + hi + 1;
    std::vector<char> reach(std::size_t(limit + 1), 0);
    reach[0] = 1;
    for (std::int64_t n = 1; n <= limit; ++n) {
        for (auto g : gens) {
            if (g > 0 && g <= n && reach[std::size_t(n - g)]) {
                reach[std::size_t(n)] = 1;
                break;
            }
        }
    }
    std::int64_t last_gap = -1;
    for (std::int64_t n = 0; n <= limit; ++n) {
        if (!reach[std::size_t(n)]) {
            last_gap = n;
        }
    }
    return last_gap + 1;
}

/// Return time of the flow with rational frequencies p_j / q_j: the least
/// T > 0 with omega_j T in 2 pi Z for every j, i.e. 2 pi lcm(q) / gcd(p).
inline double rotation_period(const std::vector<std::pair<std::int64_t, std::int64_t>> &freqs) {
    std::int64_t num_gcd = 0, den_lcm = 1;
    for (auto [p, q] : freqs) {
        const std::int64_t g = std::gcd(p, q);
        p /= g;
        q /= g;
        num_gcd = std::gcd(num_gcd, p);
        den_lcm = std::lcm(den_lcm, q);
    }
    return 2.0 * M_PI * double(den_lcm) / double(num_gcd);
}

} // namespace scarkit::testing
