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

#include "../support.hpp"

#include "scarkit/errors.hpp"
#include "scarkit/spectral.hpp"

#include <doctest.h>

#include <cmath>

using namespace scarkit;
using namespace scarkit::spectral;
using scarkit::testing::Rng;

TEST_CASE("component eigenvalue examples") {
    const auto one = freqarith::decompose(freqarith::FrequencySpec::rational({1}));
    CHECK(component_eigenvalue(one, FockIndex{0}, 0, 0.3) == doctest::Approx(0.15));

    const auto dec = scarkit::testing::sqrt2();
    const FockIndex k{2, 1};
    CHECK(component_eigenvalue(dec, k, 0, 0.1) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(component_eigenvalue(dec, k, 1, 0.1) ==
          doctest::Approx(0.1 * std::sqrt(2.0) * 1.5).epsilon(1e-14));
    CHECK_THROWS(component_eigenvalue(dec, k, 2, 0.1));
    CHECK_THROWS(component_eigenvalue(dec, FockIndex{-1, 0}, 0, 0.1));
}

TEST_CASE("components sum to the total eigenvalue") {
    Rng rng(99);
    for (const auto &dec : {scarkit::testing::sqrt2(), scarkit::testing::two_three(),
                            scarkit::testing::sqrt2_sqrt3()}) {
        const auto omega = dec.spec().omega();
        for (int trial = 0; trial < 1000; ++trial) {
            FockIndex k(dec.d());
            double dot = 0.0;
            for (std::size_t j = 0; j < k.size(); ++j) {
                k[j] = rng.integer(0, 40);
                dot += omega[j] * double(k[j]);
            }
            const double hbar = rng.uniform(0.01, 1.0);
            const double expected = hbar * (dot + dec.spec().omega_sum() / 2);
            double sum = 0.0;
            for (double c : decompose_eigenvalue(dec, k, hbar)) {
                sum += c;
            }
            CHECK(sum == doctest::Approx(expected).epsilon(1e-12));
            CHECK(eigenvalue(dec, k, hbar) == doctest::Approx(expected).epsilon(1e-12));
            CHECK(eigenvalue(dec, k, hbar) ==
                  doctest::Approx(hbar * eigenvalue(dec, k, 1.0)).epsilon(1e-13));
        }
    }
}

TEST_CASE("(2, 3) has a single component equal to the total") {
    const auto dec = scarkit::testing::two_three();
    const FockIndex k{3, 4};
    const auto parts = decompose_eigenvalue(dec, k, 0.2);
    REQUIRE(parts.size() == 1);
    CHECK(parts[0] == doctest::Approx(0.2 * (6 + 12 + 2.5)));
}

TEST_CASE("enumerate_window examples") {
    SUBCASE("(1, 1) degenerate level") {
        const auto levels = enumerate_window(scarkit::testing::one_one(), 1.0, 1.9, 2.1);
        REQUIRE(levels.size() == 1);
        CHECK(levels[0].lambda == doctest::Approx(2.0));
        CHECK(levels[0].multiplicity() == 2);
        CHECK(levels[0].members == std::vector<FockIndex>{{0, 1}, {1, 0}});
    }
    SUBCASE("empty below the ground energy") {
        const auto dec = scarkit::testing::sqrt2();
        CHECK(enumerate_window(dec, 1.0, 0.0, 1.2).empty());
    }
    SUBCASE("(1, sqrt 2)") {
        const auto levels = enumerate_window(scarkit::testing::sqrt2(), 1.0, 2.2, 2.3);
        REQUIRE(levels.size() == 1);
        CHECK(levels[0].members == std::vector<FockIndex>{{1, 0}});
        CHECK(levels[0].lambda == doctest::Approx(1.5 + std::sqrt(2.0) / 2));
    }
    SUBCASE("budget") {
        CHECK_THROWS_AS(enumerate_window(scarkit::testing::sqrt2(), 1e-4, 0.0, 1.0),
                        ResourceError);
        CHECK_THROWS(enumerate_window(scarkit::testing::sqrt2(), 1.0, 2.0, 1.0));
    }
}

TEST_CASE("window enumeration is complete against brute force") {
    const auto dec = scarkit::testing::sqrt2_sqrt3();
    const double hbar = 0.5, lo = 2.0, hi = 6.0;
    std::size_t brute = 0;
    for (int a = 0; a < 20; ++a) {
        for (int b = 0; b < 20; ++b) {
            for (int c = 0; c < 20; ++c) {
                const double e = eigenvalue(dec, FockIndex{a, b, c}, hbar);
                brute += e >= lo && e <= hi;
            }
        }
    }
    std::size_t found = 0;
    for (const auto &level : enumerate_window(dec, hbar, lo, hi)) {
        found += level.multiplicity();
    }
    CHECK(found == brute);
}

TEST_CASE("equal exact eigenvalues share their decomposition") {
    for (const auto &dec : {scarkit::testing::one_one(), scarkit::testing::two_three(),
                            scarkit::testing::sqrt2()}) {
        const auto levels = enumerate_window(dec, 0.05, 0.9, 1.1);
        for (const auto &level : levels) {
            const auto ref = decompose_eigenvalue(dec, level.members.front(), 0.05);
            for (const auto &k : level.members) {
                CHECK(generator_key(dec, k) == level.key);
                CHECK(decompose_eigenvalue(dec, k, 0.05) == ref);
            }
        }
        // distinct keys mean distinct eigenvalues
        for (std::size_t i = 1; i < levels.size(); ++i) {
            CHECK(levels[i].key != levels[i - 1].key);
            CHECK(levels[i].lambda >= levels[i - 1].lambda);
        }
    }
}

TEST_CASE("select_target example") {
    const auto dec = scarkit::testing::sqrt2();
    const std::vector<double> E{1.0, 0.0};
    const auto t = select_target(dec, E, 0.1);
    CHECK(t.N == std::vector<std::int64_t>{10, 0});
    CHECK(t.lambda[0] == doctest::Approx(1.05).epsilon(1e-14));
    CHECK(t.lambda[1] == doctest::Approx(0.1 * std::sqrt(2.0) / 2).epsilon(1e-14));
    CHECK(std::abs(t.lambda[0] - E[0]) < 0.1);
    CHECK(t.lambda_total == doctest::Approx(t.lambda[0] + t.lambda[1]));
    for (std::size_t n = 0; n < 2; ++n) {
        CHECK(ladder_index(dec, n, t.witnesses[n]) == t.ladder[n]);
    }
    CHECK(in_target(dec, t, FockIndex{10, 0}));
    CHECK_FALSE(in_target(dec, t, FockIndex{10, 1}));
}

TEST_CASE("targets satisfy the strict bound and converge") {
    Rng rng(5);
    const auto dec = scarkit::testing::sqrt2();
    for (int trial = 0; trial < 200; ++trial) {
        const double e1 = rng.uniform();
        const std::vector<double> E{e1, 1.0 - e1};
        const double hbar = rng.uniform(0.001, 0.3);
        const auto t = select_target(dec, E, hbar);
        double bound_sum = 0.0;
        for (std::size_t n = 0; n < 2; ++n) {
            const double bound = 2 * M_PI * hbar / dec.component(n).period;
            CHECK(std::abs(E[n] - t.lambda[n]) < bound);
            bound_sum += bound;
        }
        CHECK(std::abs(t.lambda_total - 1.0) <= bound_sum);
    }
}

TEST_CASE("zero energy gives the ground ladder") {
    const auto dec = scarkit::testing::sqrt2();
    const std::vector<double> E{0.0, 0.0};
    const auto t = select_target(dec, E, 0.1);
    CHECK(t.N == std::vector<std::int64_t>{0, 0});
    CHECK(t.lambda[0] == doctest::Approx(0.05));
    CHECK(t.lambda[1] == doctest::Approx(0.1 * std::sqrt(2.0) / 2));
}

TEST_CASE("hbar beyond the conductor threshold is refused") {
    const auto dec = scarkit::testing::two_three();
    const std::vector<double> E{1.0};
    CHECK(hbar_max(dec, E) == doctest::Approx(1.0 / 3.5));
    CHECK_THROWS_AS(select_target(dec, E, 0.5), BelowConductorError);
    const auto t = select_target(dec, E, 0.28);
    CHECK(t.N[0] >= 2);
    CHECK(std::isinf(hbar_max(scarkit::testing::one_one(), E)));
}

TEST_CASE("infeasible energies are rejected") {
    const auto dec = scarkit::testing::sqrt2();
    const std::vector<double> E{0.7, 0.7};
    CHECK_THROWS_AS(select_target(dec, E, 0.1), NotInSigmaError);
}
