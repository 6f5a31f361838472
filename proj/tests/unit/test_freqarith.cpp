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
#include "scarkit/freqarith.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace scarkit;
using namespace scarkit::freqarith;
using scarkit::testing::Rng;

TEST_CASE("rational_span examples") {
    SUBCASE("equal rows") {
        const auto s = rational_span(FrequencySpec::rational({1, 1}));
        CHECK(s.d_omega == 1);
        CHECK(s.pivots == std::vector<std::size_t>{0});
    }
    SUBCASE("declared independent generators") {
        CHECK(rational_span(scarkit::testing::sqrt2().spec()).d_omega == 2);
    }
    SUBCASE("integers") {
        CHECK(rational_span(FrequencySpec::rational({2, 3})).d_omega == 1);
    }
}

TEST_CASE("decompose (1, sqrt 2) is diagonal") {
    const auto dec = scarkit::testing::sqrt2();
    REQUIRE(dec.d_omega() == 2);
    CHECK(dec.component(0).v == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(dec.component(1).v == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(dec.component(0).nu == RationalVector{1, 0});
    CHECK(dec.component(1).nu == RationalVector{0, 1});
    CHECK(dec.component(0).nu_trace == doctest::Approx(1.0));
    CHECK(dec.component(1).nu_trace == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("decompose (2, 3)") {
    const auto dec = scarkit::testing::two_three();
    REQUIRE(dec.d_omega() == 1);
    const auto &c = dec.component(0);
    CHECK(c.v == 2.0);
    CHECK(c.nu == RationalVector{1, Rational(3, 2)});
    CHECK(c.k == std::vector<std::int64_t>{2, 3});
    CHECK(c.K == 2);
    CHECK(c.conductor_for(+1) == 2);
}

TEST_CASE("least K matches a brute-force search") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        RationalVector nu;
        for (int j = 0; j < 3; ++j) {
            nu.push_back(Rational(rng.integer(0, 12), rng.integer(1, 9)));
        }
        if (std::all_of(nu.begin(), nu.end(), [](const Rational &q) { return q == 0; })) {
            continue;
        }
        Rational min_abs = 0;
        for (const auto &q : nu) {
            if (q != 0 && (min_abs == 0 || abs(q) < min_abs)) {
                min_abs = abs(q);
            }
        }
        std::int64_t brute = 0;
        for (std::int64_t K = 1; brute == 0; ++K) {
            bool ok = true;
            for (const auto &q : nu) {
                const Rational r = Rational(K) * q / min_abs;
                ok = ok && boost::multiprecision::denominator(r) == 1;
            }
            brute = ok ? K : 0;
        }
        CHECK(ladder_vector(nu).K == brute);
    }
}

TEST_CASE("reconstruction holds exactly for random rational specs") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = std::size_t(rng.integer(1, 4));
        const std::size_t m = std::size_t(rng.integer(1, 3));
        GeneratorBasis basis = GeneratorBasis::unit();
        const char *roots[] = {"sqrt(2)", "sqrt(3)"};
        std::string text = "generators = one:1";
        for (std::size_t i = 1; i < m; ++i) {
            text += std::string(", g") + std::to_string(i) + ":" + roots[i - 1];
        }
        text += "\n";
        for (std::size_t j = 0; j < d; ++j) {
            text += "omega_" + std::to_string(j + 1) + " =";
            for (std::size_t i = 0; i < m; ++i) {
                // positive leading coefficient keeps omega_j > 0
                const auto num = i == 0 ? rng.integer(1, 9) : rng.integer(0, 4);
                text += " " + std::to_string(num) + "/" + std::to_string(rng.integer(1, 5));
            }
            text += "\n";
        }
        const auto spec = parse_frequency_spec(text);
        const auto dec = decompose(spec);
        for (std::size_t j = 0; j < d; ++j) {
            RationalVector sum(m, Rational(0));
            for (const auto &c : dec.components()) {
                for (std::size_t i = 0; i < m; ++i) {
                    sum[i] += c.v_coords[i] * c.nu[j];
                }
            }
            CHECK(sum == spec.row(j));
        }
        CHECK(rational_rank(dec.nu_matrix()) == dec.d_omega());
    }
}

TEST_CASE("period_of examples") {
    CHECK(period_of(1.0, RationalVector{1, 0}) == doctest::Approx(2 * M_PI).epsilon(1e-15));
    CHECK(period_of(2.0, RationalVector{1, Rational(3, 2)}) ==
          doctest::Approx(2 * M_PI).epsilon(1e-15));
    CHECK(period_of(std::sqrt(2.0), RationalVector{0, 1}) ==
          doctest::Approx(4.44288293815836).epsilon(1e-13));
    CHECK_THROWS_AS(period_of(1.0, RationalVector{0, 0}), DomainError);
}

TEST_CASE("conductor examples") {
    CHECK(conductor(std::vector<std::int64_t>{1, 1}, 1) == 0);
    CHECK(conductor(std::vector<std::int64_t>{2, 3}, 1) == 2);
    CHECK(conductor(std::vector<std::int64_t>{3, 5}, 1) == 8);
    CHECK(conductor(std::vector<std::int64_t>{-3, -5}, -1) == 8);
    CHECK_THROWS_AS(conductor(std::vector<std::int64_t>{2, 4}, 1), DomainError);
    CHECK_THROWS_AS(conductor(std::vector<std::int64_t>{2, 3}, -1), DomainError);
}

TEST_CASE("conductor matches the sieve and witnesses exist above it") {
    Rng rng(7);
    int checked = 0;
    while (checked < 40) {
        const std::size_t d = std::size_t(rng.integer(1, 4));
        std::vector<std::int64_t> k;
        for (std::size_t j = 0; j < d; ++j) {
            k.push_back(rng.integer(1, 20));
        }
        if (gcd_of_nonzero(k) != 1) {
            continue;
        }
        ++checked;
        const auto c = conductor(k, 1);
        CHECK(c == scarkit::testing::sieve_conductor(k));
        for (std::int64_t N = c; N <= c + 50; ++N) {
            const auto w = representation(k, 1, N);
            std::int64_t dot = 0;
            for (std::size_t j = 0; j < d; ++j) {
                CHECK(w[j] >= 0);
                dot += w[j] * k[j];
            }
            CHECK(dot == N);
        }
        if (c > 0) {
            CHECK_THROWS_AS(representation(k, 1, c - 1), DomainError);
        }
    }
}

TEST_CASE("mixed-sign ladders reach every level") {
    for (auto k : {std::vector<std::int64_t>{1, -1}, std::vector<std::int64_t>{2, -3},
                   std::vector<std::int64_t>{-5, 3, 0}}) {
        for (int sigma : {1, -1}) {
            CHECK(conductor(k, sigma) == 0);
            for (std::int64_t N = 0; N <= 40; ++N) {
                const auto w = representation(k, sigma, N);
                std::int64_t dot = 0;
                for (std::size_t j = 0; j < k.size(); ++j) {
                    CHECK(w[j] >= 0);
                    dot += w[j] * k[j];
                }
                CHECK(dot == sigma * N);
            }
        }
    }
}

TEST_CASE("numeric_frequencies examples") {
    const auto id = numeric_frequencies(Eigen::MatrixXd::Identity(3, 3));
    for (double w : id) {
        CHECK(w == doctest::Approx(1.0));
    }
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(2, 2);
    diag(0, 0) = 4;
    diag(1, 1) = 9;
    const auto w = numeric_frequencies(diag);
    CHECK(w[0] == doctest::Approx(2.0));
    CHECK(w[1] == doctest::Approx(3.0));
    Eigen::MatrixXd q(2, 2);
    q << 2, 1, 1, 2;
    const auto v = numeric_frequencies(q);
    CHECK(v[0] == doctest::Approx(1.0));
    CHECK(v[1] == doctest::Approx(std::sqrt(3.0)));
    Eigen::MatrixXd bad(2, 2);
    bad << 1, 2, 2, 1;
    CHECK_THROWS_AS(numeric_frequencies(bad), DomainError);
}

TEST_CASE("d_omega is invariant under permutation and common scaling") {
    const char *text = "generators = one:1, r2:sqrt(2)\n"
                       "omega_1 = 1 1\n"
                       "omega_2 = 2 0\n"
                       "omega_3 = 0 3\n";
    const char *permuted = "generators = one:1, r2:sqrt(2)\n"
                           "omega_1 = 0 3\n"
                           "omega_2 = 1 1\n"
                           "omega_3 = 2 0\n";
    const char *scaled = "generators = one:1, r2:sqrt(2)\n"
                         "omega_1 = 5/3 5/3\n"
                         "omega_2 = 10/3 0\n"
                         "omega_3 = 0 5\n";
    const auto a = rational_span(parse_frequency_spec(text)).d_omega;
    CHECK(a == 2);
    CHECK(rational_span(parse_frequency_spec(permuted)).d_omega == a);
    CHECK(rational_span(parse_frequency_spec(scaled)).d_omega == a);
}

TEST_CASE("spec parser reports line and column") {
    try {
        parse_frequency_spec("generators = one:1\nomega_1 = 1/0\n");
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 11);
    }
    CHECK_THROWS_AS(parse_frequency_spec("generators = one:1, g:1.4142\nomega_1 = 1 1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_frequency_spec("omega_2 = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_frequency_spec("omega_1 = -1\n"), Error);
    CHECK_THROWS_AS(parse_frequency_spec("omega_1 = 1 2\n"), ParseError);
}

TEST_CASE("decimal generators need 30 significant digits") {
    const auto spec = parse_frequency_spec(
        "generators = one:1, r2:1.41421356237309504880168872420969807857\n"
        "omega_1 = 1 0\nomega_2 = 0 1\n");
    CHECK(spec.omega()[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
}

TEST_CASE("feasible_actions solves the energy constraints") {
    const auto dec = scarkit::testing::sqrt2();
    SUBCASE("E = (1, 0)") {
        const std::vector<double> E{1.0, 0.0};
        const auto w = feasible_actions(dec, E);
        CHECK(w.h[0] == doctest::Approx(1.0));
        CHECK(w.h[1] == doctest::Approx(0.0));
    }
    SUBCASE("E = (1/2, 1/2)") {
        const std::vector<double> E{0.5, 0.5};
        const auto w = feasible_actions(dec, E);
        CHECK(w.h[0] == doctest::Approx(0.5));
        CHECK(w.h[1] == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))));
    }
    SUBCASE("off the shell") {
        const std::vector<double> E{0.7, 0.7};
        CHECK_THROWS_AS(feasible_actions(dec, E), NotInSigmaError);
    }
    SUBCASE("negative energy for a positive component") {
        const std::vector<double> E{1.5, -0.5};
        CHECK_THROWS_AS(feasible_actions(dec, E), NotInSigmaError);
    }
}
