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
#include "scarkit/scarlab.hpp"

#include <doctest.h>

#include <cmath>

using namespace scarkit;
using namespace scarkit::scarlab;
using scarkit::testing::Rng;

TEST_CASE("probe names") {
    CHECK(make_probe("x1", 2, 1).symbol.degree() == 1);
    CHECK(make_probe("xi2^2", 2, 1).symbol.degree() == 2);
    CHECK(make_probe("H2", 2, 1).symbol.degree() == 2);
    CHECK_FALSE(make_probe("char:1", 2, 1).symbol.is_polynomial());
    CHECK_THROWS_AS(make_probe("x3", 2, 1), ValidationError);
    CHECK_THROWS_AS(make_probe("y1", 2, 1), ValidationError);
    CHECK_THROWS_AS(make_probe("H1^2", 2, 1), ValidationError);
    CHECK(default_probes(3, 1).size() == 7);
}

TEST_CASE("character probes depend only on seed and index") {
    const auto a = make_probe("char:2", 2, 9).symbol.characters().front().w;
    const auto b = make_probe("char:2", 2, 9).symbol.characters().front().w;
    const auto c = make_probe("char:1", 2, 9).symbol.characters().front().w;
    const auto e = make_probe("char:2", 2, 10).symbol.characters().front().w;
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a != e);
    for (double v : a) {
        CHECK(std::abs(v) <= 1.0);
    }
}

TEST_CASE("build_scar checks the level set and the eigenrelation") {
    const auto dec = scarkit::testing::sqrt2();
    const std::vector<double> E{0.5, 0.5};
    const auto z = phasespace::sigma_membership(dec, E).witness;
    const auto s = build_scar(dec, z, E, 0.05, 1e-12);
    for (std::size_t n = 0; n < 2; ++n) {
        CHECK(fockstate::eigen_residual(dec, s.state, n, s.target.lambda[n]) <= 1e-10);
    }
    CHECK_THROWS_AS(build_scar(dec, PhasePoint({1.0, 0.0}, {0.0, 0.0}), E, 0.05, 1e-12),
                    PreconditionError);
}

TEST_CASE("convex_scar preconditions") {
    const auto dec = scarkit::testing::sqrt2();
    const std::vector<double> E{0.5, 0.5};
    const auto z = phasespace::sigma_membership(dec, E).witness;
    const auto moved = phasespace::multi_flow(dec, z, std::vector<double>{1.0, 2.0});
    const std::vector<ConvexPoint> same{{z, 0.5}, {moved, 0.5}};
    CHECK_THROWS_AS(convex_scar(dec, same, E, 0.1, 1e-12), PreconditionError);
    const std::vector<ConvexPoint> bad_weights{{z, 0.7}};
    CHECK_THROWS_AS(convex_scar(dec, bad_weights, E, 0.1, 1e-12), PreconditionError);

    const std::vector<ConvexPoint> one{{z, 1.0}};
    const auto single = convex_scar(dec, one, E, 0.1, 1e-12);
    const auto direct = build_scar(dec, z, E, 0.1, 1e-12);
    REQUIRE(single.state.size() == direct.state.size());
    for (std::size_t i = 0; i < direct.state.size(); ++i) {
        CHECK(std::abs(single.state.coeffs()[i] - direct.state.coeffs()[i]) < 1e-15);
    }
}

TEST_CASE("residuals of eigenstates and of a coherent state") {
    const auto dec = scarkit::testing::sqrt2();
    const std::vector<double> E{0.5, 0.5};
    const auto z = phasespace::sigma_membership(dec, E).witness;
    const double hbar = 0.05;
    const auto probes = default_probes(2, 3);
    const auto s = build_scar(dec, z, E, hbar, 1e-12);
    const auto r = residuals(dec, s.state, E, probes);
    for (std::size_t n = 0; n < 2; ++n) {
        CHECK(r.invariance[n] <= 1e-10);
        const double gap = s.target.lambda[n] - E[n];
        CHECK(r.concentration[n] == doctest::Approx(gap * gap).epsilon(1e-9));
        const double bound = 2 * M_PI * hbar / dec.component(n).period;
        CHECK(r.concentration[n] <= bound * bound);
    }
    const auto psi = fockstate::coherent(PhasePoint({0.8, 0.2}, {0.1, 0.3}), hbar, 1e-12);
    const std::vector<Probe> x1{make_probe("x1", 2, 3)};
    CHECK(residuals(dec, psi, E, x1).invariance[0] > 0.1);
}

TEST_CASE("hbar schedule and slope fit") {
    const auto h = hbar_schedule(0.2, 0.5, 7);
    REQUIRE(h.size() == 7);
    for (std::size_t i = 1; i < h.size(); ++i) {
        CHECK(h[i] < h[i - 1]);
    }
    CHECK(h.back() == doctest::Approx(0.2 / 64));
    CHECK_THROWS(hbar_schedule(0.2, 1.5, 7));
    CHECK_THROWS(hbar_schedule(0.2, 0.5, 2));

    std::vector<double> r;
    for (double x : h) {
        r.push_back(3.0 * std::pow(x, 0.5));
    }
    r[0] = 100.0; // pre-asymptotic outlier, dropped
    std::size_t used = 0;
    CHECK(fit_slope(h, r, 2, &used) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(used == 5);
    r[4] = 0.0; // zero residuals are skipped
    CHECK(fit_slope(h, r, 2, &used) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(used == 4);
    CHECK(std::isnan(fit_slope(h, r, 6)));
}

TEST_CASE("sweep records per-row failures and keeps going") {
    // (2, 3) with E = 1 needs hbar < 1/3.5 to clear the conductor
    const auto dec = scarkit::testing::two_three();
    SweepConfig cfg;
    cfg.E = {1.0};
    cfg.points = {{phasespace::sigma_membership(dec, cfg.E).witness, 1.0}};
    cfg.hbar_start = 0.8;
    cfg.hbar_ratio = 0.5;
    cfg.hbar_count = 5;
    cfg.probes = default_probes(2, 1);
    const auto report = sweep(dec, cfg);
    CHECK(report.errors.size() == 2);
    CHECK(report.targets.size() == 3);
    for (const auto &row : report.rows) {
        CHECK(row.residual >= 0.0);
        CHECK(row.hbar <= 0.2);
    }
    CHECK(report.final_state.has_value());
}

TEST_CASE("sweep is deterministic") {
    const auto dec = scarkit::testing::sqrt2();
    SweepConfig cfg;
    cfg.E = {0.5, 0.5};
    cfg.points = {{phasespace::sigma_membership(dec, cfg.E).witness, 1.0}};
    cfg.hbar_count = 4;
    cfg.probes = default_probes(2, 4);
    const auto a = sweep(dec, cfg);
    const auto b = sweep(dec, cfg);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].observable == b.rows[i].observable);
        CHECK(a.rows[i].value == b.rows[i].value);
        CHECK(a.rows[i].residual == b.rows[i].residual);
    }
    CHECK(a.metadata == b.metadata);
    const std::vector<double> off{0.7, 0.7};
    cfg.E = off;
    CHECK_THROWS_AS(sweep(dec, cfg), NotInSigmaError);
}

TEST_CASE("single eigenspaces never mix energy vectors") {
    // random states inside one degenerate level of (1, 1) are joint
    // eigenvectors with zero concentration against their own components
    const auto dec = scarkit::testing::one_one();
    const double hbar = 0.1;
    Rng rng(12);
    for (const auto &level : spectral::enumerate_window(dec, hbar, 0.9, 1.1)) {
        std::vector<spectral::FockIndex> idx = level.members;
        std::vector<Complex> c;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            c.emplace_back(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
        const auto psi = fockstate::FockState(hbar, 2, idx, c).normalized();
        const auto r = residuals(dec, psi, level.components, default_probes(2, 1));
        CHECK(r.concentration[0] <= 1e-10);
        CHECK(r.invariance[0] <= 1e-10);
    }
}
