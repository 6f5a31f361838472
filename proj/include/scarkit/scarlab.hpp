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

// End-to-end experiments: scarred eigenstates, convex combinations over
// distinct invariant tori, residual diagnostics and hbar sweeps.

#include "scarkit/fockstate.hpp"
#include "scarkit/phasespace.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scarkit::scarlab {

using fockstate::FockState;
using fockstate::ScarState;
using freqarith::HarmonicDecomposition;
using spectral::TargetEigenvalue;

struct Probe {
    std::string name;
    Symbol symbol;
};

/// Recognized names: x<j>, xi<j>, x<j>^2, xi<j>^2, H<j> (1-based modes) and
/// char:<i>, a character with seeded random w in [-1, 1]^{2d}.
Probe make_probe(std::string_view name, std::size_t d, std::uint64_t seed);

/// {x1, x1^2, H1..Hd, char:1, char:2}
std::vector<Probe> default_probes(std::size_t d, std::uint64_t seed);

inline constexpr double kShellTol = 1e-10;
inline constexpr double kEigenTol = 1e-10;

/// Scarred eigenstate on the torus through z0; checks that z0 sits on
/// H^{-1}(E) and that the result is a joint eigenvector.
ScarState build_scar(const HarmonicDecomposition &decomp, const PhasePoint &z0,
                     std::span<const double> E, double hbar, double tail_tol);

struct ConvexPoint {
    PhasePoint z0;
    double alpha = 1.0;
};

struct ConvexScar {
    /// sum_j sqrt(alpha_j) psi^j
    FockState state;
    std::vector<ScarState> parts;
};

/// Throws PreconditionError when weights are invalid or two points share
/// a torus.
ConvexScar convex_scar(const HarmonicDecomposition &decomp,
                       std::span<const ConvexPoint> points, std::span<const double> E,
                       double hbar, double tail_tol);

struct Residuals {
    /// <(Op(H_n) - E_n)^2> for the normalized state.
    std::vector<double> concentration;
    /// max over a 16-point grid in [0, T_n) and the probes of
    /// |<a o phi_t^n> - <a>|.
    std::vector<double> invariance;
};

Residuals residuals(const HarmonicDecomposition &decomp, const FockState &state,
                    std::span<const double> E, std::span<const Probe> probes);

struct SweepConfig {
    std::vector<double> E;
    std::vector<ConvexPoint> points;
    double hbar_start = 0.2;
    double hbar_ratio = 0.5;
    std::size_t hbar_count = 7;
    std::vector<Probe> probes;
    double tail_tol = 1e-12;
    /// Number of largest hbar values left out of the slope fits.
    std::size_t drop = 2;
};

struct ReportRow {
    double hbar = 0.0;
    std::string observable;
    Complex value;
    Complex reference;
    double residual = 0.0;
};

struct TargetRow {
    double hbar = 0.0;
    TargetEigenvalue target;
};

struct ConvergenceReport {
    std::vector<double> hbars;
    std::vector<ReportRow> rows;
    std::vector<TargetRow> targets;
    /// name -> fitted log-log slope of the residual against hbar
    std::map<std::string, double> slopes;
    /// name -> number of points in the fit
    std::map<std::string, std::size_t> fit_points;
    /// per-hbar failures, "hbar: message"
    std::vector<std::string> errors;
    std::map<std::string, std::string> metadata;
    /// state at the smallest hbar that succeeded
    std::optional<FockState> final_state;

    /// Residuals of one observable in hbar order (NaN where missing).
    [[nodiscard]] std::vector<double> series(const std::string &name) const;
};

std::vector<double> hbar_schedule(double start, double ratio, std::size_t count);

/// Least-squares slope of log(residual) against log(hbar) over the entries
/// after the `drop` largest hbar with finite positive residuals. NaN when
/// fewer than two points remain.
double fit_slope(std::span<const double> hbars, std::span<const double> residuals,
                 std::size_t drop, std::size_t *used = nullptr);

ConvergenceReport sweep(const HarmonicDecomposition &decomp, const SweepConfig &config);

} // namespace scarkit::scarlab
