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

// Spectrum of the oscillator and of its periodic components on the Fock
// lattice, energy-window enumeration and target eigenvalues.
//
// Component n acts on |k> with eigenvalue hbar (step_n L_n(k) + nu(n)/2),
// where L_n(k) = k(n) . k is an integer and step_n = 2 pi / T_n. Because the
// pivot frequencies are Q-independent, joint eigenvalues are compared
// through the integer vector (L_1(k), ..., L_{d_omega}(k)).

#include "scarkit/freqarith.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace scarkit::spectral {

using freqarith::HarmonicDecomposition;

/// Occupation numbers k in Z_+^d.
using FockIndex = std::vector<std::int64_t>;

/// Throws DomainError unless k has d nonnegative entries.
void check_index(const HarmonicDecomposition &decomp, std::span<const std::int64_t> k);

/// k(n) . k for the 0-based component n.
std::int64_t ladder_index(const HarmonicDecomposition &decomp, std::size_t n,
                          std::span<const std::int64_t> k);

/// (L_1(k), ..., L_{d_omega}(k))
std::vector<std::int64_t> ladder_key(const HarmonicDecomposition &decomp,
                                     std::span<const std::int64_t> k);

/// hbar (v_n nu_n . k + nu(n)/2), n 0-based.
double component_eigenvalue(const HarmonicDecomposition &decomp,
                            std::span<const std::int64_t> k, std::size_t n,
                            double hbar);

/// hbar (omega . k + |omega|_1 / 2)
double eigenvalue(const HarmonicDecomposition &decomp,
                  std::span<const std::int64_t> k, double hbar);

std::vector<double> decompose_eigenvalue(const HarmonicDecomposition &decomp,
                                         std::span<const std::int64_t> k,
                                         double hbar);

/// Generator coordinates of omega . k; equal keys <=> equal eigenvalues.
RationalVector generator_key(const HarmonicDecomposition &decomp,
                             std::span<const std::int64_t> k);

struct Level {
    RationalVector key;
    double lambda = 0.0;
    std::vector<double> components;
    /// Lexicographically sorted.
    std::vector<FockIndex> members;

    [[nodiscard]] std::size_t multiplicity() const noexcept { return members.size(); }
};

inline constexpr std::size_t kWindowBudget = 10'000'000;

/// Every level of Op(H) in [lo, hi], ascending.
std::vector<Level> enumerate_window(const HarmonicDecomposition &decomp,
                                    double hbar, double lo, double hi);

struct TargetEigenvalue {
    std::vector<double> E;
    double hbar = 0.0;
    std::vector<std::int64_t> N;
    std::vector<int> sigma;
    /// sigma_n N_n: the common value of L_n(k) on the joint eigenspace.
    std::vector<std::int64_t> ladder;
    std::vector<double> lambda;
    double lambda_total = 0.0;
    /// Per component, some k >= 0 with L_n(k) = ladder[n].
    std::vector<FockIndex> witnesses;
};

/// Energies with |E_n| at or below this are treated as zero.
inline constexpr double kZeroEnergy = 1e-13;

/// Largest hbar for which every N(hbar, n) with E_n != 0 reaches the
/// conductor. Infinite when no component constrains it.
double hbar_max(const HarmonicDecomposition &decomp, std::span<const double> E);

/// Target eigenvalue for the energy vector E. E must lie in Sigma_H unless
/// it is identically zero (the ground target).
TargetEigenvalue select_target(const HarmonicDecomposition &decomp,
                               std::span<const double> E, double hbar);

/// True when k lies in the joint eigenspace of the target.
bool in_target(const HarmonicDecomposition &decomp, const TargetEigenvalue &target,
               std::span<const std::int64_t> k);

} // namespace scarkit::spectral
