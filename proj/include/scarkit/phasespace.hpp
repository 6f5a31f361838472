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

// Classical side: the multi-flow of the periodic components, orbit
// averages over R_omega, membership in Sigma_H and Husimi densities.

#include "scarkit/fockstate.hpp"
#include "scarkit/freqarith.hpp"
#include "scarkit/phase_point.hpp"
#include "scarkit/symbol.hpp"

#include <span>
#include <vector>

namespace scarkit::phasespace {

using fockstate::Backend;
using fockstate::FockState;
using freqarith::HarmonicDecomposition;

/// theta_j = sum_n v_n nu_{n,j} tau_n
std::vector<double> flow_angles(const HarmonicDecomposition &decomp,
                                std::span<const double> tau);

/// Angles of the flow of the single component n for time t.
std::vector<double> component_angles(const HarmonicDecomposition &decomp,
                                     std::size_t n, double t);

/// Rotates z by the given angles, z_j -> e^{-i theta_j} z_j.
PhasePoint rotate(const PhasePoint &z, std::span<const double> theta);

PhasePoint multi_flow(const HarmonicDecomposition &decomp, const PhasePoint &z0,
                      std::span<const double> tau);

/// H(z) = sum_j omega_j H_j(z)
double hamiltonian(const HarmonicDecomposition &decomp, const PhasePoint &z);

/// (H_1(z), ..., H_{d_omega}(z)) for the periodic components.
std::vector<double> component_energies(const HarmonicDecomposition &decomp,
                                       const PhasePoint &z);

/// Mean of a over R_omega along the multi-flow started at z0. Characters
/// make the result complex in general.
Complex orbit_average(const HarmonicDecomposition &decomp, const Symbol &a,
                      const PhasePoint &z0, Backend backend = Backend::parallel);

/// Equispaced points per axis used for the polynomial part of a.
std::vector<std::size_t> polynomial_grid(const HarmonicDecomposition &decomp,
                                         int degree);

struct EnergyVector {
    std::vector<double> E;
    /// Actions h >= 0 with omega . h = 1 and v_n nu_n . h = E_n.
    std::vector<double> h;
    PhasePoint witness;
    bool numerical = true;
};

/// Throws NotInSigmaError when E is not attained on H^{-1}(1).
EnergyVector sigma_membership(const HarmonicDecomposition &decomp,
                              std::span<const double> E);

/// |<coherent(z), state>|^2 / (2 pi hbar)^d
double husimi(const FockState &state, const PhasePoint &z);

struct HusimiGrid {
    std::size_t mode = 0;
    std::vector<double> x;
    std::vector<double> xi;
    /// values[i * xi.size() + k] at (x[i], xi[k]).
    std::vector<double> values;

    /// Riemann sum over the grid.
    [[nodiscard]] double integral() const;
};

/// Husimi density on the (x_mode, xi_mode) plane with the other modes
/// fixed at `fixed`, on an n x n grid over [-half_width, half_width]^2.
HusimiGrid husimi_grid(const FockState &state, std::size_t mode,
                       const PhasePoint &fixed, double half_width, std::size_t n,
                       Backend backend = Backend::parallel);

/// Exact integral of the Husimi slice over the mode plane.
double husimi_slice_mass(const FockState &state, std::size_t mode,
                         const PhasePoint &fixed);

/// A half-width that contains the state's support on the given mode.
double husimi_extent(const FockState &state, std::size_t mode);

/// Values at z of the flow-invariant monomials prod z_j^{p_j} conj(z_j)^{q_j}
/// of degree <= 4; equal signatures identify the same invariant torus.
std::vector<Complex> torus_signature(const HarmonicDecomposition &decomp,
                                     const PhasePoint &z);

bool same_torus(const HarmonicDecomposition &decomp, const PhasePoint &a,
                const PhasePoint &b, double tol = 1e-8);

} // namespace scarkit::phasespace
