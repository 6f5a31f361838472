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

// States in the joint number basis |k>, k in Z_+^d: coherent states, the
// time average over R_omega (realized as the joint spectral projection),
// the normalization constant of the scarred state, and Weyl-quantized
// expectations.

#include "scarkit/kernels.hpp"
#include "scarkit/phase_point.hpp"
#include "scarkit/spectral.hpp"
#include "scarkit/symbol.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace scarkit::fockstate {

using freqarith::HarmonicDecomposition;
using spectral::FockIndex;
using spectral::TargetEigenvalue;

enum class Backend { serial, parallel };

/// Sparse coefficient table over multi-indices, sorted lexicographically.
class FockState {
  public:
    FockState(double hbar, std::size_t d);
    /// Sorts and merges duplicate indices.
    FockState(double hbar, std::size_t d, std::vector<FockIndex> indices,
              std::vector<Complex> coeffs, double tail_bound = 0.0);

    static FockState basis(double hbar, FockIndex k);
    /// Every entry of a dense tensor (box order is already lexicographic).
    static FockState from_tensor(double hbar, const kernels::Tensor &t,
                                 double tail_bound = 0.0);

    [[nodiscard]] double hbar() const noexcept { return hbar_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t size() const noexcept { return coeffs_.size(); }
    [[nodiscard]] bool empty() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] std::span<const std::int64_t> index(std::size_t i) const {
        return {indices_.data() + i * dim_, dim_};
    }
    [[nodiscard]] const std::vector<Complex> &coeffs() const noexcept {
        return coeffs_;
    }
    /// Upper bound on the squared norm discarded at construction.
    [[nodiscard]] double tail_bound() const noexcept { return tail_bound_; }
    /// Per-mode largest index present.
    [[nodiscard]] std::vector<std::int64_t> cutoff() const;

    /// Zero when k is absent.
    [[nodiscard]] Complex coefficient(std::span<const std::int64_t> k) const;

    [[nodiscard]] double norm() const;
    [[nodiscard]] FockState scaled(Complex c) const;
    [[nodiscard]] FockState normalized() const;
    /// Keeps the entries for which keep(index) is true.
    template <class Pred> [[nodiscard]] FockState filtered(Pred keep) const {
        std::vector<FockIndex> idx;
        std::vector<Complex> c;
        for (std::size_t i = 0; i < size(); ++i) {
            if (keep(index(i))) {
                idx.emplace_back(index(i).begin(), index(i).end());
                c.push_back(coeffs_[i]);
            }
        }
        return FockState(hbar_, dim_, std::move(idx), std::move(c), tail_bound_);
    }

    [[nodiscard]] kernels::Box bounding_box() const;
    [[nodiscard]] kernels::Tensor to_tensor(const kernels::Box &box) const;

    friend FockState operator+(const FockState &a, const FockState &b);
    friend FockState operator-(const FockState &a, const FockState &b);

  private:
    double hbar_;
    std::size_t dim_;
    std::vector<std::int64_t> indices_; // size() * dim_, row-major
    std::vector<Complex> coeffs_;
    double tail_bound_ = 0.0;
};

/// <a|b>
Complex inner(const FockState &a, const FockState &b);

/// alpha_j = (x_j + i xi_j) / sqrt(2 hbar)
std::vector<Complex> coherent_amplitudes(const PhasePoint &z0, double hbar);

/// Product coherent state truncated so that each mode's discarded Poisson
/// mass stays below tail_tol / d.
FockState coherent(const PhasePoint &z0, double hbar, double tail_tol,
                   Backend backend = Backend::parallel);

/// Orthogonal projection onto the joint eigenspace of the target. Throws
/// EmptyProjectionError when nothing survives.
FockState average_project(const HarmonicDecomposition &decomp,
                          const FockState &state, const TargetEigenvalue &target);

/// Gradients of the periodic components at z0 and the reduced system on
/// the excited modes.
struct GramInfo {
    std::size_t rank_d0 = 0;
    /// Modes with H_j(z0) > 0.
    std::vector<std::size_t> active;
    /// Indices n of the components whose projected nu_n form the basis.
    std::vector<std::size_t> basis;
    /// Reduced pivots v_l + sum_n b_{n,l} v_n.
    std::vector<double> v_reduced;
    std::vector<double> periods;
    /// Product of the reduced periods.
    double torus_volume = 1.0;
    Eigen::MatrixXd matrix;
    double det = 1.0;
};

GramInfo gram(const PhasePoint &z0, const HarmonicDecomposition &decomp);

struct ScarState {
    FockState state;
    TargetEigenvalue target;
    PhasePoint z0;
    double c_hbar = 1.0;
    std::size_t rank_d0 = 0;
    double gram_det = 1.0;
    /// ||P Psi||^2 before normalization.
    double projected_mass = 1.0;
};

/// coherent -> average_project -> normalize, plus the normalization constant.
ScarState normalize_scar(const HarmonicDecomposition &decomp, const PhasePoint &z0,
                         std::span<const double> E, double hbar, double tail_tol);

/// <bra, Op_hbar(a) ket> with Weyl quantization.
Complex expectation(const FockState &bra, const FockState &ket, const Symbol &a,
                    Backend backend = Backend::parallel);

/// Op_hbar(a) psi for a polynomial symbol, by the ladder algebra.
FockState apply(const Symbol &a, const FockState &psi);

/// ||Op(H_n) psi - lambda psi||_2
double eigen_residual(const HarmonicDecomposition &decomp, const FockState &psi,
                      std::size_t n, double lambda);

/// Per-mode matrix blocks, exposed for testing.
kernels::ModeMatrix weyl_mode_matrix(int x_power, int xi_power, double hbar,
                                     std::int64_t row_lo, std::size_t rows,
                                     std::int64_t col_lo, std::size_t cols);
kernels::ModeMatrix displacement_matrix(Complex beta, std::int64_t row_lo,
                                        std::size_t rows, std::int64_t col_lo,
                                        std::size_t cols);

/// "# hbar = ..." then k1..kd,re,im rows.
void write_state_csv(std::ostream &out, const FockState &state,
                     const std::vector<std::string> &comments = {});
FockState read_state_csv(std::istream &in);

} // namespace scarkit::fockstate
