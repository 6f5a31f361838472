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

// Exact arithmetic over a frequency vector declared as rational
// combinations of Q-independent real generators: Q-span rank, periodic
// decomposition H = sum_n v_n (nu_n . (H_1..H_d)), periods, and
// numerical-semigroup conductors of the ladder vectors k(n).

#include "scarkit/exact.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace scarkit::freqarith {

/// Named real generators g_1..g_m. The values are *declared* Q-linearly
/// independent; nothing here tries to prove that.
struct GeneratorBasis {
    std::vector<std::string> labels;
    std::vector<HighPrecision> values;

    static GeneratorBasis unit();
    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// omega_j = sum_i coords[j][i] * g_i, with every omega_j > 0.
class FrequencySpec {
  public:
    FrequencySpec(GeneratorBasis basis, std::vector<RationalVector> coords);

    /// Also checks that `numeric` agrees with the exact rows to 20 digits.
    FrequencySpec(GeneratorBasis basis, std::vector<RationalVector> coords,
                  const std::vector<HighPrecision> &numeric);

    /// All-rational frequencies over the single generator 1.
    static FrequencySpec rational(const RationalVector &omega);

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] const GeneratorBasis &basis() const noexcept { return basis_; }
    [[nodiscard]] const std::vector<RationalVector> &coords() const noexcept {
        return coords_;
    }
    [[nodiscard]] const RationalVector &row(std::size_t j) const {
        return coords_.at(j);
    }
    [[nodiscard]] const HighPrecision &omega_exact(std::size_t j) const {
        return exact_.at(j);
    }
    [[nodiscard]] std::span<const double> omega() const noexcept {
        return omega_;
    }
    /// |omega|_1
    [[nodiscard]] double omega_sum() const noexcept { return omega_sum_; }

    /// Evaluates a generator-coordinate vector.
    [[nodiscard]] HighPrecision evaluate(const RationalVector &coords) const;

  private:
    void validate_and_evaluate();

    GeneratorBasis basis_;
    std::vector<RationalVector> coords_;
    std::vector<HighPrecision> exact_;
    std::vector<double> omega_;
    double omega_sum_ = 0.0;
};

/// Parses the plain-text spec format:
///
///     # comment
///     generators = one:1, sqrt2:1.41421356237309504880168872420969807857
///     omega_1 = 1 0
///     omega_2 = 0 1
///
/// A generator value is a decimal with at least 30 significant digits, the
/// integer 1, or `sqrt(n)` (evaluated to 50 digits). Without a
/// `generators` line the basis is {1}.
FrequencySpec parse_frequency_spec(std::string_view text);
FrequencySpec load_frequency_spec(const std::filesystem::path &path);

struct SpanInfo {
    std::size_t d_omega = 0;
    /// 0-based indices of the frequencies forming a basis of S_omega.
    std::vector<std::size_t> pivots;
};

SpanInfo rational_span(const FrequencySpec &spec);

/// [nu], K and k = K [nu]^{-1} nu for a nonzero rational vector.
struct LadderVector {
    Rational nu_min;
    std::int64_t K = 0;
    std::vector<std::int64_t> k;
};

LadderVector ladder_vector(std::span<const Rational> nu);

/// Period 2 pi K / (|v| [nu]) of the flow of sum_j v nu_j H_j.
double period_of(double v, std::span<const Rational> nu);

struct PeriodicComponent {
    std::size_t index = 0;
    std::size_t pivot = 0;
    RationalVector v_coords;
    HighPrecision v_exact;
    double v = 0.0;
    RationalVector nu;
    /// v nu_j in double precision, the rotation speed of mode j.
    std::vector<double> speeds;
    Rational nu_min;
    std::int64_t K = 0;
    std::vector<std::int64_t> k;
    double period = 0.0;
    /// 2 pi / T_n: spacing of the ladder of Op(H_n) in units of hbar.
    double ladder_step = 0.0;
    /// nu(n) = v (nu_1 + ... + nu_d)
    double nu_trace = 0.0;
    /// Conductor for sigma = +1 / -1; empty when the sign admits no
    /// positive level at all.
    std::optional<std::int64_t> conductor_up;
    std::optional<std::int64_t> conductor_down;

    [[nodiscard]] std::int64_t conductor_for(int sigma) const;
};

class HarmonicDecomposition {
  public:
    HarmonicDecomposition(FrequencySpec spec,
                          std::vector<PeriodicComponent> components);

    [[nodiscard]] const FrequencySpec &spec() const noexcept { return spec_; }
    [[nodiscard]] std::size_t d() const noexcept { return spec_.dim(); }
    [[nodiscard]] std::size_t d_omega() const noexcept {
        return components_.size();
    }
    [[nodiscard]] const std::vector<PeriodicComponent> &
    components() const noexcept {
        return components_;
    }
    [[nodiscard]] const PeriodicComponent &component(std::size_t n) const {
        return components_.at(n);
    }
    /// d_omega x d matrix of the nu_{n,j}.
    [[nodiscard]] std::vector<RationalVector> nu_matrix() const;
    /// |R_omega| = T_1 ... T_{d_omega}
    [[nodiscard]] double torus_volume() const;

  private:
    FrequencySpec spec_;
    std::vector<PeriodicComponent> components_;
};

HarmonicDecomposition decompose(const FrequencySpec &spec);

/// Least N0 >= 0 such that every N >= N0 is k' . k = sigma N for some
/// k' in Z_+^d. Zero entries of k are ignored.
std::int64_t conductor(std::span<const std::int64_t> k, int sigma);

/// A witness k' >= 0 with k' . k = sigma N. Throws UnresolvedError when the
/// bounded search fails and DomainError when no witness can exist.
std::vector<std::int64_t> representation(std::span<const std::int64_t> k,
                                         int sigma, std::int64_t N);

/// sqrt of the eigenvalues of a symmetric positive-definite Q, ascending.
std::vector<double> numeric_frequencies(const Eigen::MatrixXd &Q);

/// A point h in R_+^d of the action simplex with v_n nu_n . h = E_n.
struct ActionWitness {
    std::vector<double> h;
    /// True when feasibility was decided in floating point (tolerance
    /// 1e-10) rather than exactly.
    bool numerical = true;
};

/// Barycentre of the feasible vertices of {h >= 0 : v_n nu_n . h = E_n}.
/// Throws NotInSigmaError when the set is empty or sum_n E_n != 1.
ActionWitness feasible_actions(const HarmonicDecomposition &decomp,
                               std::span<const double> E);

} // namespace scarkit::freqarith
