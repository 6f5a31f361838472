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

// Dense tensor kernels behind expectations, torus quadrature and grids.
// Every kernel exists twice: a plain serial reference and an OpenMP
// version whose reductions use fixed blocking, so results do not depend
// on the thread count.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace scarkit::kernels {

using Complex = std::complex<double>;

/// Inclusive per-mode index ranges [lo_j, hi_j].
struct Box {
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;

    [[nodiscard]] std::size_t rank() const noexcept { return lo.size(); }
    [[nodiscard]] std::size_t extent(std::size_t j) const {
        return static_cast<std::size_t>(hi[j] - lo[j] + 1);
    }
    [[nodiscard]] std::size_t volume() const;
    bool operator==(const Box &) const = default;
};

/// Row-major over the box, last mode fastest.
struct Tensor {
    Box box;
    std::vector<Complex> data;

    explicit Tensor(Box b);
    /// Flat position of a multi-index inside the box.
    [[nodiscard]] std::size_t offset(std::span<const std::int64_t> k) const;
};

/// Single-mode operator block: rows [row_lo, row_lo + rows), columns
/// [col_lo, col_lo + cols), stored row-major.
struct ModeMatrix {
    std::int64_t row_lo = 0;
    std::size_t rows = 0;
    std::int64_t col_lo = 0;
    std::size_t cols = 0;
    std::vector<Complex> data;

    ModeMatrix(std::int64_t row_lo, std::size_t rows, std::int64_t col_lo,
               std::size_t cols);
    Complex &at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    [[nodiscard]] const Complex &at(std::size_t r, std::size_t c) const {
        return data[r * cols + c];
    }
};

/// Reduction block length shared by the parallel kernels.
inline constexpr std::size_t kBlock = 1024;

namespace serial {

/// Applies `m` along `mode`; the output range of that mode is m's rows.
Tensor apply_mode(const Tensor &t, std::size_t mode, const ModeMatrix &m);

/// sum conj(bra) * ket over a common box.
Complex dot(const Tensor &bra, const Tensor &ket);

/// Product state: out[k] = prod_j factors[j][k_j - lo_j].
Tensor outer(const Box &box, const std::vector<std::vector<Complex>> &factors);

/// Mean of f over the grid prod_n [0, counts[n]).
template <class F>
Complex torus_mean(std::span<const std::size_t> counts, F &&f) {
    std::size_t total = 1;
    for (auto c : counts) {
        total *= c;
    }
    std::vector<std::size_t> idx(counts.size(), 0);
    Complex sum = 0.0;
    for (std::size_t p = 0; p < total; ++p) {
        std::size_t rest = p;
        for (std::size_t n = counts.size(); n-- > 0;) {
            idx[n] = rest % counts[n];
            rest /= counts[n];
        }
        sum += f(std::span<const std::size_t>(idx));
    }
    return sum / static_cast<double>(total);
}

/// values[i] = f(i) for i < count.
template <class F>
std::vector<double> grid_map(std::size_t count, F &&f) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = f(i);
    }
    return out;
}

} // namespace serial

namespace parallel {

Tensor apply_mode(const Tensor &t, std::size_t mode, const ModeMatrix &m);
Complex dot(const Tensor &bra, const Tensor &ket);
Tensor outer(const Box &box, const std::vector<std::vector<Complex>> &factors);

template <class F>
Complex torus_mean(std::span<const std::size_t> counts, F &&f) {
    std::size_t total = 1;
    for (auto c : counts) {
        total *= c;
    }
    const std::size_t blocks = (total + kBlock - 1) / kBlock;
    std::vector<Complex> partial(blocks);
    const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        std::vector<std::size_t> idx(counts.size(), 0);
        const std::size_t first = static_cast<std::size_t>(b) * kBlock;
        const std::size_t last = std::min(total, first + kBlock);
        Complex sum = 0.0;
        for (std::size_t p = first; p < last; ++p) {
            std::size_t rest = p;
            for (std::size_t n = counts.size(); n-- > 0;) {
                idx[n] = rest % counts[n];
                rest /= counts[n];
            }
            sum += f(std::span<const std::size_t>(idx));
        }
        partial[static_cast<std::size_t>(b)] = sum;
    }
    Complex sum = 0.0;
    for (const auto &v : partial) {
        sum += v;
    }
    return sum / static_cast<double>(total);
}

template <class F>
std::vector<double> grid_map(std::size_t count, F &&f) {
    std::vector<double> out(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    }
    return out;
}

} // namespace parallel

/// Sets the OpenMP thread count (no-op without OpenMP).
void set_threads(int n);
int max_threads();

} // namespace scarkit::kernels
