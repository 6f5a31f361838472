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

#include "scarkit/kernels.hpp"

#include "scarkit/errors.hpp"

namespace scarkit::kernels {

std::size_t Box::volume() const {
    std::size_t v = 1;
    for (std::size_t j = 0; j < rank(); ++j) {
        if (hi[j] < lo[j]) {
            return 0;
        }
        v *= extent(j);
    }
    return v;
}

Tensor::Tensor(Box b) : box(std::move(b)), data(box.volume(), Complex(0.0)) {}

std::size_t Tensor::offset(std::span<const std::int64_t> k) const {
    std::size_t off = 0;
    for (std::size_t j = 0; j < box.rank(); ++j) {
        off = off * box.extent(j) + static_cast<std::size_t>(k[j] - box.lo[j]);
    }
    return off;
}

ModeMatrix::ModeMatrix(std::int64_t row_lo_, std::size_t rows_,
                       std::int64_t col_lo_, std::size_t cols_)
    : row_lo(row_lo_), rows(rows_), col_lo(col_lo_), cols(cols_),
      data(rows_ * cols_, Complex(0.0)) {}

namespace {

struct ModeLayout {
    std::size_t outer = 1;
    std::size_t inner = 1;
    std::size_t in_extent = 0;
    // overlap of the matrix columns with the tensor range, as offsets
    std::size_t c_first = 0; // into the tensor's mode range
    std::size_t m_first = 0; // into the matrix columns
    std::size_t count = 0;
};

ModeLayout layout(const Tensor &t, std::size_t mode, const ModeMatrix &m) {
    if (mode >= t.box.rank()) {
        throw DomainError("mode index out of range");
    }
    ModeLayout l;
    for (std::size_t j = 0; j < mode; ++j) {
        l.outer *= t.box.extent(j);
    }
    for (std::size_t j = mode + 1; j < t.box.rank(); ++j) {
        l.inner *= t.box.extent(j);
    }
    l.in_extent = t.box.extent(mode);
    const std::int64_t lo = std::max(t.box.lo[mode], m.col_lo);
    const std::int64_t hi = std::min(t.box.hi[mode],
                                     m.col_lo + static_cast<std::int64_t>(m.cols) - 1);
    if (hi >= lo) {
        l.c_first = static_cast<std::size_t>(lo - t.box.lo[mode]);
        l.m_first = static_cast<std::size_t>(lo - m.col_lo);
        l.count = static_cast<std::size_t>(hi - lo + 1);
    }
    return l;
}

Box output_box(const Tensor &t, std::size_t mode, const ModeMatrix &m) {
    Box b = t.box;
    b.lo[mode] = m.row_lo;
    b.hi[mode] = m.row_lo + static_cast<std::int64_t>(m.rows) - 1;
    return b;
}

inline void apply_row(const Tensor &t, const ModeMatrix &m, const ModeLayout &l,
                      std::size_t o, std::size_t r, Tensor &out) {
    Complex *dst = out.data.data() + (o * m.rows + r) * l.inner;
    const Complex *row = m.data.data() + r * m.cols + l.m_first;
    const Complex *src = t.data.data() + (o * l.in_extent + l.c_first) * l.inner;
    for (std::size_t c = 0; c < l.count; ++c) {
        const Complex a = row[c];
        if (a == Complex(0.0)) {
            continue;
        }
        const Complex *s = src + c * l.inner;
        for (std::size_t i = 0; i < l.inner; ++i) {
            dst[i] += a * s[i];
        }
    }
}

void check_same_box(const Tensor &bra, const Tensor &ket) {
    if (!(bra.box == ket.box)) {
        throw DomainError("dot product of tensors over different boxes");
    }
}

void check_factors(const Box &box, const std::vector<std::vector<Complex>> &f) {
    if (f.size() != box.rank()) {
        throw DomainError("factor count does not match box rank");
    }
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (f[j].size() != box.extent(j)) {
            throw DomainError("factor length does not match box extent");
        }
    }
}

} // namespace

namespace serial {

Tensor apply_mode(const Tensor &t, std::size_t mode, const ModeMatrix &m) {
    const ModeLayout l = layout(t, mode, m);
    Tensor out(output_box(t, mode, m));
    for (std::size_t o = 0; o < l.outer; ++o) {
        for (std::size_t r = 0; r < m.rows; ++r) {
            apply_row(t, m, l, o, r, out);
        }
    }
    return out;
}

Complex dot(const Tensor &bra, const Tensor &ket) {
    check_same_box(bra, ket);
    Complex sum = 0.0;
    for (std::size_t i = 0; i < bra.data.size(); ++i) {
        sum += std::conj(bra.data[i]) * ket.data[i];
    }
    return sum;
}

Tensor outer(const Box &box, const std::vector<std::vector<Complex>> &factors) {
    check_factors(box, factors);
    Tensor out(box);
    const std::size_t d = box.rank();
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t p = 0; p < out.data.size(); ++p) {
        std::size_t rest = p;
        for (std::size_t j = d; j-- > 0;) {
            idx[j] = rest % box.extent(j);
            rest /= box.extent(j);
        }
        Complex v = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            v *= factors[j][idx[j]];
        }
        out.data[p] = v;
    }
    return out;
}

} // namespace serial

namespace parallel {

Tensor apply_mode(const Tensor &t, std::size_t mode, const ModeMatrix &m) {
    const ModeLayout l = layout(t, mode, m);
    Tensor out(output_box(t, mode, m));
    const auto work = static_cast<std::int64_t>(l.outer * m.rows);
#pragma omp parallel for schedule(static)
    for (std::int64_t w = 0; w < work; ++w) {
        const auto o = static_cast<std::size_t>(w) / m.rows;
        const auto r = static_cast<std::size_t>(w) % m.rows;
        apply_row(t, m, l, o, r, out);
    }
    return out;
}

Complex dot(const Tensor &bra, const Tensor &ket) {
    check_same_box(bra, ket);
    const std::size_t total = bra.data.size();
    const std::size_t blocks = (total + kBlock - 1) / kBlock;
    std::vector<Complex> partial(blocks);
    const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < nblocks; ++b) {
        const std::size_t first = static_cast<std::size_t>(b) * kBlock;
        const std::size_t last = std::min(total, first + kBlock);
        Complex sum = 0.0;
        for (std::size_t i = first; i < last; ++i) {
            sum += std::conj(bra.data[i]) * ket.data[i];
        }
        partial[static_cast<std::size_t>(b)] = sum;
    }
    Complex sum = 0.0;
    for (const auto &v : partial) {
        sum += v;
    }
    return sum;
}

Tensor outer(const Box &box, const std::vector<std::vector<Complex>> &factors) {
    check_factors(box, factors);
    Tensor out(box);
    const std::size_t d = box.rank();
    const auto total = static_cast<std::int64_t>(out.data.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t p = 0; p < total; ++p) {
        std::vector<std::size_t> idx(d, 0);
        auto rest = static_cast<std::size_t>(p);
        for (std::size_t j = d; j-- > 0;) {
            idx[j] = rest % box.extent(j);
            rest /= box.extent(j);
        }
        Complex v = 1.0;
        for (std::size_t j = 0; j < d; ++j) {
            v *= factors[j][idx[j]];
        }
        out.data[static_cast<std::size_t>(p)] = v;
    }
    return out;
}

} // namespace parallel

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) {
        omp_set_num_threads(n);
    }
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace scarkit::kernels
