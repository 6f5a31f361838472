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

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace scarkit {

/// A point z = (x, xi) of R^{2d}.
struct PhasePoint {
    std::vector<double> x;
    std::vector<double> xi;

    PhasePoint() = default;
    PhasePoint(std::vector<double> position, std::vector<double> momentum)
        : x(std::move(position)), xi(std::move(momentum)) {}

    static PhasePoint zero(std::size_t d) {
        return PhasePoint(std::vector<double>(d, 0.0), std::vector<double>(d, 0.0));
    }

    /// x_j = sqrt(2 h_j), xi_j = 0.
    static PhasePoint from_actions(std::span<const double> h) {
        PhasePoint z = zero(h.size());
        for (std::size_t j = 0; j < h.size(); ++j) {
            z.x[j] = std::sqrt(2.0 * h[j]);
        }
        return z;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return x.size(); }

    /// H_j(z) = (x_j^2 + xi_j^2) / 2
    [[nodiscard]] double mode_energy(std::size_t j) const {
        return 0.5 * (x[j] * x[j] + xi[j] * xi[j]);
    }

    /// True when mode j sits exactly at the origin.
    [[nodiscard]] bool mode_at_rest(std::size_t j) const {
        return x[j] == 0.0 && xi[j] == 0.0;
    }
};

} // namespace scarkit
