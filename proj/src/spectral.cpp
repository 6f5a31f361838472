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

#include "scarkit/spectral.hpp"

#include "scarkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace scarkit::spectral {

void check_index(const HarmonicDecomposition &decomp,
                 std::span<const std::int64_t> k) {
    if (k.size() != decomp.d()) {
        throw DomainError("Fock index has " + std::to_string(k.size()) +
                          " entries, expected " + std::to_string(decomp.d()));
    }
    for (auto v : k) {
        if (v < 0) {
            throw DomainError("Fock index entries must be nonnegative");
        }
    }
}

std::int64_t ladder_index(const HarmonicDecomposition &decomp, std::size_t n,
                          std::span<const std::int64_t> k) {
    if (n >= decomp.d_omega()) {
        throw DomainError("component index " + std::to_string(n) +
                          " out of range");
    }
    const auto &kn = decomp.component(n).k;
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < k.size(); ++j) {
        sum += kn[j] * k[j];
    }
    return sum;
}

std::vector<std::int64_t> ladder_key(const HarmonicDecomposition &decomp,
                                     std::span<const std::int64_t> k) {
    std::vector<std::int64_t> out(decomp.d_omega());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = ladder_index(decomp, n, k);
    }
    return out;
}

double component_eigenvalue(const HarmonicDecomposition &decomp,
                            std::span<const std::int64_t> k, std::size_t n,
                            double hbar) {
    check_index(decomp, k);
    const auto L = ladder_index(decomp, n, k);
    const auto &c = decomp.component(n);
    return hbar * (c.ladder_step * static_cast<double>(L) + 0.5 * c.nu_trace);
}

double eigenvalue(const HarmonicDecomposition &decomp,
                  std::span<const std::int64_t> k, double hbar) {
    check_index(decomp, k);
    const auto omega = decomp.spec().omega();
    double sum = 0.5 * decomp.spec().omega_sum();
    for (std::size_t j = 0; j < k.size(); ++j) {
        sum += omega[j] * static_cast<double>(k[j]);
    }
    return hbar * sum;
}

std::vector<double> decompose_eigenvalue(const HarmonicDecomposition &decomp,
                                         std::span<const std::int64_t> k,
                                         double hbar) {
    std::vector<double> out(decomp.d_omega());
    for (std::size_t n = 0; n < out.size(); ++n) {
        out[n] = component_eigenvalue(decomp, k, n, hbar);
    }
    return out;
}

RationalVector generator_key(const HarmonicDecomposition &decomp,
                             std::span<const std::int64_t> k) {
    check_index(decomp, k);
    const auto &spec = decomp.spec();
    RationalVector key(spec.basis().size(), Rational(0));
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] == 0) {
            continue;
        }
        const auto &row = spec.row(j);
        for (std::size_t i = 0; i < key.size(); ++i) {
            key[i] += row[i] * k[j];
        }
    }
    return key;
}

std::vector<Level> enumerate_window(const HarmonicDecomposition &decomp,
                                    double hbar, double lo, double hi) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("hbar must be positive and finite");
    }
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw DomainError("window must satisfy lo <= hi with finite bounds");
    }
    const auto omega = decomp.spec().omega();
    const std::size_t d = omega.size();
    const double offset = 0.5 * decomp.spec().omega_sum();
    // omega . k must lie in [a, b]
    const double a = lo / hbar - offset;
    const double b = hi / hbar - offset;
    std::vector<Level> out;
    if (b < 0.0) {
        return out;
    }

    // collect first with cheap double arithmetic so an oversized window
    // fails before any exact keys are built
    std::vector<FockIndex> hits;
    FockIndex k(d, 0);
    std::size_t visited = 0;
    auto recurse = [&](auto &&self, std::size_t j, double used) -> void {
        if (j == d) {
            if (used >= a && used <= b) {
                hits.push_back(k);
            }
            return;
        }
        const auto top = static_cast<std::int64_t>(std::floor((b - used) / omega[j]));
        for (std::int64_t v = 0; v <= top; ++v) {
            if (++visited > kWindowBudget) {
                throw ResourceError("energy window exceeds " +
                                    std::to_string(kWindowBudget) +
                                    " lattice points");
            }
            k[j] = v;
            self(self, j + 1, used + omega[j] * static_cast<double>(v));
        }
        k[j] = 0;
    };
    recurse(recurse, 0, 0.0);

    std::map<RationalVector, Level> levels;
    for (auto &hit : hits) {
        auto key = generator_key(decomp, hit);
        auto &lvl = levels[key];
        if (lvl.members.empty()) {
            lvl.key = std::move(key);
            lvl.lambda = eigenvalue(decomp, hit, hbar);
            lvl.components = decompose_eigenvalue(decomp, hit, hbar);
        }
        lvl.members.push_back(std::move(hit));
    }

    for (auto &[key, lvl] : levels) {
        std::sort(lvl.members.begin(), lvl.members.end());
        out.push_back(std::move(lvl));
    }
    std::sort(out.begin(), out.end(), [](const Level &x, const Level &y) {
        return x.lambda < y.lambda;
    });
    return out;
}

namespace {

bool is_zero_energy(double e) { return std::abs(e) <= kZeroEnergy; }

bool all_zero(std::span<const double> E) {
    return std::all_of(E.begin(), E.end(), is_zero_energy);
}

} // namespace

double hbar_max(const HarmonicDecomposition &decomp, std::span<const double> E) {
    if (E.size() != decomp.d_omega()) {
        throw DomainError("energy vector length must equal d_omega");
    }
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n < E.size(); ++n) {
        if (is_zero_energy(E[n])) {
            continue;
        }
        const int sigma = E[n] > 0 ? 1 : -1;
        const auto &c = decomp.component(n);
        const double cond = static_cast<double>(c.conductor_for(sigma));
        // ceil(x) >= cond  <=>  x > cond - 1
        const double denom = (cond - 1.0) * c.ladder_step + sigma * 0.5 * c.nu_trace;
        if (denom > 0.0) {
            best = std::min(best, std::abs(E[n]) / denom);
        }
    }
    return best;
}

TargetEigenvalue select_target(const HarmonicDecomposition &decomp,
                               std::span<const double> E, double hbar) {
    if (E.size() != decomp.d_omega()) {
        throw DomainError("energy vector has " + std::to_string(E.size()) +
                          " entries, expected d_omega = " +
                          std::to_string(decomp.d_omega()));
    }
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("hbar must be positive and finite");
    }
    if (!all_zero(E)) {
        (void)freqarith::feasible_actions(decomp, E);
    }

    TargetEigenvalue t;
    t.E.assign(E.begin(), E.end());
    t.hbar = hbar;
    const std::size_t r = decomp.d_omega();
    t.N.assign(r, 0);
    t.sigma.assign(r, 1);
    t.ladder.assign(r, 0);
    t.lambda.assign(r, 0.0);
    for (std::size_t n = 0; n < r; ++n) {
        const auto &c = decomp.component(n);
        if (is_zero_energy(E[n])) {
            t.witnesses.emplace_back(decomp.d(), 0);
        } else {
            const int sigma = E[n] > 0 ? 1 : -1;
            const double x =
                sigma * (E[n] / hbar - 0.5 * c.nu_trace) / c.ladder_step;
            const double N = std::ceil(x);
            const auto cond = c.conductor_for(sigma);
            if (!(N >= static_cast<double>(cond))) {
                throw BelowConductorError(
                    "hbar = " + std::to_string(hbar) +
                    " leaves component " + std::to_string(n + 1) +
                    " below its conductor " + std::to_string(cond) +
                    " (hbar_max = " + std::to_string(hbar_max(decomp, E)) + ")");
            }
            if (N > 1e15) {
                throw ResourceError("ladder level too large");
            }
            t.sigma[n] = sigma;
            t.N[n] = static_cast<std::int64_t>(N);
            t.ladder[n] = sigma * t.N[n];
            auto w = freqarith::representation(c.k, sigma, t.N[n]);
            if (ladder_index(decomp, n, w) != t.ladder[n]) {
                throw ConsistencyError("ladder witness does not reach the level");
            }
            t.witnesses.push_back(std::move(w));
        }
        t.lambda[n] = hbar * (c.ladder_step * static_cast<double>(t.ladder[n]) +
                              0.5 * c.nu_trace);
        if (!is_zero_energy(E[n]) &&
            !(std::abs(E[n] - t.lambda[n]) < hbar * c.ladder_step)) {
            throw ConsistencyError("target eigenvalue misses its energy window");
        }
        t.lambda_total += t.lambda[n];
    }
    return t;
}

bool in_target(const HarmonicDecomposition &decomp, const TargetEigenvalue &target,
               std::span<const std::int64_t> k) {
    for (std::size_t n = 0; n < decomp.d_omega(); ++n) {
        if (ladder_index(decomp, n, k) != target.ladder[n]) {
            return false;
        }
    }
    return true;
}

} // namespace scarkit::spectral
