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

#include "scarkit/phasespace.hpp"

#include "scarkit/errors.hpp"
#include "scarkit/kernels.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace scarkit::phasespace {

namespace {

constexpr double kTwoPi = 2.0 * boost::math::constants::pi<double>();

void check_point(const HarmonicDecomposition &decomp, const PhasePoint &z) {
    if (z.dim() != decomp.d() || z.xi.size() != decomp.d()) {
        throw DomainError("phase point dimension does not match the oscillator");
    }
}

} // namespace

std::vector<double> flow_angles(const HarmonicDecomposition &decomp,
                                std::span<const double> tau) {
    if (tau.size() != decomp.d_omega()) {
        throw DomainError("flow time vector must have d_omega entries");
    }
    std::vector<double> theta(decomp.d(), 0.0);
    for (std::size_t n = 0; n < tau.size(); ++n) {
        const auto &speeds = decomp.component(n).speeds;
        for (std::size_t j = 0; j < theta.size(); ++j) {
            theta[j] += speeds[j] * tau[n];
        }
    }
    return theta;
}

std::vector<double> component_angles(const HarmonicDecomposition &decomp,
                                     std::size_t n, double t) {
    const auto &speeds = decomp.component(n).speeds;
    std::vector<double> theta(speeds.size());
    for (std::size_t j = 0; j < theta.size(); ++j) {
        theta[j] = speeds[j] * t;
    }
    return theta;
}

PhasePoint rotate(const PhasePoint &z, std::span<const double> theta) {
    if (theta.size() != z.dim()) {
        throw DomainError("rotation angle count mismatch");
    }
    PhasePoint out = z;
    for (std::size_t j = 0; j < z.dim(); ++j) {
        const double c = std::cos(theta[j]);
        const double s = std::sin(theta[j]);
        out.x[j] = c * z.x[j] + s * z.xi[j];
        out.xi[j] = -s * z.x[j] + c * z.xi[j];
    }
    return out;
}

PhasePoint multi_flow(const HarmonicDecomposition &decomp, const PhasePoint &z0,
                      std::span<const double> tau) {
    check_point(decomp, z0);
    return rotate(z0, flow_angles(decomp, tau));
}

double hamiltonian(const HarmonicDecomposition &decomp, const PhasePoint &z) {
    check_point(decomp, z);
    const auto omega = decomp.spec().omega();
    double sum = 0.0;
    for (std::size_t j = 0; j < z.dim(); ++j) {
        sum += omega[j] * z.mode_energy(j);
    }
    return sum;
}

std::vector<double> component_energies(const HarmonicDecomposition &decomp,
                                       const PhasePoint &z) {
    check_point(decomp, z);
    std::vector<double> out(decomp.d_omega(), 0.0);
    for (std::size_t n = 0; n < out.size(); ++n) {
        const auto &speeds = decomp.component(n).speeds;
        for (std::size_t j = 0; j < z.dim(); ++j) {
            out[n] += speeds[j] * z.mode_energy(j);
        }
    }
    return out;
}

std::vector<std::size_t> polynomial_grid(const HarmonicDecomposition &decomp,
                                         int degree) {
    std::vector<std::size_t> counts;
    for (const auto &c : decomp.components()) {
        std::int64_t kmax = 0;
        for (auto v : c.k) {
            kmax = std::max<std::int64_t>(kmax, v < 0 ? -v : v);
        }
        counts.push_back(static_cast<std::size_t>(2 * degree * kmax + 16));
    }
    return counts;
}

namespace {

/// Mean of f(z0 rotated to grid point) over an equispaced grid of R_omega.
/// On grid point i the phase of mode j is 2 pi sum_n i_n k(n)_j / M_n.
template <class F>
Complex grid_mean(const HarmonicDecomposition &decomp, const PhasePoint &z0,
                  std::span<const std::size_t> counts, Backend backend, F &&f) {
    const std::size_t d = decomp.d();
    auto at = [&](std::span<const std::size_t> idx) {
        std::vector<double> theta(d, 0.0);
        for (std::size_t n = 0; n < idx.size(); ++n) {
            const auto &k = decomp.component(n).k;
            const auto M = static_cast<std::int64_t>(counts[n]);
            for (std::size_t j = 0; j < d; ++j) {
                std::int64_t r = (static_cast<std::int64_t>(idx[n]) * k[j]) % M;
                if (r < 0) {
                    r += M;
                }
                theta[j] += static_cast<double>(r) / static_cast<double>(M);
            }
        }
        for (auto &t : theta) {
            t *= kTwoPi;
        }
        return f(rotate(z0, theta));
    };
    return backend == Backend::serial ? kernels::serial::torus_mean(counts, at)
                                      : kernels::parallel::torus_mean(counts, at);
}

constexpr std::size_t kCharacterPoints = 256;
constexpr double kCharacterTol = 1e-13;
constexpr double kTotalPointCap = 16'777'216.0;

} // namespace

Complex orbit_average(const HarmonicDecomposition &decomp, const Symbol &a,
                      const PhasePoint &z0, Backend backend) {
    check_point(decomp, z0);
    if (a.dim() != decomp.d()) {
        throw DomainError("symbol dimension does not match the oscillator");
    }
    const std::size_t d = decomp.d();
    const std::size_t r = decomp.d_omega();
    Complex total = 0.0;
    if (!a.terms().empty()) {
        Symbol poly(d);
        for (const auto &[e, c] : a.terms()) {
            poly += Symbol::monomial(e, c);
        }
        const auto counts = polynomial_grid(decomp, poly.degree());
        total += grid_mean(decomp, z0, counts, backend,
                           [&](const PhasePoint &z) { return poly.evaluate(z); });
    }
    if (!a.characters().empty()) {
        Symbol chars(d);
        for (const auto &ch : a.characters()) {
            chars += Symbol::character(ch.w, ch.weight);
        }
        auto mean_with = [&](std::size_t m) {
            const std::vector<std::size_t> counts(r, m);
            return grid_mean(decomp, z0, counts, backend,
                             [&](const PhasePoint &z) { return chars.evaluate(z); });
        };
        std::size_t m = kCharacterPoints;
        Complex coarse = mean_with(m / 2);
        Complex fine = mean_with(m);
        while (std::abs(fine - coarse) > kCharacterTol &&
               std::pow(static_cast<double>(2 * m), static_cast<double>(r)) <= kTotalPointCap) {
            m *= 2;
            coarse = fine;
            fine = mean_with(m);
        }
        total += fine;
    }
    return total;
}

EnergyVector sigma_membership(const HarmonicDecomposition &decomp,
                              std::span<const double> E) {
    const auto w = freqarith::feasible_actions(decomp, E);
    EnergyVector out;
    out.E.assign(E.begin(), E.end());
    out.h = w.h;
    out.witness = PhasePoint::from_actions(w.h);
    out.numerical = w.numerical;
    return out;
}

namespace {

/// conj(<k|z>) for k = 0..kmax on one mode.
std::vector<Complex> coherent_row(double x, double xi, double hbar, std::int64_t kmax) {
    const Complex alpha = Complex(x, xi) / std::sqrt(2.0 * hbar);
    const double mu = std::norm(alpha);
    std::vector<Complex> row(static_cast<std::size_t>(kmax + 1), 0.0);
    if (mu == 0.0) {
        row[0] = 1.0;
        return row;
    }
    const double log_abs = 0.5 * std::log(mu);
    const double phase = -std::arg(alpha);
    double log_mag = -0.5 * mu;
    for (std::int64_t k = 0; k <= kmax; ++k) {
        if (k > 0) {
            log_mag += log_abs - 0.5 * std::log(static_cast<double>(k));
        }
        row[static_cast<std::size_t>(k)] =
            std::polar(std::exp(log_mag), phase * static_cast<double>(k));
    }
    return row;
}

double phase_volume(double hbar, std::size_t dims) {
    return std::pow(kTwoPi * hbar, static_cast<double>(dims));
}

} // namespace

double husimi(const FockState &state, const PhasePoint &z) {
    if (z.dim() != state.dim()) {
        throw DomainError("phase point dimension does not match the state");
    }
    const auto cut = state.cutoff();
    std::vector<std::vector<Complex>> rows;
    for (std::size_t j = 0; j < state.dim(); ++j) {
        rows.push_back(coherent_row(z.x[j], z.xi[j], state.hbar(), cut[j]));
    }
    Complex overlap = 0.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const auto k = state.index(i);
        Complex c = state.coeffs()[i];
        for (std::size_t j = 0; j < k.size(); ++j) {
            c *= rows[j][static_cast<std::size_t>(k[j])];
        }
        overlap += c;
    }
    return std::norm(overlap) / phase_volume(state.hbar(), state.dim());
}

double HusimiGrid::integral() const {
    if (x.size() < 2 || xi.size() < 2) {
        return 0.0;
    }
    const double dx = x[1] - x[0];
    const double dxi = xi[1] - xi[0];
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum * dx * dxi;
}

HusimiGrid husimi_grid(const FockState &state, std::size_t mode,
                       const PhasePoint &fixed, double half_width, std::size_t n,
                       Backend backend) {
    if (mode >= state.dim()) {
        throw DomainError("mode index " + std::to_string(mode + 1) + " out of range");
    }
    if (fixed.dim() != state.dim()) {
        throw DomainError("fixed point dimension does not match the state");
    }
    if (n < 2 || !(half_width > 0.0)) {
        throw DomainError("grid needs n >= 2 and a positive half-width");
    }
    HusimiGrid g;
    g.mode = mode;
    const double step = 2.0 * half_width / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        g.x.push_back(-half_width + step * static_cast<double>(i));
    }
    g.xi = g.x;
    auto value = [&](std::size_t p) {
        PhasePoint z = fixed;
        z.x[mode] = g.x[p / n];
        z.xi[mode] = g.xi[p % n];
        return husimi(state, z);
    };
    g.values = backend == Backend::serial ? kernels::serial::grid_map(n * n, value)
                                          : kernels::parallel::grid_map(n * n, value);
    return g;
}

double husimi_slice_mass(const FockState &state, std::size_t mode,
                         const PhasePoint &fixed) {
    if (mode >= state.dim()) {
        throw DomainError("mode index out of range");
    }
    const auto cut = state.cutoff();
    std::vector<std::vector<Complex>> rows;
    for (std::size_t j = 0; j < state.dim(); ++j) {
        rows.push_back(coherent_row(fixed.x[j], fixed.xi[j], state.hbar(), cut[j]));
    }
    std::map<std::int64_t, Complex> partial;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const auto k = state.index(i);
        Complex c = state.coeffs()[i];
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (j != mode) {
                c *= rows[j][static_cast<std::size_t>(k[j])];
            }
        }
        partial[k[mode]] += c;
    }
    double sum = 0.0;
    for (const auto &[k, c] : partial) {
        sum += std::norm(c);
    }
    return sum / phase_volume(state.hbar(), state.dim() - 1);
}

double husimi_extent(const FockState &state, std::size_t mode) {
    if (mode >= state.dim()) {
        throw DomainError("mode index out of range");
    }
    const auto cut = state.cutoff();
    const double h = state.hbar();
    return std::sqrt(2.0 * h * static_cast<double>(cut[mode] + 1)) + 8.0 * std::sqrt(h);
}

std::vector<Complex> torus_signature(const HarmonicDecomposition &decomp,
                                     const PhasePoint &z) {
    check_point(decomp, z);
    const std::size_t d = decomp.d();
    std::vector<Complex> zc(d);
    for (std::size_t j = 0; j < d; ++j) {
        zc[j] = Complex(z.x[j], z.xi[j]);
    }
    std::vector<Complex> out;
    std::vector<int> p(d, 0);
    std::vector<int> q(d, 0);
    // exponents over 2d slots with total degree in [1, 4]
    auto recurse = [&](auto &&self, std::size_t slot, int left) -> void {
        if (slot == 2 * d) {
            bool zero = true;
            for (std::size_t j = 0; j < d; ++j) {
                zero = zero && p[j] == 0 && q[j] == 0;
            }
            if (zero) {
                return;
            }
            for (const auto &c : decomp.components()) {
                std::int64_t s = 0;
                for (std::size_t j = 0; j < d; ++j) {
                    s += c.k[j] * (p[j] - q[j]);
                }
                if (s != 0) {
                    return;
                }
            }
            Complex v = 1.0;
            for (std::size_t j = 0; j < d; ++j) {
                for (int e = 0; e < p[j]; ++e) {
                    v *= zc[j];
                }
                for (int e = 0; e < q[j]; ++e) {
                    v *= std::conj(zc[j]);
                }
            }
            out.push_back(v);
            return;
        }
        auto &slot_ref = slot < d ? p[slot] : q[slot - d];
        for (int e = 0; e <= left; ++e) {
            slot_ref = e;
            self(self, slot + 1, left - e);
        }
        slot_ref = 0;
    };
    recurse(recurse, 0, 4);
    return out;
}

bool same_torus(const HarmonicDecomposition &decomp, const PhasePoint &a,
                const PhasePoint &b, double tol) {
    const auto sa = torus_signature(decomp, a);
    const auto sb = torus_signature(decomp, b);
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (std::abs(sa[i] - sb[i]) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace scarkit::phasespace
