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

#include "scarkit/fockstate.hpp"

#include "scarkit/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace scarkit::fockstate {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

bool same_hbar(double a, double b) {
    return std::abs(a - b) <= 1e-15 * std::max(std::abs(a), std::abs(b));
}

void check_compatible(const FockState &a, const FockState &b) {
    if (a.dim() != b.dim()) {
        throw PreconditionError("states live in different dimensions");
    }
    if (!same_hbar(a.hbar(), b.hbar())) {
        throw PreconditionError("states carry different hbar");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// FockState

FockState::FockState(double hbar, std::size_t d) : hbar_(hbar), dim_(d) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw DomainError("hbar must be positive and finite");
    }
    if (d == 0) {
        throw DomainError("state dimension must be positive");
    }
}

FockState::FockState(double hbar, std::size_t d, std::vector<FockIndex> indices,
                     std::vector<Complex> coeffs, double tail_bound)
    : FockState(hbar, d) {
    if (indices.size() != coeffs.size()) {
        throw DomainError("index and coefficient counts differ");
    }
    tail_bound_ = tail_bound;
    std::vector<std::size_t> order(indices.size());
    std::iota(order.begin(), order.end(), 0);
    for (const auto &k : indices) {
        if (k.size() != d) {
            throw DomainError("Fock index length mismatch");
        }
        for (auto v : k) {
            if (v < 0) {
                throw DomainError("Fock index entries must be nonnegative");
            }
        }
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return indices[a] < indices[b];
    });
    for (std::size_t p = 0; p < order.size(); ++p) {
        const auto &k = indices[order[p]];
        if (!coeffs_.empty() && std::equal(k.begin(), k.end(), indices_.end() - static_cast<std::ptrdiff_t>(d))) {
            coeffs_.back() += coeffs[order[p]];
            continue;
        }
        indices_.insert(indices_.end(), k.begin(), k.end());
        coeffs_.push_back(coeffs[order[p]]);
    }
}

FockState FockState::basis(double hbar, FockIndex k) {
    const std::size_t d = k.size();
    return FockState(hbar, d, {std::move(k)}, {Complex(1.0)});
}

FockState FockState::from_tensor(double hbar, const kernels::Tensor &t,
                                 double tail_bound) {
    const std::size_t d = t.box.rank();
    FockState s(hbar, d);
    s.tail_bound_ = tail_bound;
    s.coeffs_ = t.data;
    s.indices_.resize(t.data.size() * d);
    for (std::size_t p = 0; p < t.data.size(); ++p) {
        std::size_t rest = p;
        for (std::size_t j = d; j-- > 0;) {
            s.indices_[p * d + j] =
                t.box.lo[j] + static_cast<std::int64_t>(rest % t.box.extent(j));
            rest /= t.box.extent(j);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (t.box.lo[j] < 0) {
            throw DomainError("tensor box reaches negative occupation numbers");
        }
    }
    return s;
}

std::vector<std::int64_t> FockState::cutoff() const {
    std::vector<std::int64_t> out(dim_, 0);
    for (std::size_t i = 0; i < size(); ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out[j] = std::max(out[j], indices_[i * dim_ + j]);
        }
    }
    return out;
}

Complex FockState::coefficient(std::span<const std::int64_t> k) const {
    if (k.size() != dim_) {
        throw DomainError("Fock index length mismatch");
    }
    std::size_t lo = 0;
    std::size_t hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const auto m = index(mid);
        if (std::lexicographical_compare(m.begin(), m.end(), k.begin(), k.end())) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo < size() && std::equal(k.begin(), k.end(), index(lo).begin())) {
        return coeffs_[lo];
    }
    return 0.0;
}

double FockState::norm() const {
    double sum = 0.0;
    for (const auto &c : coeffs_) {
        sum += std::norm(c);
    }
    return std::sqrt(sum);
}

FockState FockState::scaled(Complex c) const {
    FockState out = *this;
    for (auto &v : out.coeffs_) {
        v *= c;
    }
    return out;
}

FockState FockState::normalized() const {
    const double n = norm();
    if (!(n > 0.0)) {
        throw DomainError("cannot normalize the zero state");
    }
    return scaled(1.0 / n);
}

kernels::Box FockState::bounding_box() const {
    kernels::Box box{std::vector<std::int64_t>(dim_, 0),
                     std::vector<std::int64_t>(dim_, -1)};
    if (empty()) {
        return box;
    }
    for (std::size_t j = 0; j < dim_; ++j) {
        box.lo[j] = indices_[j];
        box.hi[j] = indices_[j];
    }
    for (std::size_t i = 1; i < size(); ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            box.lo[j] = std::min(box.lo[j], indices_[i * dim_ + j]);
            box.hi[j] = std::max(box.hi[j], indices_[i * dim_ + j]);
        }
    }
    return box;
}

kernels::Tensor FockState::to_tensor(const kernels::Box &box) const {
    kernels::Tensor t(box);
    for (std::size_t i = 0; i < size(); ++i) {
        const auto k = index(i);
        for (std::size_t j = 0; j < dim_; ++j) {
            if (k[j] < box.lo[j] || k[j] > box.hi[j]) {
                throw DomainError("state entry outside the tensor box");
            }
        }
        t.data[t.offset(k)] += coeffs_[i];
    }
    return t;
}

namespace {

FockState combine(const FockState &a, const FockState &b, Complex sign) {
    check_compatible(a, b);
    std::vector<FockIndex> idx;
    std::vector<Complex> c;
    idx.reserve(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        idx.emplace_back(a.index(i).begin(), a.index(i).end());
        c.push_back(a.coeffs()[i]);
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        idx.emplace_back(b.index(i).begin(), b.index(i).end());
        c.push_back(sign * b.coeffs()[i]);
    }
    return FockState(a.hbar(), a.dim(), std::move(idx), std::move(c),
                     a.tail_bound() + b.tail_bound());
}

} // namespace

FockState operator+(const FockState &a, const FockState &b) {
    return combine(a, b, 1.0);
}

FockState operator-(const FockState &a, const FockState &b) {
    return combine(a, b, -1.0);
}

Complex inner(const FockState &a, const FockState &b) {
    check_compatible(a, b);
    Complex sum = 0.0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const auto ka = a.index(i);
        const auto kb = b.index(j);
        if (std::equal(ka.begin(), ka.end(), kb.begin())) {
            sum += std::conj(a.coeffs()[i]) * b.coeffs()[j];
            ++i;
            ++j;
        } else if (std::lexicographical_compare(ka.begin(), ka.end(), kb.begin(),
                                                kb.end())) {
            ++i;
        } else {
            ++j;
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Coherent states

std::vector<Complex> coherent_amplitudes(const PhasePoint &z0, double hbar) {
    if (!(hbar > 0.0)) {
        throw DomainError("hbar must be positive");
    }
    std::vector<Complex> alpha(z0.dim());
    const double scale = 1.0 / std::sqrt(2.0 * hbar);
    for (std::size_t j = 0; j < z0.dim(); ++j) {
        if (!std::isfinite(z0.x[j]) || !std::isfinite(z0.xi[j])) {
            throw DomainError("phase point has non-finite entries");
        }
        alpha[j] = Complex(z0.x[j], z0.xi[j]) * scale;
    }
    return alpha;
}

namespace {

constexpr std::size_t kModeBudget = 1'000'000;
constexpr std::size_t kVolumeBudget = 50'000'000;

struct ModeFactor {
    std::vector<Complex> coeffs;
    double tail = 0.0;
};

ModeFactor coherent_mode(Complex alpha, double tol) {
    const double mu = std::norm(alpha);
    if (mu == 0.0) {
        return {{Complex(1.0)}, 0.0};
    }
    const double span = mu + 40.0 * std::sqrt(mu) + 60.0;
    if (span > static_cast<double>(kModeBudget)) {
        throw ResourceError("|alpha|^2 = " + std::to_string(mu) +
                            " needs more Fock levels than the budget allows");
    }
    const auto kmax = static_cast<std::size_t>(span);
    // log Poisson weights by the running recurrence lp_k = lp_{k-1} + log(mu/k)
    std::vector<double> lp(kmax + 1);
    lp[0] = -mu;
    const double log_mu = std::log(mu);
    for (std::size_t k = 1; k <= kmax; ++k) {
        lp[k] = lp[k - 1] + log_mu - std::log(static_cast<double>(k));
    }
    std::vector<double> tail(kmax + 1, 0.0); // tail[K] = sum_{k > K} p_k
    for (std::size_t k = kmax; k-- > 0;) {
        tail[k] = tail[k + 1] + std::exp(lp[k + 1]);
    }
    std::size_t cut = kmax;
    for (std::size_t k = 0; k <= kmax; ++k) {
        if (tail[k] < tol) {
            cut = k;
            break;
        }
    }
    ModeFactor f;
    f.tail = tail[cut];
    const double phase = std::arg(alpha);
    f.coeffs.resize(cut + 1);
    for (std::size_t k = 0; k <= cut; ++k) {
        f.coeffs[k] = std::polar(std::exp(0.5 * lp[k]), phase * static_cast<double>(k));
    }
    return f;
}

} // namespace

FockState coherent(const PhasePoint &z0, double hbar, double tail_tol,
                   Backend backend) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0)) {
        throw DomainError("tail_tol must lie in (0, 1)");
    }
    const auto alpha = coherent_amplitudes(z0, hbar);
    const std::size_t d = alpha.size();
    std::vector<std::vector<Complex>> factors;
    kernels::Box box{std::vector<std::int64_t>(d, 0), std::vector<std::int64_t>(d, 0)};
    double tail = 0.0;
    double volume = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
        ModeFactor f = coherent_mode(alpha[j], tail_tol / static_cast<double>(d));
        box.hi[j] = static_cast<std::int64_t>(f.coeffs.size()) - 1;
        volume *= static_cast<double>(f.coeffs.size());
        tail += f.tail;
        factors.push_back(std::move(f.coeffs));
    }
    if (volume > static_cast<double>(kVolumeBudget)) {
        throw ResourceError("coherent state needs " + std::to_string(volume) +
                            " coefficients, above the budget");
    }
    const kernels::Tensor t = backend == Backend::serial
                                  ? kernels::serial::outer(box, factors)
                                  : kernels::parallel::outer(box, factors);
    return FockState::from_tensor(hbar, t, tail);
}

// ---------------------------------------------------------------------------
// Time average as a spectral projection
//
// Evolving by the components for times tau multiplies the coefficient of
// |k> by exp(-i tau . (lambda(k) - Lambda) / hbar); the phase of component
// n is 2 pi (tau_n / T_n)(L_n(k) - L_n*), an integer multiple of 2 pi at
// tau_n = T_n. Averaging over R_omega therefore keeps exactly the k with
// L_n(k) = L_n* for every n.

FockState average_project(const HarmonicDecomposition &decomp,
                          const FockState &state, const TargetEigenvalue &target) {
    if (!same_hbar(state.hbar(), target.hbar)) {
        throw PreconditionError("state and target carry different hbar");
    }
    if (state.dim() != decomp.d()) {
        throw PreconditionError("state dimension does not match the oscillator");
    }
    FockState out = state.filtered([&](std::span<const std::int64_t> k) {
        return spectral::in_target(decomp, target, k);
    });
    if (out.norm() > 0.0) {
        return out;
    }
    // nearest joint levels carried by the state
    std::map<std::vector<std::int64_t>, double> nearest;
    for (std::size_t i = 0; i < state.size(); ++i) {
        auto key = spectral::ladder_key(decomp, state.index(i));
        double dist = 0.0;
        for (std::size_t n = 0; n < key.size(); ++n) {
            dist += std::abs(static_cast<double>(key[n] - target.ladder[n]));
        }
        nearest.emplace(std::move(key), dist);
    }
    std::vector<std::pair<double, std::vector<std::int64_t>>> ranked;
    for (auto &[key, dist] : nearest) {
        ranked.emplace_back(dist, key);
    }
    std::sort(ranked.begin(), ranked.end());
    std::ostringstream msg;
    msg << "projection onto the target eigenspace is empty; target lambda = (";
    for (std::size_t n = 0; n < target.lambda.size(); ++n) {
        msg << (n ? ", " : "") << target.lambda[n];
    }
    msg << "); nearest eigenvalues present:";
    for (std::size_t r = 0; r < std::min<std::size_t>(3, ranked.size()); ++r) {
        msg << " (";
        for (std::size_t n = 0; n < ranked[r].second.size(); ++n) {
            const auto &c = decomp.component(n);
            msg << (n ? ", " : "")
                << state.hbar() * (c.ladder_step * static_cast<double>(ranked[r].second[n]) +
                                   0.5 * c.nu_trace);
        }
        msg << ")";
    }
    throw EmptyProjectionError(msg.str());
}

// ---------------------------------------------------------------------------
// Gram matrix and normalization

GramInfo gram(const PhasePoint &z0, const HarmonicDecomposition &decomp) {
    if (z0.dim() != decomp.d()) {
        throw DomainError("phase point dimension does not match the oscillator");
    }
    GramInfo g;
    const std::size_t d = decomp.d();
    for (std::size_t j = 0; j < d; ++j) {
        if (!z0.mode_at_rest(j)) {
            g.active.push_back(j);
        }
    }
    if (g.active.empty()) {
        g.matrix = Eigen::MatrixXd(0, 0);
        return g;
    }
    std::vector<RationalVector> projected;
    for (std::size_t n = 0; n < decomp.d_omega(); ++n) {
        RationalVector p(d, Rational(0));
        for (auto j : g.active) {
            p[j] = decomp.component(n).nu[j];
        }
        projected.push_back(std::move(p));
    }
    RationalSpan span(d);
    for (std::size_t n = 0; n < projected.size(); ++n) {
        if (span.insert(projected[n])) {
            g.basis.push_back(n);
        }
    }
    g.rank_d0 = g.basis.size();
    std::vector<HighPrecision> v_red;
    for (auto l : g.basis) {
        v_red.push_back(decomp.component(l).v_exact);
    }
    for (std::size_t n = 0; n < projected.size(); ++n) {
        if (std::find(g.basis.begin(), g.basis.end(), n) != g.basis.end()) {
            continue;
        }
        const auto b = span.coordinates(projected[n]);
        if (!b) {
            throw ConsistencyError("projected frequency outside its span");
        }
        for (std::size_t l = 0; l < g.basis.size(); ++l) {
            if ((*b)[l] != 0) {
                v_red[l] += to_high_precision((*b)[l]) * decomp.component(n).v_exact;
            }
        }
    }
    const HighPrecision two_pi = 2 * boost::math::constants::pi<HighPrecision>();
    const std::size_t r = g.rank_d0;
    g.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r),
                                     static_cast<Eigen::Index>(r));
    for (std::size_t l = 0; l < r; ++l) {
        const auto lv = freqarith::ladder_vector(projected[g.basis[l]]);
        g.v_reduced.push_back(v_red[l].convert_to<double>());
        const HighPrecision T =
            two_pi * lv.K / (abs(v_red[l]) * to_high_precision(lv.nu_min));
        g.periods.push_back(T.convert_to<double>());
        g.torus_volume *= g.periods.back();
    }
    for (std::size_t l = 0; l < r; ++l) {
        for (std::size_t m = 0; m < r; ++m) {
            double sum = 0.0;
            for (auto j : g.active) {
                const double a = g.v_reduced[l] * to_double(projected[g.basis[l]][j]);
                const double b = g.v_reduced[m] * to_double(projected[g.basis[m]][j]);
                sum += a * b * 2.0 * z0.mode_energy(j);
            }
            g.matrix(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) = sum;
        }
    }
    g.det = g.matrix.determinant();
    return g;
}

ScarState normalize_scar(const HarmonicDecomposition &decomp, const PhasePoint &z0,
                         std::span<const double> E, double hbar, double tail_tol) {
    if (z0.dim() != decomp.d()) {
        throw DomainError("phase point dimension does not match the oscillator");
    }
    TargetEigenvalue target = spectral::select_target(decomp, E, hbar);
    const GramInfo g = gram(z0, decomp);
    if (g.rank_d0 == 0) {
        // z0 = 0: the coherent state is the ground state and c is 1 by convention
        FockState ground = FockState::basis(hbar, FockIndex(decomp.d(), 0));
        if (!spectral::in_target(decomp, target, ground.index(0))) {
            throw EmptyProjectionError(
                "z0 = 0 only reaches the ground level, which is not the target");
        }
        return ScarState{std::move(ground), std::move(target), z0, 1.0, 0, 1.0, 1.0};
    }
    const FockState psi = coherent(z0, hbar, tail_tol);
    const FockState projected = average_project(decomp, psi, target);
    const double n = projected.norm();
    const double mass = n * n;
    // (4 pi hbar)^{d0/2}: with (pi hbar)^{d0/2} the ratio tends to 2^{d0}
    const double c = g.torus_volume * std::sqrt(g.det) * mass /
                     std::pow(4.0 * kPi * hbar, 0.5 * static_cast<double>(g.rank_d0));
    return ScarState{projected.scaled(1.0 / n), std::move(target), z0, c, g.rank_d0,
                     g.det, mass};
}

// ---------------------------------------------------------------------------
// Weyl quantization
//
// With s = sqrt(hbar/2), x = s(alpha + conj alpha), xi = i s(conj alpha - alpha)
// and the Weyl-ordered {a^+^m a^n} equals
//   sum_k k!/2^k C(m,k) C(n,k) a^+^{m-k} a^{n-k}.

namespace {

struct NormalTerm {
    int creators;
    int annihilators;
    Complex coeff;
};

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return r;
}

std::vector<NormalTerm> normal_terms(int x_power, int xi_power, double hbar) {
    const double s = std::sqrt(0.5 * hbar);
    // coefficients of conj(alpha)^m alpha^n
    std::map<std::pair<int, int>, Complex> poly;
    Complex scale = std::pow(s, x_power + xi_power);
    for (int q = 0; q < xi_power; ++q) {
        scale *= Complex(0.0, 1.0);
    }
    for (int p = 0; p <= x_power; ++p) {
        for (int q = 0; q <= xi_power; ++q) {
            // alpha^p conj^{x-p} from x, conj^q (-alpha)^{xi-q} from xi
            const double sign = ((xi_power - q) % 2 == 0) ? 1.0 : -1.0;
            const int m = (x_power - p) + q;
            const int n = p + (xi_power - q);
            poly[{m, n}] += scale * sign * binomial(x_power, p) * binomial(xi_power, q);
        }
    }
    std::map<std::pair<int, int>, Complex> normal;
    for (const auto &[mn, c] : poly) {
        const auto [m, n] = mn;
        double kfact = 1.0;
        double half = 1.0;
        for (int k = 0; k <= std::min(m, n); ++k) {
            if (k > 0) {
                kfact *= k;
                half *= 0.5;
            }
            normal[{m - k, n - k}] += c * kfact * half * binomial(m, k) * binomial(n, k);
        }
    }
    std::vector<NormalTerm> out;
    for (const auto &[rs, c] : normal) {
        if (c != Complex(0.0)) {
            out.push_back({rs.first, rs.second, c});
        }
    }
    return out;
}

/// <n - s + r | a^+^r a^s | n>
double ladder_element(std::int64_t n, int r, int s) {
    double v = 1.0;
    for (int i = 0; i < s; ++i) {
        v *= std::sqrt(static_cast<double>(n - i));
    }
    for (int i = 1; i <= r; ++i) {
        v *= std::sqrt(static_cast<double>(n - s + i));
    }
    return v;
}

} // namespace

kernels::ModeMatrix weyl_mode_matrix(int x_power, int xi_power, double hbar,
                                     std::int64_t row_lo, std::size_t rows,
                                     std::int64_t col_lo, std::size_t cols) {
    kernels::ModeMatrix m(row_lo, rows, col_lo, cols);
    const auto terms = normal_terms(x_power, xi_power, hbar);
    const std::int64_t row_hi = row_lo + static_cast<std::int64_t>(rows) - 1;
    for (std::size_t c = 0; c < cols; ++c) {
        const std::int64_t n = col_lo + static_cast<std::int64_t>(c);
        for (const auto &t : terms) {
            if (n < t.annihilators) {
                continue;
            }
            const std::int64_t target = n - t.annihilators + t.creators;
            if (target < row_lo || target > row_hi) {
                continue;
            }
            m.at(static_cast<std::size_t>(target - row_lo), c) +=
                t.coeff * ladder_element(n, t.creators, t.annihilators);
        }
    }
    return m;
}

kernels::ModeMatrix displacement_matrix(Complex beta, std::int64_t row_lo,
                                        std::size_t rows, std::int64_t col_lo,
                                        std::size_t cols) {
    kernels::ModeMatrix m(row_lo, rows, col_lo, cols);
    const std::int64_t row_hi = row_lo + static_cast<std::int64_t>(rows) - 1;
    const std::int64_t col_hi = col_lo + static_cast<std::int64_t>(cols) - 1;
    const long double x = std::norm(std::complex<long double>(beta));
    if (x == 0.0L) {
        for (std::int64_t k = std::max(row_lo, col_lo); k <= std::min(row_hi, col_hi); ++k) {
            m.at(static_cast<std::size_t>(k - row_lo), static_cast<std::size_t>(k - col_lo)) = 1.0;
        }
        return m;
    }
    const long double log_abs = 0.5L * std::log(x);
    const double arg = std::arg(beta);
    // For m >= n: sqrt(n!/m!) beta^{m-n} e^{-x/2} L_n^{(m-n)}(x); for m < n
    // the same with the roles swapped and beta -> -conj(beta).
    for (std::int64_t delta = row_lo - col_hi; delta <= row_hi - col_lo; ++delta) {
        const std::int64_t gap = delta >= 0 ? delta : -delta;
        // the lower index runs over [lo_min, lo_max]
        std::int64_t lo_min;
        std::int64_t lo_max;
        if (delta >= 0) {
            lo_min = std::max(col_lo, row_lo - delta);
            lo_max = std::min(col_hi, row_hi - delta);
        } else {
            lo_min = std::max(row_lo, col_lo + delta);
            lo_max = std::min(row_hi, col_hi + delta);
        }
        if (lo_min > lo_max) {
            continue;
        }
        const double phase = delta >= 0 ? static_cast<double>(gap) * arg
                                        : static_cast<double>(gap) * (kPi - arg);
        const Complex unit = std::polar(1.0, phase);
        const long double a = static_cast<long double>(gap);
        long double prev = 0.0L;
        long double cur = 1.0L; // L_0
        for (std::int64_t k = 0; k <= lo_max; ++k) {
            if (k == 1) {
                prev = cur;
                cur = 1.0L + a - x;
            } else if (k > 1) {
                const long double kk = static_cast<long double>(k - 1);
                const long double next =
                    ((2.0L * kk + 1.0L + a - x) * cur - (kk + a) * prev) / (kk + 1.0L);
                prev = cur;
                cur = next;
            }
            if (k < lo_min) {
                continue;
            }
            const long double kd = static_cast<long double>(k);
            const long double log_pref = 0.5L * (std::lgamma(kd + 1.0L) - std::lgamma(kd + a + 1.0L)) +
                                         a * log_abs - 0.5L * x;
            const double value = static_cast<double>(std::exp(log_pref) * cur);
            const std::int64_t mi = delta >= 0 ? k + delta : k;
            const std::int64_t ni = delta >= 0 ? k : k - delta;
            m.at(static_cast<std::size_t>(mi - row_lo), static_cast<std::size_t>(ni - col_lo)) =
                value * unit;
        }
    }
    return m;
}

namespace {

kernels::Tensor apply_mode(Backend b, const kernels::Tensor &t, std::size_t mode,
                           const kernels::ModeMatrix &m) {
    return b == Backend::serial ? kernels::serial::apply_mode(t, mode, m)
                                : kernels::parallel::apply_mode(t, mode, m);
}

Complex dot(Backend b, const kernels::Tensor &bra, const kernels::Tensor &ket) {
    return b == Backend::serial ? kernels::serial::dot(bra, ket)
                                : kernels::parallel::dot(bra, ket);
}

} // namespace

Complex expectation(const FockState &bra, const FockState &ket, const Symbol &a,
                    Backend backend) {
    check_compatible(bra, ket);
    if (a.dim() != ket.dim()) {
        throw DomainError("symbol dimension does not match the states");
    }
    if (bra.empty() || ket.empty()) {
        return 0.0;
    }
    const std::size_t d = ket.dim();
    const double hbar = ket.hbar();
    const kernels::Box kb = ket.bounding_box();
    const kernels::Box bb = bra.bounding_box();
    const kernels::Tensor kt = ket.to_tensor(kb);
    const kernels::Tensor bt = bra.to_tensor(bb);

    auto sandwich = [&](auto &&mode_matrix, auto &&is_identity) {
        kernels::Tensor cur = kt;
        for (std::size_t j = 0; j < d; ++j) {
            if (is_identity(j) && kb.lo[j] == bb.lo[j] && kb.hi[j] == bb.hi[j]) {
                continue;
            }
            cur = apply_mode(backend, cur, j,
                             mode_matrix(j, bb.lo[j], bb.extent(j), kb.lo[j], kb.extent(j)));
        }
        return dot(backend, bt, cur);
    };

    Complex sum = 0.0;
    for (const auto &[e, coeff] : a.terms()) {
        sum += coeff * sandwich(
                           [&](std::size_t j, std::int64_t rl, std::size_t rn,
                               std::int64_t cl, std::size_t cn) {
                               return weyl_mode_matrix(e[j], e[d + j], hbar, rl, rn, cl, cn);
                           },
                           [&](std::size_t j) { return e[j] == 0 && e[d + j] == 0; });
    }
    const double s = std::sqrt(0.5 * hbar);
    for (const auto &ch : a.characters()) {
        sum += ch.weight *
               sandwich(
                   [&](std::size_t j, std::int64_t rl, std::size_t rn, std::int64_t cl,
                       std::size_t cn) {
                       const Complex beta = -s * Complex(ch.w[j], ch.w[d + j]);
                       return displacement_matrix(beta, rl, rn, cl, cn);
                   },
                   [&](std::size_t j) { return ch.w[j] == 0.0 && ch.w[d + j] == 0.0; });
    }
    return sum;
}

FockState apply(const Symbol &a, const FockState &psi) {
    if (!a.is_polynomial()) {
        throw DomainError("apply supports polynomial symbols only");
    }
    if (a.dim() != psi.dim()) {
        throw DomainError("symbol dimension does not match the state");
    }
    const std::size_t d = psi.dim();
    std::map<FockIndex, Complex> acc;
    for (const auto &[e, coeff] : a.terms()) {
        std::vector<std::vector<NormalTerm>> per_mode(d);
        for (std::size_t j = 0; j < d; ++j) {
            per_mode[j] = normal_terms(e[j], e[d + j], psi.hbar());
        }
        for (std::size_t i = 0; i < psi.size(); ++i) {
            const auto k = psi.index(i);
            FockIndex out(k.begin(), k.end());
            auto expand = [&](auto &&self, std::size_t j, Complex c) -> void {
                if (j == d) {
                    acc[out] += c;
                    return;
                }
                for (const auto &t : per_mode[j]) {
                    if (k[j] < t.annihilators) {
                        continue;
                    }
                    out[j] = k[j] - t.annihilators + t.creators;
                    self(self, j + 1,
                         c * t.coeff * ladder_element(k[j], t.creators, t.annihilators));
                }
                out[j] = k[j];
            };
            expand(expand, 0, coeff * psi.coeffs()[i]);
        }
    }
    std::vector<FockIndex> idx;
    std::vector<Complex> c;
    for (auto &[k, v] : acc) {
        idx.push_back(k);
        c.push_back(v);
    }
    return FockState(psi.hbar(), d, std::move(idx), std::move(c), psi.tail_bound());
}

double eigen_residual(const HarmonicDecomposition &decomp, const FockState &psi,
                      std::size_t n, double lambda) {
    const Symbol h = Symbol::quadratic(decomp.component(n).speeds);
    return (apply(h, psi) - psi.scaled(lambda)).norm();
}

// ---------------------------------------------------------------------------
// CSV

void write_state_csv(std::ostream &out, const FockState &state,
                     const std::vector<std::string> &comments) {
    char buf[64];
    for (const auto &c : comments) {
        out << "# " << c << '\n';
    }
    std::snprintf(buf, sizeof buf, "%.17g", state.hbar());
    out << "# hbar = " << buf << '\n';
    for (std::size_t j = 0; j < state.dim(); ++j) {
        out << 'k' << (j + 1) << ',';
    }
    out << "re,im\n";
    for (std::size_t i = 0; i < state.size(); ++i) {
        for (auto v : state.index(i)) {
            out << v << ',';
        }
        std::snprintf(buf, sizeof buf, "%.17g", state.coeffs()[i].real());
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.17g", state.coeffs()[i].imag());
        out << buf << '\n';
    }
}

FockState read_state_csv(std::istream &in) {
    std::string line;
    std::size_t line_no = 0;
    double hbar = 0.0;
    std::size_t d = 0;
    bool header = false;
    std::vector<FockIndex> idx;
    std::vector<Complex> coeffs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            const auto pos = line.find("hbar =");
            if (pos != std::string::npos) {
                try {
                    hbar = std::stod(line.substr(pos + 6));
                } catch (const std::exception &) {
                    throw ParseError("malformed hbar comment", line_no, pos + 1);
                }
            }
            continue;
        }
        std::vector<std::string> fields;
        std::vector<std::size_t> cols;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            fields.push_back(line.substr(start, comma - start));
            cols.push_back(start + 1);
            if (comma == std::string::npos) {
                break;
            }
            start = comma + 1;
        }
        if (!header) {
            if (fields.size() < 3 || fields[fields.size() - 2] != "re" ||
                fields.back() != "im") {
                throw ParseError("expected header k1,...,kd,re,im", line_no, 1);
            }
            d = fields.size() - 2;
            header = true;
            continue;
        }
        if (fields.size() != d + 2) {
            throw ParseError("expected " + std::to_string(d + 2) + " fields", line_no, 1);
        }
        FockIndex k(d);
        for (std::size_t j = 0; j < d; ++j) {
            std::size_t used = 0;
            try {
                k[j] = std::stoll(fields[j], &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != fields[j].size() || fields[j].empty() || k[j] < 0) {
                throw ParseError("malformed occupation number", line_no, cols[j]);
            }
        }
        double parts[2];
        for (std::size_t p = 0; p < 2; ++p) {
            std::size_t used = 0;
            const auto &f = fields[d + p];
            try {
                parts[p] = std::stod(f, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != f.size() || f.empty()) {
                throw ParseError("malformed coefficient", line_no, cols[d + p]);
            }
        }
        idx.push_back(std::move(k));
        coeffs.emplace_back(parts[0], parts[1]);
    }
    if (!header || idx.empty()) {
        throw ParseError("state file has no coefficients", std::max<std::size_t>(line_no, 1), 1);
    }
    if (!(hbar > 0.0)) {
        throw ParseError("state file lacks a positive '# hbar = ...' line", 1, 1);
    }
    return FockState(hbar, d, std::move(idx), std::move(coeffs));
}

} // namespace scarkit::fockstate
