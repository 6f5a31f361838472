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

#include "scarkit/scarlab.hpp"

#include "scarkit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace scarkit::scarlab {

namespace {

std::size_t parse_mode(std::string_view digits, std::size_t d, std::string_view name) {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(),
                                       [](char c) { return c >= '0' && c <= '9'; })) {
        throw ValidationError("unknown probe '" + std::string(name) + "'");
    }
    const std::size_t j = std::stoul(std::string(digits));
    if (j == 0 || j > d) {
        throw ValidationError("probe '" + std::string(name) + "' refers to mode " +
                              std::to_string(j) + " of " + std::to_string(d));
    }
    return j - 1;
}

double unit_draw(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

Probe make_probe(std::string_view name, std::size_t d, std::uint64_t seed) {
    const std::string n(name);
    if (name.rfind("char:", 0) == 0) {
        const std::size_t i = parse_mode(name.substr(5), std::numeric_limits<std::size_t>::max(), name) + 1;
        std::mt19937_64 rng(seed);
        rng.discard(2 * d * (i - 1));
        std::vector<double> w(2 * d);
        for (auto &v : w) {
            v = 2.0 * unit_draw(rng) - 1.0;
        }
        return {n, Symbol::character(std::move(w))};
    }
    bool squared = false;
    std::string_view base = name;
    if (base.size() > 2 && base.substr(base.size() - 2) == "^2") {
        squared = true;
        base.remove_suffix(2);
    }
    Symbol s(d);
    if (base.rfind("xi", 0) == 0) {
        s = Symbol::momentum(d, parse_mode(base.substr(2), d, name));
    } else if (base.rfind("x", 0) == 0) {
        s = Symbol::position(d, parse_mode(base.substr(1), d, name));
    } else if (base.rfind("H", 0) == 0 && !squared) {
        return {n, Symbol::mode_energy(d, parse_mode(base.substr(1), d, name))};
    } else {
        throw ValidationError("unknown probe '" + n + "'");
    }
    if (squared) {
        s *= Symbol(s);
    }
    return {n, std::move(s)};
}

std::vector<Probe> default_probes(std::size_t d, std::uint64_t seed) {
    std::vector<Probe> out;
    out.push_back(make_probe("x1", d, seed));
    out.push_back(make_probe("x1^2", d, seed));
    for (std::size_t j = 1; j <= d; ++j) {
        out.push_back(make_probe("H" + std::to_string(j), d, seed));
    }
    out.push_back(make_probe("char:1", d, seed));
    out.push_back(make_probe("char:2", d, seed));
    return out;
}

ScarState build_scar(const HarmonicDecomposition &decomp, const PhasePoint &z0,
                     std::span<const double> E, double hbar, double tail_tol) {
    const auto energies = phasespace::component_energies(decomp, z0);
    if (E.size() != energies.size()) {
        throw DomainError("energy vector must have d_omega entries");
    }
    for (std::size_t n = 0; n < E.size(); ++n) {
        if (std::abs(energies[n] - E[n]) > kShellTol) {
            std::ostringstream msg;
            msg << "z0 is not on the level set: component " << n + 1 << " has energy "
                << energies[n] << ", expected " << E[n];
            throw PreconditionError(msg.str());
        }
    }
    ScarState s = fockstate::normalize_scar(decomp, z0, E, hbar, tail_tol);
    for (std::size_t n = 0; n < decomp.d_omega(); ++n) {
        const double lambda = s.target.lambda[n];
        const double r = fockstate::eigen_residual(decomp, s.state, n, lambda);
        if (r > kEigenTol * (1.0 + std::abs(lambda))) {
            throw ConsistencyError("eigenrelation residual " + std::to_string(r) +
                                   " for component " + std::to_string(n + 1));
        }
    }
    return s;
}

ConvexScar convex_scar(const HarmonicDecomposition &decomp,
                       std::span<const ConvexPoint> points, std::span<const double> E,
                       double hbar, double tail_tol) {
    if (points.empty()) {
        throw PreconditionError("convex combination needs at least one point");
    }
    double total = 0.0;
    for (const auto &p : points) {
        if (!(p.alpha > 0.0 && p.alpha <= 1.0)) {
            throw PreconditionError("weights must lie in (0, 1]");
        }
        total += p.alpha;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw PreconditionError("weights must sum to 1");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (phasespace::same_torus(decomp, points[i].z0, points[j].z0)) {
                throw PreconditionError("points " + std::to_string(i + 1) + " and " +
                                        std::to_string(j + 1) + " lie on the same torus");
            }
        }
    }
    ConvexScar out{FockState(hbar, decomp.d()), {}};
    for (const auto &p : points) {
        out.parts.push_back(build_scar(decomp, p.z0, E, hbar, tail_tol));
        out.state = out.state + out.parts.back().state.scaled(std::sqrt(p.alpha));
    }
    return out;
}

Residuals residuals(const HarmonicDecomposition &decomp, const FockState &state,
                    std::span<const double> E, std::span<const Probe> probes) {
    if (E.size() != decomp.d_omega()) {
        throw DomainError("energy vector must have d_omega entries");
    }
    const double norm2 = std::pow(state.norm(), 2);
    if (!(norm2 > 0.0)) {
        throw DomainError("residuals of the zero state");
    }
    Residuals r;
    for (std::size_t n = 0; n < decomp.d_omega(); ++n) {
        const Symbol h = Symbol::quadratic(decomp.component(n).speeds);
        const double res = (fockstate::apply(h, state) - state.scaled(E[n])).norm();
        r.concentration.push_back(res * res / norm2);

        const double period = decomp.component(n).period;
        double worst = 0.0;
        for (const auto &p : probes) {
            const Complex base = fockstate::expectation(state, state, p.symbol);
            for (int i = 0; i < 16; ++i) {
                const auto theta =
                    phasespace::component_angles(decomp, n, period * i / 16.0);
                const Complex moved =
                    fockstate::expectation(state, state, p.symbol.rotated(theta));
                worst = std::max(worst, std::abs(moved - base) / norm2);
            }
        }
        r.invariance.push_back(worst);
    }
    return r;
}

std::vector<double> ConvergenceReport::series(const std::string &name) const {
    std::vector<double> out(hbars.size(), std::numeric_limits<double>::quiet_NaN());
    for (const auto &row : rows) {
        if (row.observable != name) {
            continue;
        }
        for (std::size_t i = 0; i < hbars.size(); ++i) {
            if (hbars[i] == row.hbar) {
                out[i] = row.residual;
            }
        }
    }
    return out;
}

std::vector<double> hbar_schedule(double start, double ratio, std::size_t count) {
    if (!(start > 0.0) || !(ratio > 0.0 && ratio < 1.0) || count < 3) {
        throw ValidationError("schedule needs start > 0, ratio in (0, 1), count >= 3");
    }
    std::vector<double> out;
    double h = start;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(h);
        h *= ratio;
    }
    return out;
}

double fit_slope(std::span<const double> hbars, std::span<const double> residuals,
                 std::size_t drop, std::size_t *used) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = drop; i < hbars.size() && i < residuals.size(); ++i) {
        if (std::isfinite(residuals[i]) && residuals[i] > 0.0) {
            pts.emplace_back(std::log(hbars[i]), std::log(residuals[i]));
        }
    }
    if (used) {
        *used = pts.size();
    }
    if (pts.size() < 2) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double mx = 0.0;
    double my = 0.0;
    for (const auto &[x, y] : pts) {
        mx += x;
        my += y;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0;
    double sxx = 0.0;
    for (const auto &[x, y] : pts) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

namespace {

struct RowResult {
    std::vector<ReportRow> rows;
    std::optional<TargetRow> target;
    std::optional<FockState> state;
    std::string error;
};

RowResult run_row(const HarmonicDecomposition &decomp, const SweepConfig &cfg,
                  const std::vector<Complex> &references, double hbar) {
    RowResult out;
    const ConvexScar cs = convex_scar(decomp, cfg.points, cfg.E, hbar, cfg.tail_tol);
    const auto &target = cs.parts.front().target;
    out.target = TargetRow{hbar, target};
    auto add = [&](std::string name, Complex value, Complex reference, double residual) {
        out.rows.push_back({hbar, std::move(name), value, reference, residual});
    };

    const bool single = cs.parts.size() == 1;
    for (std::size_t j = 0; j < cs.parts.size(); ++j) {
        const double c = cs.parts[j].c_hbar;
        add(single ? "c_hbar" : "c_hbar:" + std::to_string(j + 1), c, 1.0, std::abs(c - 1.0));
    }
    for (std::size_t n = 0; n < target.lambda.size(); ++n) {
        add("lambda_gap:" + std::to_string(n + 1), target.lambda[n], target.E[n],
            std::abs(target.lambda[n] - target.E[n]));
    }
    double gap_max = 0.0;
    for (std::size_t p = 0; p < cfg.probes.size(); ++p) {
        const Complex v = fockstate::expectation(cs.state, cs.state, cfg.probes[p].symbol);
        const double gap = std::abs(v - references[p]);
        gap_max = std::max(gap_max, gap);
        add("gap:" + cfg.probes[p].name, v, references[p], gap);
    }
    add("gap_max", gap_max, 0.0, gap_max);

    const Residuals r = residuals(decomp, cs.state, cfg.E, cfg.probes);
    for (std::size_t n = 0; n < r.concentration.size(); ++n) {
        add("concentration:" + std::to_string(n + 1), r.concentration[n], 0.0,
            r.concentration[n]);
        add("invariance:" + std::to_string(n + 1), r.invariance[n], 0.0, r.invariance[n]);
    }

    if (!single) {
        const double norm2 = std::pow(cs.state.norm(), 2);
        add("norm2", norm2, 1.0, std::abs(norm2 - 1.0));
        double cross_max = 0.0;
        for (const auto &probe : cfg.probes) {
            double worst = 0.0;
            for (std::size_t i = 0; i < cs.parts.size(); ++i) {
                for (std::size_t j = i + 1; j < cs.parts.size(); ++j) {
                    worst = std::max(worst, std::abs(fockstate::expectation(
                                                cs.parts[i].state, cs.parts[j].state,
                                                probe.symbol)));
                }
            }
            cross_max = std::max(cross_max, worst);
            add("cross:" + probe.name, worst, 0.0, worst);
        }
        add("cross_max", cross_max, 0.0, cross_max);
    }
    out.state = cs.state;
    return out;
}

std::string join(const std::vector<double> &v) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) {
        s << (i ? " " : "") << v[i];
    }
    return s.str();
}

} // namespace

ConvergenceReport sweep(const HarmonicDecomposition &decomp, const SweepConfig &config) {
    if (config.points.empty()) {
        throw ValidationError("sweep needs at least one base point");
    }
    if (!(config.tail_tol > 0.0 && config.tail_tol < 1.0)) {
        throw ValidationError("tail_tol must lie in (0, 1)");
    }
    // fail fast on infeasible E before any row runs
    (void)phasespace::sigma_membership(decomp, config.E);

    ConvergenceReport report;
    report.hbars = hbar_schedule(config.hbar_start, config.hbar_ratio, config.hbar_count);

    std::vector<Complex> references(config.probes.size(), 0.0);
    for (std::size_t p = 0; p < config.probes.size(); ++p) {
        for (const auto &pt : config.points) {
            references[p] += pt.alpha *
                             phasespace::orbit_average(decomp, config.probes[p].symbol, pt.z0);
        }
    }

    const std::size_t count = report.hbars.size();
    std::vector<RowResult> results(count);
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        try {
            results[idx] = run_row(decomp, config, references, report.hbars[idx]);
        } catch (const std::exception &e) {
            results[idx].error = e.what();
        }
    }

    for (std::size_t i = 0; i < count; ++i) {
        auto &r = results[i];
        if (!r.error.empty()) {
            std::ostringstream s;
            s.precision(17);
            s << report.hbars[i] << ": " << r.error;
            report.errors.push_back(s.str());
            continue;
        }
        report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
        report.targets.push_back(std::move(*r.target));
        report.final_state = std::move(r.state);
    }

    std::vector<std::string> names;
    for (const auto &row : report.rows) {
        if (std::find(names.begin(), names.end(), row.observable) == names.end()) {
            names.push_back(row.observable);
        }
    }
    const std::size_t drop = std::min(config.drop, count >= 2 ? count - 2 : 0);
    for (const auto &name : names) {
        std::size_t used = 0;
        report.slopes[name] = fit_slope(report.hbars, report.series(name), drop, &used);
        report.fit_points[name] = used;
    }
    report.metadata["E"] = join(config.E);
    report.metadata["hbar_schedule"] = join(report.hbars);
    report.metadata["fit_drop_largest"] = std::to_string(drop);
    std::string probe_names;
    for (const auto &p : config.probes) {
        probe_names += (probe_names.empty() ? "" : " ") + p.name;
    }
    report.metadata["probes"] = probe_names;
    for (std::size_t j = 0; j < config.points.size(); ++j) {
        const auto &z = config.points[j].z0;
        report.metadata["z0:" + std::to_string(j + 1)] =
            join(z.x) + " " + join(z.xi) + " alpha " + join({config.points[j].alpha});
    }
    return report;
}

} // namespace scarkit::scarlab
