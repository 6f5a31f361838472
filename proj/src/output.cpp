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

#include "scarkit/output.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace scarkit::output {

namespace {

double first_finite(const std::vector<double> &v) {
    for (double x : v) {
        if (std::isfinite(x)) {
            return x;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double last_finite(const std::vector<double> &v) {
    for (auto it = v.rbegin(); it != v.rend(); ++it) {
        if (std::isfinite(*it)) {
            return *it;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}


bool starts_with(const std::string &s, const char *prefix) {
    return s.rfind(prefix, 0) == 0;
}

} // namespace

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string header_line(const std::string &config_hash) {
    return std::string("# scarkit ") + SCARKIT_VERSION + " config=" + config_hash;
}

void write_report(std::ostream &out, const scarlab::ConvergenceReport &report,
                  const std::string &header) {
    out << header << '\n';
    out << "hbar,observable,value_re,value_im,reference_re,reference_im,residual\n";
    for (const auto &row : report.rows) {
        out << fmt(row.hbar) << ',' << row.observable << ',' << fmt(row.value.real()) << ','
            << fmt(row.value.imag()) << ',' << fmt(row.reference.real()) << ','
            << fmt(row.reference.imag()) << ',' << fmt(row.residual) << '\n';
    }
}

void write_slopes(std::ostream &out, const scarlab::ConvergenceReport &report,
                  const std::string &header) {
    out << header << '\n';
    out << "observable,slope,points\n";
    for (const auto &[name, slope] : report.slopes) {
        out << name << ',' << fmt(slope) << ',' << report.fit_points.at(name) << '\n';
    }
}

void write_targets(std::ostream &out, const scarlab::ConvergenceReport &report,
                   const std::string &header) {
    out << header << '\n';
    out << "hbar,n,E,N,sigma,lambda,gap\n";
    for (const auto &t : report.targets) {
        const auto &tg = t.target;
        for (std::size_t n = 0; n < tg.lambda.size(); ++n) {
            const double gap = std::abs(tg.E[n] - tg.lambda[n]);
            out << fmt(t.hbar) << ',' << n + 1 << ',' << fmt(tg.E[n]) << ',' << tg.N[n] << ','
                << tg.sigma[n] << ',' << fmt(tg.lambda[n]) << ',' << fmt(gap) << '\n';
        }
    }
}

std::vector<BandCheck> band_checks(const scarlab::ConvergenceReport &report) {
    std::vector<BandCheck> out;
    for (const auto &[name, slope] : report.slopes) {
        const auto series = report.series(name);
        const double first = first_finite(series);
        const double last = last_finite(series);
        if (name == "gap_max") {
            out.push_back({name, "slope in [0.35, 1.1], last <= 0.25 first",
                           slope >= 0.35 && slope <= 1.1 && last <= 0.25 * first});
        } else if (starts_with(name, "c_hbar")) {
            out.push_back({name, "slope >= 0.35, last < first",
                           slope >= 0.35 && last < first});
        } else if (starts_with(name, "concentration:")) {
            out.push_back({name, "slope in [1.5, 2.5]", slope >= 1.5 && slope <= 2.5});
        } else if (starts_with(name, "invariance:")) {
            double worst = 0.0;
            for (double v : series) {
                worst = std::isfinite(v) ? std::max(worst, v) : worst;
            }
            out.push_back({name, "max <= 1e-10", worst <= 1e-10});
        } else if (name == "cross_max") {
            out.push_back({name, "last <= 0.2 first", last <= 0.2 * first});
        } else if (name == "norm2") {
            out.push_back({name, "slope >= 0.4", slope >= 0.4});
        }
    }
    return out;
}

void write_summary(std::ostream &out, const scarlab::ConvergenceReport &report,
                   const std::string &header) {
    out << header << '\n';
    for (const auto &[key, value] : report.metadata) {
        out << key << ": " << value << '\n';
    }
    out << "rows failed: " << report.errors.size() << '\n';
    for (const auto &e : report.errors) {
        out << "  " << e << '\n';
    }
    out << "\nslopes (log residual vs log hbar)\n";
    for (const auto &[name, slope] : report.slopes) {
        out << "  " << name << ' ' << fmt(slope) << " (" << report.fit_points.at(name)
            << " points)\n";
    }
    out << "\nbands\n";
    for (const auto &b : band_checks(report)) {
        out << "  " << (b.pass ? "PASS " : "FAIL ") << b.observable << ": " << b.band << '\n';
    }
}

void write_levels(std::ostream &out, const std::vector<spectral::Level> &levels,
                  std::size_t d, std::size_t d_omega, const std::string &header) {
    out << header << '\n';
    for (std::size_t j = 0; j < d; ++j) {
        out << 'k' << j + 1 << ',';
    }
    out << "lambda";
    for (std::size_t n = 0; n < d_omega; ++n) {
        out << ",lambda_" << n + 1;
    }
    out << '\n';
    for (const auto &level : levels) {
        for (const auto &k : level.members) {
            for (auto v : k) {
                out << v << ',';
            }
            out << fmt(level.lambda);
            for (double c : level.components) {
                out << ',' << fmt(c);
            }
            out << '\n';
        }
    }
}

void write_husimi(std::ostream &out, const phasespace::HusimiGrid &grid,
                  const std::string &header) {
    out << header << '\n';
    out << "x" << grid.mode + 1 << ",xi" << grid.mode + 1 << ",value\n";
    for (std::size_t i = 0; i < grid.x.size(); ++i) {
        for (std::size_t k = 0; k < grid.xi.size(); ++k) {
            out << fmt(grid.x[i]) << ',' << fmt(grid.xi[k]) << ','
                << fmt(grid.values[i * grid.xi.size() + k]) << '\n';
        }
    }
}

} // namespace scarkit::output
