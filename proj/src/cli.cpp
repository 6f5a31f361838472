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

#include "scarkit/cli.hpp"

#include "scarkit/errors.hpp"
#include "scarkit/kernels.hpp"
#include "scarkit/output.hpp"
#include "scarkit/phasespace.hpp"
#include "scarkit/spectral.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

namespace scarkit::cli {

namespace fs = std::filesystem;

namespace {

std::vector<double> to_doubles(const RationalVector &v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto &r : v) {
        out.push_back(to_double(r));
    }
    return out;
}

std::string join_ints(const std::vector<std::int64_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + std::to_string(v[i]);
    }
    return s;
}

std::string join_rationals(const RationalVector &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + to_string(v[i]);
    }
    return s;
}

void apply_threads(std::optional<int> threads) {
    if (!threads) {
        if (const char *env = std::getenv("SCARKIT_THREADS"); env && *env) {
            try {
                threads = std::stoi(env);
            } catch (const std::exception &) {
                throw ValidationError("SCARKIT_THREADS must be a positive integer");
            }
        }
    }
    if (threads) {
        if (*threads < 1) {
            throw ValidationError("thread count must be positive");
        }
        kernels::set_threads(*threads);
    }
}

std::ofstream open_out(const fs::path &path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw Error("cannot write '" + path.string() + "'");
    }
    return f;
}

int cmd_analyze(const std::string &spec_path, std::ostream &out) {
    const auto decomp = freqarith::decompose(freqarith::load_frequency_spec(spec_path));
    out << "d = " << decomp.d() << '\n';
    out << "d_omega = " << decomp.d_omega() << '\n';
    out << "omega =";
    for (double w : decomp.spec().omega()) {
        out << ' ' << output::fmt(w);
    }
    out << "\n\n";
    out << "n,v,nu,T,K,k,ladder_step,conductor_up,conductor_down\n";
    for (const auto &c : decomp.components()) {
        out << c.index + 1 << ',' << output::fmt(c.v) << ',' << join_rationals(c.nu) << ','
            << output::fmt(c.period) << ',' << c.K << ',' << join_ints(c.k) << ','
            << output::fmt(c.ladder_step) << ','
            << (c.conductor_up ? std::to_string(*c.conductor_up) : "-") << ','
            << (c.conductor_down ? std::to_string(*c.conductor_down) : "-") << '\n';
    }
    return kExitOk;
}

int cmd_levels(const std::string &spec_path, double hbar, double lo, double hi,
               const std::string &out_path, std::ostream &out) {
    const auto decomp = freqarith::decompose(freqarith::load_frequency_spec(spec_path));
    const auto levels = spectral::enumerate_window(decomp, hbar, lo, hi);
    const std::string header = std::string("# scarkit ") + SCARKIT_VERSION +
                               " levels hbar=" + output::fmt(hbar) + " window=[" +
                               output::fmt(lo) + ", " + output::fmt(hi) + "]";
    if (out_path.empty()) {
        output::write_levels(out, levels, decomp.d(), decomp.d_omega(), header);
    } else {
        auto f = open_out(out_path);
        output::write_levels(f, levels, decomp.d(), decomp.d_omega(), header);
    }
    return kExitOk;
}

int cmd_sweep(ExperimentConfig cfg, const std::optional<std::string> &out_dir,
              const std::optional<std::uint64_t> &seed, std::ostream &out,
              std::ostream &err) {
    if (seed) {
        cfg.seed = *seed;
    }
    if (out_dir) {
        cfg.out = *out_dir;
    }
    const auto decomp = freqarith::decompose(freqarith::load_frequency_spec(cfg.spec_path()));
    const auto sweep_cfg = make_sweep_config(cfg, decomp);
    auto report = scarlab::sweep(decomp, sweep_cfg);
    const std::string hash = config_hash(cfg);
    report.metadata["spec"] = cfg.spec;
    report.metadata["seed"] = std::to_string(cfg.seed);
    report.metadata["config"] = hash;
    const std::string header = output::header_line(hash);

    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    {
        auto f = open_out(dir / "report.csv");
        output::write_report(f, report, header);
    }
    {
        auto f = open_out(dir / "slopes.csv");
        output::write_slopes(f, report, header);
    }
    {
        auto f = open_out(dir / "targets.csv");
        output::write_targets(f, report, header);
    }
    if (report.final_state) {
        auto f = open_out(dir / "state.csv");
        fockstate::write_state_csv(f, *report.final_state,
                                   {header.substr(2), "scarred state at the smallest hbar"});
    }
    {
        auto f = open_out(dir / "summary.txt");
        output::write_summary(f, report, header);
    }
    output::write_summary(out, report, header);
    for (const auto &e : report.errors) {
        err << "warning: row " << e << '\n';
    }
    return kExitOk;
}

int cmd_husimi(ExperimentConfig cfg, std::size_t plane, std::size_t grid_n,
               const std::optional<std::string> &state_path,
               const std::optional<double> &hbar_opt, const std::optional<std::string> &out_dir,
               const std::optional<std::uint64_t> &seed, std::ostream &out) {
    if (seed) {
        cfg.seed = *seed;
    }
    if (out_dir) {
        cfg.out = *out_dir;
    }
    const auto decomp = freqarith::decompose(freqarith::load_frequency_spec(cfg.spec_path()));
    if (plane < 1 || plane > decomp.d()) {
        throw ValidationError("plane " + std::to_string(plane) + " is outside modes 1.." +
                              std::to_string(decomp.d()));
    }
    if (grid_n < 2) {
        throw ValidationError("grid needs at least 2 points per axis");
    }
    const auto sweep_cfg = make_sweep_config(cfg, decomp);
    const std::size_t mode = plane - 1;

    std::optional<fockstate::FockState> state;
    if (state_path) {
        std::ifstream f(*state_path);
        if (!f) {
            throw ParseError("cannot open '" + *state_path + "'", 0, 0);
        }
        state = fockstate::read_state_csv(f);
        if (state->dim() != decomp.d()) {
            throw ValidationError("state dimension does not match the frequency spec");
        }
    } else {
        const double hbar = hbar_opt ? *hbar_opt : sweep_cfg.hbar_start;
        if (!(hbar > 0.0)) {
            throw ValidationError("hbar must be positive");
        }
        if (sweep_cfg.points.size() == 1) {
            state = scarlab::build_scar(decomp, sweep_cfg.points[0].z0, sweep_cfg.E, hbar,
                                        sweep_cfg.tail_tol)
                        .state;
        } else {
            state = scarlab::convex_scar(decomp, sweep_cfg.points, sweep_cfg.E, hbar,
                                         sweep_cfg.tail_tol)
                        .state;
        }
    }
    const PhasePoint &fixed = sweep_cfg.points.front().z0;
    const double half = phasespace::husimi_extent(*state, mode);
    const auto grid = phasespace::husimi_grid(*state, mode, fixed, half, grid_n);

    const std::string header = output::header_line(config_hash(cfg));
    const fs::path dir(cfg.out);
    fs::create_directories(dir);
    const fs::path file = dir / ("husimi_" + std::to_string(plane) + ".csv");
    {
        auto f = open_out(file);
        output::write_husimi(f, grid, header);
    }
    out << "hbar = " << output::fmt(state->hbar()) << '\n';
    out << "grid integral = " << output::fmt(grid.integral()) << '\n';
    out << "slice mass = " << output::fmt(phasespace::husimi_slice_mass(*state, mode, fixed))
        << '\n';
    out << "wrote " << file.string() << '\n';
    return kExitOk;
}

} // namespace

scarlab::SweepConfig make_sweep_config(const ExperimentConfig &config,
                                       const freqarith::HarmonicDecomposition &decomp) {
    scarlab::SweepConfig s;
    s.E = to_doubles(config.E);
    if (s.E.size() != decomp.d_omega()) {
        throw DomainError("E has " + std::to_string(s.E.size()) + " entries but d_omega is " +
                          std::to_string(decomp.d_omega()));
    }
    const std::size_t d = decomp.d();
    std::optional<PhasePoint> witness;
    for (std::size_t j = 0; j < config.z0.size(); ++j) {
        const auto &p = config.z0[j];
        scarlab::ConvexPoint point;
        if (p.from_witness) {
            if (!witness) {
                witness = phasespace::sigma_membership(decomp, s.E).witness;
            }
            point.z0 = *witness;
        } else {
            if (p.coords.size() != 2 * d) {
                throw ValidationError("z0 needs " + std::to_string(2 * d) + " coordinates");
            }
            const auto c = to_doubles(p.coords);
            point.z0 = PhasePoint(std::vector<double>(c.begin(), c.begin() + d),
                                  std::vector<double>(c.begin() + d, c.end()));
        }
        point.alpha = config.alpha.empty() ? 1.0 : to_double(config.alpha[j]);
        s.points.push_back(std::move(point));
    }
    s.hbar_start = to_double(config.hbar_start);
    s.hbar_ratio = to_double(config.hbar_ratio);
    s.hbar_count = static_cast<std::size_t>(config.hbar_count);
    s.tail_tol = to_double(config.tail_tol);
    if (config.symbols.empty()) {
        s.probes = scarlab::default_probes(d, config.seed);
    } else {
        for (const auto &name : config.symbols) {
            s.probes.push_back(scarlab::make_probe(name, d, config.seed));
        }
    }
    return s;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"scarkit: scarred eigenstates of rational and irrational harmonic oscillators",
                 "scarkit"};
    app.set_version_flag("--version", std::string(SCARKIT_VERSION));
    app.require_subcommand(1);

    std::optional<int> threads;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    app.add_option("--threads", threads, "OpenMP threads (default: SCARKIT_THREADS)");

    std::string spec_path;
    auto *analyze = app.add_subcommand("analyze", "print the periodic decomposition of a spec");
    analyze->add_option("spec", spec_path, "frequency spec file")->required();

    double hbar = 0.1, lo = 0.0, hi = 1.0;
    std::string levels_out;
    auto *levels = app.add_subcommand("levels", "list eigenvalues of Op(H) in a window");
    levels->add_option("spec", spec_path, "frequency spec file")->required();
    levels->add_option("--hbar", hbar)->required();
    levels->add_option("--lo", lo)->required();
    levels->add_option("--hi", hi)->required();
    levels->add_option("--out", levels_out, "CSV file (default: stdout)");

    std::string config_path;
    auto *sweep = app.add_subcommand("sweep", "run an hbar sweep and write CSV reports");
    sweep->add_option("config", config_path, "experiment config")->required();
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--seed", seed, "seed for random probe characters");
    sweep->add_option("--threads", threads, "OpenMP threads");

    std::size_t plane = 1, grid_n = 81;
    std::optional<std::string> state_path;
    std::optional<double> husimi_hbar;
    auto *husimi = app.add_subcommand("husimi", "Husimi density on one mode plane");
    husimi->add_option("config", config_path, "experiment config")->required();
    husimi->add_option("--plane", plane, "mode index, 1-based")->required();
    husimi->add_option("--grid", grid_n, "points per axis");
    husimi->add_option("--state", state_path, "state CSV written by sweep");
    husimi->add_option("--hbar", husimi_hbar, "hbar when building the state");
    husimi->add_option("--out", out_dir, "output directory");
    husimi->add_option("--seed", seed, "seed for random probe characters");
    husimi->add_option("--threads", threads, "OpenMP threads");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        apply_threads(threads);
        if (*analyze) {
            return cmd_analyze(spec_path, out);
        }
        if (*levels) {
            return cmd_levels(spec_path, hbar, lo, hi, levels_out, out);
        }
        if (*sweep) {
            return cmd_sweep(load_config(config_path), out_dir, seed, out, err);
        }
        if (*husimi) {
            return cmd_husimi(load_config(config_path), plane, grid_n, state_path, husimi_hbar,
                              out_dir, seed, out);
        }
    } catch (const ParseError &e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const NotInSigmaError &e) {
        err << "E not in Σ_ℋ: " << e.what() << '\n';
        return kExitNotInSigma;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace scarkit::cli
