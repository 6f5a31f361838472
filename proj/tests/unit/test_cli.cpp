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
#include "scarkit/config.hpp"
#include "scarkit/errors.hpp"
#include "scarkit/output.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace scarkit;
using namespace scarkit::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name) {
    const auto dir = fs::temp_directory_path() / ("scarkit_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path &p, const std::string &text) {
    std::ofstream(p) << text;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

int run_args(std::vector<std::string> args, std::string *out_text = nullptr,
             std::string *err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    if (out_text) {
        *out_text = out.str();
    }
    if (err_text) {
        *err_text = err.str();
    }
    return code;
}

const char *kSqrt2 = "generators = one:1, r2:sqrt(2)\nomega_1 = 1 0\nomega_2 = 0 1\n";

} // namespace

TEST_CASE("config round trip") {
    const char *text = "spec = a.freq\n"
                       "E = 1/3 2/3   # comment\n"
                       "z0 = 0.5 0 0 0.25\n"
                       "z0 = from-witness\n"
                       "alpha = 1/4 3/4\n"
                       "hbar_start = 0.1\n"
                       "hbar_ratio = 3/5\n"
                       "hbar_count = 4\n"
                       "symbols = x1^2, char:1\n"
                       "tail_tol = 1e-10\n"
                       "out = o\n"
                       "seed = 77\n";
    const auto c = parse_config(text);
    CHECK(c.E == RationalVector{Rational(1, 3), Rational(2, 3)});
    CHECK(c.z0.size() == 2);
    CHECK_FALSE(c.z0[0].from_witness);
    CHECK(c.z0[1].from_witness);
    CHECK(c.symbols == std::vector<std::string>{"x1^2", "char:1"});
    CHECK(c.seed == 77);
    const auto again = parse_config(serialize(c));
    CHECK(again == c);
    CHECK(serialize(again) == serialize(c));
    CHECK(config_hash(again) == config_hash(c));
    CHECK(config_hash(c).size() == 16);
}

TEST_CASE("config defaults survive the round trip") {
    const auto c = parse_config("spec = s\nE = 1\n");
    CHECK(c.z0.size() == 1);
    CHECK(c.z0[0].from_witness);
    CHECK(parse_config(serialize(c)) == c);
}

TEST_CASE("config validation") {
    auto fails_at = [](const char *text, std::size_t line) {
        try {
            parse_config(text);
        } catch (const ParseError &e) {
            return e.line() == line;
        }
        return false;
    };
    CHECK(fails_at("spec = s\nE = 1\nhbar_ratio = 1\n", 3));
    CHECK(fails_at("spec = s\nE = 1\nhbar_count = 2\n", 3));
    CHECK(fails_at("spec = s\nE = 1\ntail_tol = 0\n", 3));
    CHECK(fails_at("spec = s\nE = 1/0\n", 2));
    CHECK(fails_at("spec = s\nE = 1\nbogus = 3\n", 3));
    CHECK(fails_at("spec = s\nE = 1\nE = 2\n", 3));
    CHECK(fails_at("spec = s\nE 1\n", 2));
    CHECK(fails_at("E = 1\n", 1));
    CHECK(fails_at("spec = s\nE = 1\nz0 = 1 2 3\n", 3));
    CHECK(fails_at("spec = s\nE = 1\nz0 = 1 0\nz0 = 0 1\n", 4));
}

TEST_CASE("analyze prints the decomposition") {
    const auto dir = scratch("analyze");
    write(dir / "s.freq", kSqrt2);
    std::string out;
    CHECK(run_args({"analyze", (dir / "s.freq").string()}, &out) == kExitOk);
    CHECK(out.find("d_omega = 2") != std::string::npos);
    CHECK(out.find("6.2831853071795862") != std::string::npos);
    CHECK(out.find("4.4428829381583661") != std::string::npos);

    write(dir / "t.freq", "omega_1 = 2\nomega_2 = 3\n");
    CHECK(run_args({"analyze", (dir / "t.freq").string()}, &out) == kExitOk);
    CHECK(out.find("d_omega = 1") != std::string::npos);
    CHECK(out.find(",2,-\n") != std::string::npos);

    write(dir / "bad.freq", "omega_1 = 1/0\n");
    std::string err;
    CHECK(run_args({"analyze", (dir / "bad.freq").string()}, nullptr, &err) == kExitParse);
    CHECK(err.find("line 1, column 11") != std::string::npos);
    CHECK(run_args({"analyze"}) == kExitParse);
    CHECK(run_args({"frobnicate"}) == kExitParse);
}

TEST_CASE("levels wraps the window enumeration") {
    const auto dir = scratch("levels");
    write(dir / "s.freq", "omega_1 = 1\nomega_2 = 1\n");
    std::string out;
    CHECK(run_args({"levels", (dir / "s.freq").string(), "--hbar", "1", "--lo", "1.9", "--hi",
                    "2.1"},
                   &out) == kExitOk);
    CHECK(out.find("0,1,2,2\n1,0,2,2\n") != std::string::npos);
}

TEST_CASE("sweep writes reports and is reproducible") {
    const auto dir = scratch("sweep");
    write(dir / "s.freq", kSqrt2);
    write(dir / "run.cfg", "spec = s.freq\nE = 1/2 1/2\nhbar_start = 0.2\nhbar_count = 4\n"
                           "symbols = x1^2, H1, char:1\n");
    const auto out_a = (dir / "a").string();
    const auto out_b = (dir / "b").string();
    CHECK(run_args({"sweep", (dir / "run.cfg").string(), "--out", out_a, "--threads", "1"}) ==
          kExitOk);
    CHECK(run_args({"sweep", (dir / "run.cfg").string(), "--out", out_a, "--threads", "3"}) ==
          kExitOk);
    const auto first = slurp(fs::path(out_a) / "report.csv");
    CHECK(run_args({"sweep", (dir / "run.cfg").string(), "--out", out_a}) == kExitOk);
    CHECK(slurp(fs::path(out_a) / "report.csv") == first);
    std::size_t csvs = 0;
    for (const auto &entry : fs::directory_iterator(out_a)) {
        csvs += entry.path().extension() == ".csv";
        const auto text = slurp(entry.path());
        CHECK(text.rfind("# scarkit ", 0) == 0);
        CHECK(text.find("config=") != std::string::npos);
    }
    CHECK(csvs >= 3);
    CHECK(run_args({"sweep", (dir / "run.cfg").string(), "--out", out_b, "--seed", "5"}) ==
          kExitOk);
    CHECK(slurp(fs::path(out_b) / "report.csv") != first);
}

TEST_CASE("sweep exit codes") {
    const auto dir = scratch("sweep_codes");
    write(dir / "s.freq", kSqrt2);
    write(dir / "off.cfg", "spec = s.freq\nE = 0.7 0.7\n");
    std::string err;
    CHECK(run_args({"sweep", (dir / "off.cfg").string(), "--out", (dir / "o").string()},
                   nullptr, &err) == kExitNotInSigma);
    CHECK(err.find("E not in") != std::string::npos);
    write(dir / "bad.cfg", "spec = s.freq\nE = 1/2 1/2\nhbar_ratio = 2\n");
    CHECK(run_args({"sweep", (dir / "bad.cfg").string()}) == kExitParse);
    CHECK(run_args({"sweep", (dir / "missing.cfg").string()}) == kExitParse);
}

TEST_CASE("husimi command") {
    const auto dir = scratch("husimi");
    write(dir / "s.freq", kSqrt2);
    write(dir / "run.cfg", "spec = s.freq\nE = 1/2 1/2\n");
    const auto out_dir = (dir / "o").string();
    std::string out;
    CHECK(run_args({"husimi", (dir / "run.cfg").string(), "--plane", "2", "--grid", "41",
                    "--hbar", "0.1", "--out", out_dir},
                   &out) == kExitOk);
    CHECK(fs::exists(fs::path(out_dir) / "husimi_2.csv"));
    CHECK(run_args({"husimi", (dir / "run.cfg").string(), "--plane", "3", "--out", out_dir}) ==
          kExitError);
    write(dir / "empty.csv", "");
    CHECK(run_args({"husimi", (dir / "run.cfg").string(), "--plane", "1", "--state",
                    (dir / "empty.csv").string(), "--out", out_dir}) == kExitParse);
}

TEST_CASE("sweep state file feeds the husimi command") {
    const auto dir = scratch("husimi_state");
    write(dir / "s.freq", kSqrt2);
    write(dir / "run.cfg", "spec = s.freq\nE = 1/2 1/2\nhbar_count = 3\n");
    const auto out_dir = (dir / "o").string();
    REQUIRE(run_args({"sweep", (dir / "run.cfg").string(), "--out", out_dir}) == kExitOk);
    std::string out;
    CHECK(run_args({"husimi", (dir / "run.cfg").string(), "--plane", "1", "--state",
                    (fs::path(out_dir) / "state.csv").string(), "--out", out_dir},
                   &out) == kExitOk);
    CHECK(out.find("hbar = 0.05") != std::string::npos);
}
