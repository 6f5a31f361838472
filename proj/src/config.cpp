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

#include "scarkit/config.hpp"

#include "scarkit/errors.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace scarkit::cli {

namespace {

struct Field {
    std::string text;
    std::size_t column;
};

std::vector<Field> split(const std::string &line, std::size_t from, char sep) {
    std::vector<Field> out;
    std::size_t i = from;
    auto is_sep = [&](char c) {
        return c == sep || c == ' ' || c == '\t' || c == '\r';
    };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i])) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        const std::size_t start = i;
        while (i < line.size() && !is_sep(line[i])) {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

Rational number(const Field &f, std::size_t line) {
    try {
        return parse_rational(f.text);
    } catch (const Error &e) {
        throw ParseError(e.what(), line, f.column);
    }
}

RationalVector numbers(const std::vector<Field> &fields, std::size_t line) {
    RationalVector out;
    for (const auto &f : fields) {
        out.push_back(number(f, line));
    }
    return out;
}

const Field &single(const std::vector<Field> &fields, std::size_t line, std::size_t col,
                    const std::string &key) {
    if (fields.size() != 1) {
        throw ParseError("'" + key + "' takes exactly one value", line, col);
    }
    return fields.front();
}

std::string join(const RationalVector &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? " " : "") + to_string(v[i]);
    }
    return s;
}

} // namespace

bool ExperimentConfig::operator==(const ExperimentConfig &o) const {
    return spec == o.spec && E == o.E && z0 == o.z0 && alpha == o.alpha &&
           hbar_start == o.hbar_start && hbar_ratio == o.hbar_ratio &&
           hbar_count == o.hbar_count && symbols == o.symbols &&
           tail_tol == o.tail_tol && out == o.out && seed == o.seed;
}

std::filesystem::path ExperimentConfig::spec_path() const {
    const std::filesystem::path p(spec);
    return p.is_absolute() || base_dir.empty() ? p : base_dir / p;
}

ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path &base_dir) {
    ExperimentConfig cfg;
    cfg.base_dir = base_dir;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::set<std::string> seen;
    bool z0_seen = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const auto eq = line.find('=');
        const auto key_col = line.find_first_not_of(" \t") + 1;
        if (eq == std::string::npos) {
            throw ParseError("expected 'key = value'", line_no, key_col);
        }
        std::string key = line.substr(key_col - 1, eq - (key_col - 1));
        key.erase(key.find_last_not_of(" \t") + 1);
        const std::size_t value_col = eq + 2;
        if (key != "z0" && !seen.insert(key).second) {
            throw ParseError("duplicate key '" + key + "'", line_no, key_col);
        }
        const auto fields = split(line, eq + 1, key == "symbols" ? ',' : ' ');
        if (fields.empty()) {
            throw ParseError("missing value for '" + key + "'", line_no, value_col);
        }
        if (key == "spec") {
            cfg.spec = single(fields, line_no, value_col, key).text;
        } else if (key == "E") {
            cfg.E = numbers(fields, line_no);
        } else if (key == "z0") {
            if (!z0_seen) {
                cfg.z0.clear();
                z0_seen = true;
            }
            PointSpec p;
            if (fields.size() == 1 && fields.front().text == "from-witness") {
                p.from_witness = true;
            } else {
                p.from_witness = false;
                p.coords = numbers(fields, line_no);
                if (p.coords.size() % 2 != 0) {
                    throw ParseError("z0 needs 2d coordinates", line_no, value_col);
                }
            }
            cfg.z0.push_back(std::move(p));
        } else if (key == "alpha") {
            cfg.alpha = numbers(fields, line_no);
        } else if (key == "hbar_start") {
            cfg.hbar_start = number(single(fields, line_no, value_col, key), line_no);
        } else if (key == "hbar_ratio") {
            cfg.hbar_ratio = number(single(fields, line_no, value_col, key), line_no);
        } else if (key == "hbar_count") {
            const Rational c = number(single(fields, line_no, value_col, key), line_no);
            if (boost::multiprecision::denominator(c) != 1) {
                throw ParseError("hbar_count must be an integer", line_no, value_col);
            }
            cfg.hbar_count = to_int64(boost::multiprecision::numerator(c));
        } else if (key == "symbols") {
            for (const auto &f : fields) {
                cfg.symbols.push_back(f.text);
            }
        } else if (key == "tail_tol") {
            cfg.tail_tol = number(single(fields, line_no, value_col, key), line_no);
        } else if (key == "out") {
            cfg.out = single(fields, line_no, value_col, key).text;
        } else if (key == "seed") {
            const auto &f = single(fields, line_no, value_col, key);
            std::size_t used = 0;
            try {
                cfg.seed = std::stoull(f.text, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used != f.text.size() || f.text.front() == '-') {
                throw ParseError("seed must be a nonnegative integer", line_no, f.column);
            }
        } else {
            throw ParseError("unknown key '" + key + "'", line_no, key_col);
        }
    }
    const std::size_t last = std::max<std::size_t>(line_no, 1);
    if (cfg.spec.empty()) {
        throw ParseError("missing 'spec'", last, 1);
    }
    if (cfg.E.empty()) {
        throw ParseError("missing 'E'", last, 1);
    }
    if (!(cfg.hbar_start > 0)) {
        throw ParseError("hbar_start must be positive", last, 1);
    }
    if (!(cfg.hbar_ratio > 0 && cfg.hbar_ratio < 1)) {
        throw ParseError("hbar_ratio must lie in (0, 1)", last, 1);
    }
    if (cfg.hbar_count < 3) {
        throw ParseError("hbar_count must be at least 3", last, 1);
    }
    if (!(cfg.tail_tol > 0 && cfg.tail_tol < 1)) {
        throw ParseError("tail_tol must lie in (0, 1)", last, 1);
    }
    if (!cfg.alpha.empty() && cfg.alpha.size() != cfg.z0.size()) {
        throw ParseError("alpha needs one weight per z0 line", last, 1);
    }
    if (cfg.alpha.empty() && cfg.z0.size() > 1) {
        throw ParseError("several z0 lines need an alpha line", last, 1);
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

std::string serialize(const ExperimentConfig &c) {
    std::ostringstream s;
    s << "spec = " << c.spec << '\n';
    s << "E = " << join(c.E) << '\n';
    for (const auto &p : c.z0) {
        s << "z0 = " << (p.from_witness ? std::string("from-witness") : join(p.coords)) << '\n';
    }
    if (!c.alpha.empty()) {
        s << "alpha = " << join(c.alpha) << '\n';
    }
    s << "hbar_start = " << to_string(c.hbar_start) << '\n';
    s << "hbar_ratio = " << to_string(c.hbar_ratio) << '\n';
    s << "hbar_count = " << c.hbar_count << '\n';
    if (!c.symbols.empty()) {
        s << "symbols = ";
        for (std::size_t i = 0; i < c.symbols.size(); ++i) {
            s << (i ? ", " : "") << c.symbols[i];
        }
        s << '\n';
    }
    s << "tail_tol = " << to_string(c.tail_tol) << '\n';
    s << "out = " << c.out << '\n';
    s << "seed = " << c.seed << '\n';
    return s.str();
}

std::string config_hash(const ExperimentConfig &config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize(config)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace scarkit::cli
