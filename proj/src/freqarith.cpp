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

#include "scarkit/freqarith.hpp"

#include "scarkit/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace scarkit::freqarith {

namespace {

const HighPrecision &two_pi() {
    static const HighPrecision value =
        2 * boost::math::constants::pi<HighPrecision>();
    return value;
}

Rational abs_rational(const Rational &q) { return q < 0 ? Rational(-q) : q; }

} // namespace

// ---------------------------------------------------------------------------
// FrequencySpec

GeneratorBasis GeneratorBasis::unit() {
    return GeneratorBasis{{"one"}, {HighPrecision(1)}};
}

FrequencySpec::FrequencySpec(GeneratorBasis basis,
                             std::vector<RationalVector> coords)
    : basis_(std::move(basis)), coords_(std::move(coords)) {
    validate_and_evaluate();
}

FrequencySpec::FrequencySpec(GeneratorBasis basis,
                             std::vector<RationalVector> coords,
                             const std::vector<HighPrecision> &numeric)
    : FrequencySpec(std::move(basis), std::move(coords)) {
    if (numeric.size() != exact_.size()) {
        throw ValidationError("numeric frequency count does not match rows");
    }
    for (std::size_t j = 0; j < exact_.size(); ++j) {
        const HighPrecision diff = abs(numeric[j] - exact_[j]);
        if (diff > HighPrecision("1e-20") * abs(exact_[j])) {
            throw ValidationError("numeric omega_" + std::to_string(j + 1) +
                                  " disagrees with its exact row");
        }
    }
}

FrequencySpec FrequencySpec::rational(const RationalVector &omega) {
    std::vector<RationalVector> coords;
    coords.reserve(omega.size());
    for (const auto &w : omega) {
        coords.push_back({w});
    }
    return FrequencySpec(GeneratorBasis::unit(), std::move(coords));
}

HighPrecision FrequencySpec::evaluate(const RationalVector &c) const {
    if (c.size() != basis_.size()) {
        throw DomainError("generator coordinate length mismatch");
    }
    HighPrecision sum = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] != 0) {
            sum += to_high_precision(c[i]) * basis_.values[i];
        }
    }
    return sum;
}

void FrequencySpec::validate_and_evaluate() {
    if (basis_.values.empty() || basis_.labels.size() != basis_.values.size()) {
        throw ValidationError("generator basis is empty or mislabelled");
    }
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        if (basis_.values[i] <= 0) {
            throw ValidationError("generator '" + basis_.labels[i] +
                                  "' must be positive");
        }
    }
    if (coords_.empty()) {
        throw ValidationError("frequency vector is empty");
    }
    exact_.clear();
    omega_.clear();
    omega_sum_ = 0.0;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        if (coords_[j].size() != basis_.size()) {
            throw ValidationError("omega_" + std::to_string(j + 1) + " has " +
                                  std::to_string(coords_[j].size()) +
                                  " coordinates, expected " +
                                  std::to_string(basis_.size()));
        }
        HighPrecision w = evaluate(coords_[j]);
        if (w <= 0) {
            throw ValidationError("omega_" + std::to_string(j + 1) +
                                  " must be positive");
        }
        omega_.push_back(w.convert_to<double>());
        omega_sum_ += omega_.back();
        exact_.push_back(std::move(w));
    }
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
    std::string text;
    std::size_t column; // 1-based
};

std::vector<Token> split_tokens(const std::string &line, std::size_t offset,
                                const std::string &separators) {
    std::vector<Token> out;
    std::size_t i = offset;
    while (i < line.size()) {
        while (i < line.size() &&
               (std::isspace(static_cast<unsigned char>(line[i])) ||
                separators.find(line[i]) != std::string::npos)) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        const std::size_t start = i;
        while (i < line.size() &&
               !std::isspace(static_cast<unsigned char>(line[i])) &&
               separators.find(line[i]) == std::string::npos) {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::size_t significant_digits(const std::string &s) {
    std::size_t count = 0;
    bool leading = true;
    for (char c : s) {
        if (c == 'e' || c == 'E') {
            break;
        }
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            continue;
        }
        if (leading && c == '0') {
            continue;
        }
        leading = false;
        ++count;
    }
    return count;
}

HighPrecision parse_generator_value(const Token &tok, std::size_t line) {
    const std::string &s = tok.text;
    if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
        const std::string inner = s.substr(5, s.size() - 6);
        Rational q;
        try {
            q = parse_rational(inner);
        } catch (const Error &e) {
            throw ParseError(e.what(), line, tok.column + 5);
        }
        if (q <= 0) {
            throw ParseError("sqrt argument must be positive", line,
                             tok.column + 5);
        }
        return sqrt(to_high_precision(q));
    }
    const bool approximate = s.find_first_of(".eE") != std::string::npos;
    if (approximate) {
        if (significant_digits(s) < 30) {
            throw ParseError("generator decimal needs at least 30 significant "
                             "digits, got '" + s + "'",
                             line, tok.column);
        }
        try {
            (void)parse_rational(s); // syntax check
            return HighPrecision(s);
        } catch (const Error &e) {
            throw ParseError(e.what(), line, tok.column);
        }
    }
    try {
        return to_high_precision(parse_rational(s));
    } catch (const Error &e) {
        throw ParseError(e.what(), line, tok.column);
    }
}

} // namespace

FrequencySpec parse_frequency_spec(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::optional<GeneratorBasis> basis;
    std::size_t generators_line = 0;
    struct OmegaRow {
        std::vector<Token> tokens;
        std::size_t line;
        std::size_t column;
    };
    std::map<std::size_t, OmegaRow> rows;

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
        if (eq == std::string::npos) {
            const auto col = line.find_first_not_of(" \t") + 1;
            throw ParseError("expected 'key = value'", line_no, col);
        }
        std::string key = line.substr(0, eq);
        const auto key_start = key.find_first_not_of(" \t");
        key.erase(0, key_start);
        key.erase(key.find_last_not_of(" \t\r") + 1);

        if (key == "generators") {
            if (basis) {
                throw ParseError("duplicate 'generators' line", line_no,
                                 key_start + 1);
            }
            GeneratorBasis b;
            for (const auto &tok : split_tokens(line, eq + 1, ",")) {
                const auto colon = tok.text.find(':');
                if (colon == std::string::npos || colon == 0 ||
                    colon + 1 == tok.text.size()) {
                    throw ParseError("expected 'label:value'", line_no,
                                     tok.column);
                }
                b.labels.push_back(tok.text.substr(0, colon));
                b.values.push_back(parse_generator_value(
                    {tok.text.substr(colon + 1), tok.column + colon + 1},
                    line_no));
                if (b.values.back() <= 0) {
                    throw ParseError("generator must be positive", line_no,
                                     tok.column + colon + 1);
                }
            }
            if (b.values.empty()) {
                throw ParseError("no generators listed", line_no, eq + 2);
            }
            basis = std::move(b);
            generators_line = line_no;
        } else if (key.rfind("omega_", 0) == 0) {
            const std::string idx = key.substr(6);
            if (idx.empty() ||
                !std::all_of(idx.begin(), idx.end(), [](char c) {
                    return std::isdigit(static_cast<unsigned char>(c));
                })) {
                throw ParseError("malformed frequency key '" + key + "'",
                                 line_no, key_start + 1);
            }
            const std::size_t j = std::stoul(idx);
            if (j == 0 || rows.count(j)) {
                throw ParseError("invalid or duplicate index in '" + key + "'",
                                 line_no, key_start + 1);
            }
            rows[j] = {split_tokens(line, eq + 1, ","), line_no, eq + 2};
        } else {
            throw ParseError("unknown key '" + key + "'", line_no,
                             key_start + 1);
        }
    }
    (void)generators_line;
    if (!basis) {
        basis = GeneratorBasis::unit();
    }
    if (rows.empty()) {
        throw ParseError("no omega_j lines", line_no == 0 ? 1 : line_no, 1);
    }
    std::vector<RationalVector> coords;
    std::size_t expected = 1;
    for (auto &[j, row] : rows) {
        if (j != expected) {
            throw ParseError("omega_" + std::to_string(expected) + " missing",
                             row.line, 1);
        }
        ++expected;
        if (row.tokens.size() != basis->size()) {
            throw ParseError("expected " + std::to_string(basis->size()) +
                                 " coordinates, got " +
                                 std::to_string(row.tokens.size()),
                             row.line, row.column);
        }
        RationalVector c;
        for (const auto &tok : row.tokens) {
            try {
                c.push_back(parse_rational(tok.text));
            } catch (const Error &e) {
                throw ParseError(e.what(), row.line, tok.column);
            }
        }
        coords.push_back(std::move(c));
    }
    try {
        return FrequencySpec(std::move(*basis), std::move(coords));
    } catch (const ValidationError &e) {
        throw ParseError(e.what(), rows.begin()->second.line, 1);
    }
}

FrequencySpec load_frequency_spec(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'", 0, 0);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_frequency_spec(buffer.str());
}

// ---------------------------------------------------------------------------
// Span and decomposition

SpanInfo rational_span(const FrequencySpec &spec) {
    RationalSpan span(spec.basis().size());
    SpanInfo info;
    for (std::size_t j = 0; j < spec.dim(); ++j) {
        if (span.insert(spec.row(j))) {
            info.pivots.push_back(j);
        }
    }
    info.d_omega = span.rank();
    return info;
}

LadderVector ladder_vector(std::span<const Rational> nu) {
    LadderVector out;
    bool found = false;
    for (const auto &q : nu) {
        if (q != 0 && (!found || abs_rational(q) < out.nu_min)) {
            out.nu_min = abs_rational(q);
            found = true;
        }
    }
    if (!found) {
        throw DomainError("ladder vector of the zero vector");
    }
    BigInt K = 1;
    for (const auto &q : nu) {
        const Rational r = q / out.nu_min;
        K = boost::multiprecision::lcm(K, boost::multiprecision::denominator(r));
    }
    out.K = to_int64(K);
    for (const auto &q : nu) {
        const Rational r = Rational(K) * q / out.nu_min;
        out.k.push_back(to_int64(boost::multiprecision::numerator(r)));
    }
    return out;
}

double period_of(double v, std::span<const Rational> nu) {
    if (v == 0.0) {
        throw DomainError("period of a zero frequency");
    }
    const LadderVector lv = ladder_vector(nu);
    return (two_pi() * lv.K /
            (HighPrecision(std::abs(v)) * to_high_precision(lv.nu_min)))
        .convert_to<double>();
}

std::int64_t PeriodicComponent::conductor_for(int sigma) const {
    const auto &c = sigma >= 0 ? conductor_up : conductor_down;
    if (!c) {
        throw DomainError("component " + std::to_string(index + 1) +
                          " has no ladder in direction " +
                          (sigma >= 0 ? "+1" : "-1"));
    }
    return *c;
}

HarmonicDecomposition::HarmonicDecomposition(
    FrequencySpec spec, std::vector<PeriodicComponent> components)
    : spec_(std::move(spec)), components_(std::move(components)) {}

std::vector<RationalVector> HarmonicDecomposition::nu_matrix() const {
    std::vector<RationalVector> out;
    for (const auto &c : components_) {
        out.push_back(c.nu);
    }
    return out;
}

double HarmonicDecomposition::torus_volume() const {
    double vol = 1.0;
    for (const auto &c : components_) {
        vol *= c.period;
    }
    return vol;
}

namespace {

std::optional<std::int64_t> try_conductor(std::span<const std::int64_t> k,
                                          int sigma) {
    try {
        return conductor(k, sigma);
    } catch (const DomainError &) {
        return std::nullopt;
    }
}

} // namespace

HarmonicDecomposition decompose(const FrequencySpec &spec) {
    const SpanInfo info = rational_span(spec);
    RationalSpan span(spec.basis().size());
    for (auto p : info.pivots) {
        span.insert(spec.row(p));
    }
    std::vector<RationalVector> nu(info.d_omega,
                                   RationalVector(spec.dim(), Rational(0)));
    for (std::size_t j = 0; j < spec.dim(); ++j) {
        auto c = span.coordinates(spec.row(j));
        if (!c) {
            throw ConsistencyError("frequency outside its own rational span");
        }
        for (std::size_t n = 0; n < info.d_omega; ++n) {
            nu[n][j] = (*c)[n];
        }
    }

    std::vector<PeriodicComponent> comps;
    for (std::size_t n = 0; n < info.d_omega; ++n) {
        PeriodicComponent pc;
        pc.index = n;
        pc.pivot = info.pivots[n];
        pc.v_coords = spec.row(pc.pivot);
        pc.v_exact = spec.omega_exact(pc.pivot);
        pc.v = pc.v_exact.convert_to<double>();
        pc.nu = nu[n];
        HighPrecision trace = 0;
        for (const auto &q : pc.nu) {
            const HighPrecision s = pc.v_exact * to_high_precision(q);
            pc.speeds.push_back(s.convert_to<double>());
            trace += s;
        }
        pc.nu_trace = trace.convert_to<double>();
        const LadderVector lv = ladder_vector(pc.nu);
        pc.nu_min = lv.nu_min;
        pc.K = lv.K;
        pc.k = lv.k;
        const HighPrecision step =
            pc.v_exact * to_high_precision(lv.nu_min) / HighPrecision(lv.K);
        pc.ladder_step = step.convert_to<double>();
        pc.period = (two_pi() / step).convert_to<double>();
        pc.conductor_up = try_conductor(pc.k, +1);
        pc.conductor_down = try_conductor(pc.k, -1);
        comps.push_back(std::move(pc));
    }
    return HarmonicDecomposition(spec, std::move(comps));
}

// ---------------------------------------------------------------------------
// Conductors

namespace {

struct SignedGenerators {
    std::vector<std::int64_t> values; // sigma * k_j, zero entries dropped
    std::vector<std::size_t> slots;   // original index of each value
    std::int64_t min_positive = 0;
    bool has_negative = false;
};

SignedGenerators signed_generators(std::span<const std::int64_t> k, int sigma) {
    if (sigma != 1 && sigma != -1) {
        throw DomainError("sigma must be +1 or -1");
    }
    SignedGenerators g;
    for (std::size_t j = 0; j < k.size(); ++j) {
        if (k[j] == 0) {
            continue;
        }
        const std::int64_t s = sigma * k[j];
        g.values.push_back(s);
        g.slots.push_back(j);
        if (s > 0 && (g.min_positive == 0 || s < g.min_positive)) {
            g.min_positive = s;
        }
        if (s < 0) {
            g.has_negative = true;
        }
    }
    if (g.values.empty()) {
        throw DomainError("ladder vector has no nonzero entry");
    }
    if (gcd_of_nonzero(k) != 1) {
        throw DomainError("entries of the ladder vector are not coprime");
    }
    if (g.min_positive == 0) {
        throw DomainError("no nonnegative combination reaches a positive level");
    }
    return g;
}

constexpr std::int64_t kResidueBudget = 50'000'000;

/// Shortest representable value per residue class mod the smallest
/// generator, with the last generator used (for reconstruction).
struct ResidueTable {
    std::vector<std::int64_t> dist;
    std::vector<std::int32_t> via;
};

ResidueTable residue_table(const SignedGenerators &g) {
    const std::int64_t a = g.min_positive;
    if (a > kResidueBudget) {
        throw ResourceError("smallest generator too large for residue table");
    }
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max();
    ResidueTable t{std::vector<std::int64_t>(static_cast<std::size_t>(a), inf),
                   std::vector<std::int32_t>(static_cast<std::size_t>(a), -1)};
    using Item = std::pair<std::int64_t, std::int64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    t.dist[0] = 0;
    queue.emplace(0, 0);
    while (!queue.empty()) {
        auto [d, r] = queue.top();
        queue.pop();
        if (d != t.dist[static_cast<std::size_t>(r)]) {
            continue;
        }
        for (std::size_t i = 0; i < g.values.size(); ++i) {
            const std::int64_t s = g.values[i];
            const std::int64_t nd = d + s;
            const std::int64_t nr = nd % a;
            if (nd < t.dist[static_cast<std::size_t>(nr)]) {
                t.dist[static_cast<std::size_t>(nr)] = nd;
                t.via[static_cast<std::size_t>(nr)] = static_cast<std::int32_t>(i);
                queue.emplace(nd, nr);
            }
        }
    }
    return t;
}

/// Breadth-first search from 0 over the window [min(0, t) - M(M+1),
/// max(0, t) + M(M+1)], mixed signs; depth is the least number of
/// generators needed.
class LatticeSearch {
  public:
    LatticeSearch(const SignedGenerators &g, std::int64_t target_lo,
                  std::int64_t target_hi, std::int64_t max_steps)
        : g_(g) {
        std::int64_t M = 0;
        for (auto s : g.values) {
            M = std::max(M, s < 0 ? -s : s);
        }
        lo_ = std::min<std::int64_t>(0, target_lo) - M * (M + 1);
        const std::int64_t hi = std::max<std::int64_t>(0, target_hi) + M * (M + 1);
        hi_ = hi;
        const std::int64_t width = hi - lo_ + 1;
        if (width > kResidueBudget) {
            throw ResourceError("bounded lattice search window too large");
        }
        via_.assign(static_cast<std::size_t>(width), -2);
        depth_.assign(static_cast<std::size_t>(width), 0);
        std::queue<std::int64_t> queue;
        via_[slot(0)] = -1;
        queue.push(0);
        while (!queue.empty()) {
            const std::int64_t v = queue.front();
            queue.pop();
            if (depth_[slot(v)] >= max_steps) {
                continue;
            }
            for (std::size_t i = 0; i < g.values.size(); ++i) {
                const std::int64_t w = v + g.values[i];
                if (w < lo_ || w > hi_ || via_[slot(w)] != -2) {
                    continue;
                }
                via_[slot(w)] = static_cast<std::int32_t>(i);
                depth_[slot(w)] = depth_[slot(v)] + 1;
                queue.push(w);
            }
        }
    }

    /// Counts per generator reaching `target` in at most max_steps.
    [[nodiscard]] std::optional<std::vector<std::int64_t>>
    path(std::int64_t target, std::int64_t max_steps) const {
        if (target < lo_ || target > hi_ || via_[slot(target)] == -2 ||
            depth_[slot(target)] > max_steps) {
            return std::nullopt;
        }
        std::vector<std::int64_t> counts(g_.values.size(), 0);
        for (std::int64_t v = target; v != 0;) {
            const auto i = static_cast<std::size_t>(via_[slot(v)]);
            ++counts[i];
            v -= g_.values[i];
        }
        return counts;
    }

  private:
    [[nodiscard]] std::size_t slot(std::int64_t v) const {
        return static_cast<std::size_t>(v - lo_);
    }

    const SignedGenerators &g_;
    std::int64_t lo_ = 0;
    std::int64_t hi_ = 0;
    std::vector<std::int32_t> via_;
    std::vector<std::int64_t> depth_;
};

std::int64_t search_cap(std::span<const std::int64_t> k, std::int64_t N) {
    std::int64_t m = 0;
    for (auto v : k) {
        m = std::max(m, v < 0 ? -v : v);
    }
    return 10 * m * (N + 1);
}

} // namespace

std::int64_t conductor(std::span<const std::int64_t> k, int sigma) {
    const SignedGenerators g = signed_generators(k, sigma);
    const std::int64_t a = g.min_positive;
    if (!g.has_negative) {
        const ResidueTable t = residue_table(g);
        const std::int64_t top = *std::max_element(t.dist.begin(), t.dist.end());
        return top - a + 1;
    }
    // Mixed signs generate all of Z; certify every residue mod a.
    const LatticeSearch search(g, 0, a - 1, search_cap(k, a - 1));
    for (std::int64_t r = 0; r < a; ++r) {
        if (!search.path(r, search_cap(k, r))) {
            throw UnresolvedError("no certificate for level " +
                                  std::to_string(r) +
                                  " within the search bound");
        }
    }
    return 0;
}

std::vector<std::int64_t> representation(std::span<const std::int64_t> k,
                                         int sigma, std::int64_t N) {
    if (N < 0) {
        throw DomainError("negative level requested");
    }
    std::vector<std::int64_t> out(k.size(), 0);
    if (N == 0) {
        return out;
    }
    const SignedGenerators g = signed_generators(k, sigma);
    const std::int64_t a = g.min_positive;
    const std::int64_t r = N % a;
    std::vector<std::int64_t> counts(g.values.size(), 0);
    std::int64_t base = 0;
    if (!g.has_negative) {
        const ResidueTable t = residue_table(g);
        base = t.dist[static_cast<std::size_t>(r)];
        if (N < base) {
            throw DomainError("level " + std::to_string(N) +
                              " is a gap of the semigroup");
        }
        for (std::int64_t v = base; v != 0;) {
            const auto i = static_cast<std::size_t>(t.via[static_cast<std::size_t>(v % a)]);
            ++counts[i];
            v -= g.values[i];
        }
    } else {
        const std::int64_t cap = search_cap(k, r);
        auto found = LatticeSearch(g, r, r, cap).path(r, cap);
        if (!found) {
            throw UnresolvedError("no witness for level " + std::to_string(N));
        }
        counts = *found;
        base = r;
    }
    // top up with copies of the smallest positive generator
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        if (g.values[i] == a) {
            counts[i] += (N - base) / a;
            break;
        }
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out[g.slots[i]] = counts[i];
        total += counts[i];
    }
    if (total > search_cap(k, N)) {
        throw UnresolvedError("witness for level " + std::to_string(N) +
                              " exceeds the search bound");
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<double> numeric_frequencies(const Eigen::MatrixXd &Q) {
    if (Q.rows() != Q.cols() || Q.rows() == 0) {
        throw DomainError("Q must be a non-empty square matrix");
    }
    const double scale = 1.0 + Q.cwiseAbs().maxCoeff();
    if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw DomainError("Q is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Q);
    std::vector<double> out;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()[i];
        if (!(lambda > 0.0)) {
            throw DomainError("Q is not positive definite");
        }
        out.push_back(std::sqrt(lambda));
    }
    return out;
}

ActionWitness feasible_actions(const HarmonicDecomposition &decomp,
                               std::span<const double> E) {
    const std::size_t d = decomp.d();
    const std::size_t r = decomp.d_omega();
    if (E.size() != r) {
        throw DomainError("energy vector has " + std::to_string(E.size()) +
                          " entries, expected d_omega = " + std::to_string(r));
    }
    constexpr double tol = 1e-10;
    const double total = std::accumulate(E.begin(), E.end(), 0.0);
    if (std::abs(total - 1.0) > tol) {
        throw NotInSigmaError("components of E sum to " + std::to_string(total) +
                              ", not 1");
    }
    Eigen::MatrixXd A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(d));
    for (std::size_t n = 0; n < r; ++n) {
        for (std::size_t j = 0; j < d; ++j) {
            A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(j)) =
                decomp.component(n).speeds[j];
        }
    }
    Eigen::VectorXd e(static_cast<Eigen::Index>(r));
    for (std::size_t n = 0; n < r; ++n) {
        e(static_cast<Eigen::Index>(n)) = E[n];
    }

    std::vector<Eigen::VectorXd> vertices;
    std::vector<std::size_t> cols(r);
    std::iota(cols.begin(), cols.end(), 0);
    while (true) {
        Eigen::MatrixXd B(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(r));
        for (std::size_t c = 0; c < r; ++c) {
            B.col(static_cast<Eigen::Index>(c)) = A.col(static_cast<Eigen::Index>(cols[c]));
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (lu.isInvertible()) {
            const Eigen::VectorXd hb = lu.solve(e);
            if (hb.minCoeff() >= -tol) {
                Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
                for (std::size_t c = 0; c < r; ++c) {
                    h(static_cast<Eigen::Index>(cols[c])) =
                        std::max(0.0, hb(static_cast<Eigen::Index>(c)));
                }
                const bool duplicate = std::any_of(
                    vertices.begin(), vertices.end(), [&](const auto &v) {
                        return (v - h).cwiseAbs().maxCoeff() <= tol;
                    });
                if (!duplicate) {
                    vertices.push_back(h);
                }
            }
        }
        // next combination of r columns out of d
        std::size_t i = r;
        while (i > 0 && cols[i - 1] == d - r + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++cols[i - 1];
        for (std::size_t j = i; j < r; ++j) {
            cols[j] = cols[j - 1] + 1;
        }
    }
    if (vertices.empty()) {
        throw NotInSigmaError("no nonnegative actions attain E");
    }
    Eigen::VectorXd h = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
    for (const auto &v : vertices) {
        h += v;
    }
    h /= static_cast<double>(vertices.size());
    if ((A * h - e).cwiseAbs().maxCoeff() > tol) {
        throw NotInSigmaError("action witness fails the energy equations");
    }
    return ActionWitness{std::vector<double>(h.data(), h.data() + h.size()), true};
}

} // namespace scarkit::freqarith
