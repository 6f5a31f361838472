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

#include "scarkit/exact.hpp"

#include "scarkit/errors.hpp"

#include <cctype>
#include <numeric>

namespace scarkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

// cpp_int reads a leading 0 as an octal prefix
BigInt decimal_int(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    return first == std::string_view::npos ? BigInt(0)
                                           : BigInt(std::string(digits.substr(first)));
}

BigInt pow10(unsigned e) {
    BigInt r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r *= 10;
    }
    return r;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    const std::string original(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        throw ValidationError("empty rational literal");
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash);
        const auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) {
            throw ValidationError("malformed rational '" + original + "'");
        }
        const BigInt d = decimal_int(den);
        if (d == 0) {
            throw DomainError("zero denominator in '" + original + "'");
        }
        value = Rational(decimal_int(num), d);
    } else {
        // decimal with optional exponent
        std::string_view mantissa = s;
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            auto exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() &&
                (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 4) {
                throw ValidationError("malformed exponent in '" + original +
                                      "'");
            }
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) {
                exponent = -exponent;
            }
        }
        std::string digits;
        long fraction_digits = 0;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            const auto ip = mantissa.substr(0, dot);
            const auto fp = mantissa.substr(dot + 1);
            if ((!ip.empty() && !all_digits(ip)) ||
                (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty())) {
                throw ValidationError("malformed decimal '" + original + "'");
            }
            digits = std::string(ip) + std::string(fp);
            fraction_digits = static_cast<long>(fp.size());
        } else {
            if (!all_digits(mantissa)) {
                throw ValidationError("malformed number '" + original + "'");
            }
            digits = std::string(mantissa);
        }
        const long shift = exponent - fraction_digits;
        const BigInt n = decimal_int(digits);
        if (shift >= 0) {
            value = Rational(n * pow10(static_cast<unsigned>(shift)));
        } else {
            value = Rational(n, pow10(static_cast<unsigned>(-shift)));
        }
    }
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational &q) {
    if (boost::multiprecision::denominator(q) == 1) {
        return boost::multiprecision::numerator(q).str();
    }
    return boost::multiprecision::numerator(q).str() + "/" +
           boost::multiprecision::denominator(q).str();
}

HighPrecision to_high_precision(const Rational &q) {
    return HighPrecision(boost::multiprecision::numerator(q)) /
           HighPrecision(boost::multiprecision::denominator(q));
}

double to_double(const Rational &q) {
    return to_high_precision(q).convert_to<double>();
}

std::int64_t to_int64(const BigInt &value) {
    const BigInt limit = BigInt(1) << 62;
    if (value >= limit || value <= -limit) {
        throw ResourceError("integer " + value.str() +
                            " exceeds the 62-bit working range");
    }
    return value.convert_to<std::int64_t>();
}

std::int64_t gcd_of_nonzero(std::span<const std::int64_t> values) {
    std::int64_t g = 0;
    for (auto v : values) {
        if (v != 0) {
            g = std::gcd(g, v < 0 ? -v : v);
        }
    }
    return g;
}

RationalSpan::RationalSpan(std::size_t dim) : dim_(dim) {}

RationalSpan::Reduced RationalSpan::reduce(const RationalVector &v) const {
    if (v.size() != dim_) {
        throw DomainError("vector length does not match span dimension");
    }
    Reduced r{v, RationalVector(basis_.size())};
    for (std::size_t i = 0; i < echelon_.size(); ++i) {
        const auto p = pivot_[i];
        if (r.remainder[p] == 0) {
            continue;
        }
        const Rational f = r.remainder[p] / echelon_[i][p];
        for (std::size_t c = 0; c < dim_; ++c) {
            if (echelon_[i][c] != 0) {
                r.remainder[c] -= f * echelon_[i][c];
            }
        }
        for (std::size_t b = 0; b < combo_[i].size(); ++b) {
            if (combo_[i][b] != 0) {
                r.coeffs[b] += f * combo_[i][b];
            }
        }
    }
    return r;
}

bool RationalSpan::insert(const RationalVector &v) {
    Reduced r = reduce(v);
    std::size_t pivot = dim_;
    for (std::size_t c = 0; c < dim_; ++c) {
        if (r.remainder[c] != 0) {
            pivot = c;
            break;
        }
    }
    if (pivot == dim_) {
        return false;
    }
    // remainder = v - sum_b coeffs[b] basis[b]
    RationalVector combo(basis_.size() + 1);
    for (std::size_t b = 0; b < basis_.size(); ++b) {
        combo[b] = -r.coeffs[b];
    }
    combo.back() = 1;
    for (auto &c : combo_) {
        c.emplace_back(0);
    }
    basis_.push_back(v);
    echelon_.push_back(std::move(r.remainder));
    pivot_.push_back(pivot);
    combo_.push_back(std::move(combo));
    return true;
}

std::optional<RationalVector>
RationalSpan::coordinates(const RationalVector &v) const {
    Reduced r = reduce(v);
    for (const auto &x : r.remainder) {
        if (x != 0) {
            return std::nullopt;
        }
    }
    return std::move(r.coeffs);
}

std::size_t rational_rank(const std::vector<RationalVector> &rows) {
    if (rows.empty()) {
        return 0;
    }
    RationalSpan span(rows.front().size());
    for (const auto &r : rows) {
        span.insert(r);
    }
    return span.rank();
}

} // namespace scarkit
