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

#pragma once

// Exact rational arithmetic and the incremental Q-span used for ranks,
// basis extraction and coordinate solves.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scarkit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
/// 50 significant decimal digits.
using HighPrecision = boost::multiprecision::cpp_dec_float_50;

using RationalVector = std::vector<Rational>;

/// Parses `p/q`, an integer, or a finite decimal (`0.25` is exactly 1/4).
/// Throws DomainError on a zero denominator and ValidationError on junk.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational &q);

HighPrecision to_high_precision(const Rational &q);
double to_double(const Rational &q);

/// Throws ResourceError when |value| does not fit in 62 bits.
std::int64_t to_int64(const BigInt &value);

std::int64_t gcd_of_nonzero(std::span<const std::int64_t> values);

/// Q-linear span of a growing family of vectors. Vectors are inserted in
/// order; the first independent ones become the basis (first-pivot
/// tie-breaking), and coordinates are expressed over that basis.
class RationalSpan {
  public:
    explicit RationalSpan(std::size_t dim);

    /// Adds `v` to the basis if it is independent of the current basis.
    bool insert(const RationalVector &v);

    /// Coefficients c with v = sum_b c[b] * basis[b], or nullopt if v is
    /// outside the span.
    [[nodiscard]] std::optional<RationalVector>
    coordinates(const RationalVector &v) const;

    [[nodiscard]] bool contains(const RationalVector &v) const {
        return coordinates(v).has_value();
    }
    [[nodiscard]] std::size_t rank() const noexcept { return basis_.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::vector<RationalVector> &basis() const noexcept {
        return basis_;
    }

  private:
    struct Reduced {
        RationalVector remainder;
        RationalVector coeffs; // over basis_
    };
    [[nodiscard]] Reduced reduce(const RationalVector &v) const;

    std::size_t dim_;
    std::vector<RationalVector> basis_;
    std::vector<RationalVector> echelon_;
    std::vector<std::size_t> pivot_;
    std::vector<RationalVector> combo_; // echelon_[i] = sum_b combo_[i][b] basis_[b]
};

/// Rank over Q of a list of rows.
std::size_t rational_rank(const std::vector<RationalVector> &rows);

} // namespace scarkit
