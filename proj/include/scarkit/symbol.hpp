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

// Observables on R^{2d}: polynomials in (x, xi) of total degree <= 8 plus
// finite combinations of Weyl-Heisenberg characters e^{i sigma(z, w)},
// sigma((x, xi), (y, eta)) = xi . y - x . eta.

#include "scarkit/phase_point.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace scarkit {

using Complex = std::complex<double>;

inline constexpr int kMaxSymbolDegree = 8;

/// Exponents (a_1..a_d, b_1..b_d) of x^a xi^b.
using Exponents = std::vector<std::uint8_t>;

struct Character {
    Complex weight;
    /// w = (w_x, w_xi), length 2d.
    std::vector<double> w;
};

class Symbol {
  public:
    explicit Symbol(std::size_t d) : dim_(d) {}

    static Symbol constant(std::size_t d, Complex c);
    static Symbol position(std::size_t d, std::size_t j);
    static Symbol momentum(std::size_t d, std::size_t j);
    /// H_j = (x_j^2 + xi_j^2) / 2
    static Symbol mode_energy(std::size_t d, std::size_t j);
    /// sum_j speeds_j H_j
    static Symbol quadratic(std::span<const double> speeds);
    static Symbol monomial(Exponents exps, Complex coeff = 1.0);
    static Symbol character(std::vector<double> w, Complex weight = 1.0);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const std::map<Exponents, Complex> &terms() const noexcept {
        return terms_;
    }
    [[nodiscard]] const std::vector<Character> &characters() const noexcept {
        return characters_;
    }
    [[nodiscard]] bool is_polynomial() const noexcept { return characters_.empty(); }
    /// Total degree of the polynomial part (0 when empty).
    [[nodiscard]] int degree() const;

    [[nodiscard]] Complex evaluate(const PhasePoint &z) const;

    /// a o R where R rotates mode j as z_j -> e^{-i theta_j} z_j.
    [[nodiscard]] Symbol rotated(std::span<const double> theta) const;

    Symbol &operator+=(const Symbol &other);
    Symbol &operator*=(Complex c);
    /// Polynomial product; characters are rejected.
    Symbol &operator*=(const Symbol &other);

    friend Symbol operator+(Symbol a, const Symbol &b) { return a += b; }
    friend Symbol operator-(Symbol a, const Symbol &b) {
        Symbol nb = b;
        nb *= -1.0;
        return a += nb;
    }
    friend Symbol operator*(Symbol a, Complex c) { return a *= c; }
    friend Symbol operator*(Complex c, Symbol a) { return a *= c; }
    friend Symbol operator*(Symbol a, const Symbol &b) { return a *= b; }

  private:
    void add_term(const Exponents &e, Complex c);
    void check_dim(const Symbol &other) const;

    std::size_t dim_;
    std::map<Exponents, Complex> terms_;
    std::vector<Character> characters_;
};

} // namespace scarkit
