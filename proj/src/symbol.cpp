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

#include "scarkit/symbol.hpp"

#include "scarkit/errors.hpp"

#include <cmath>

namespace scarkit {

Symbol Symbol::constant(std::size_t d, Complex c) {
    Symbol s(d);
    s.add_term(Exponents(2 * d, 0), c);
    return s;
}

Symbol Symbol::position(std::size_t d, std::size_t j) {
    if (j >= d) {
        throw DomainError("mode index out of range");
    }
    Exponents e(2 * d, 0);
    e[j] = 1;
    return monomial(std::move(e));
}

Symbol Symbol::momentum(std::size_t d, std::size_t j) {
    if (j >= d) {
        throw DomainError("mode index out of range");
    }
    Exponents e(2 * d, 0);
    e[d + j] = 1;
    return monomial(std::move(e));
}

Symbol Symbol::mode_energy(std::size_t d, std::size_t j) {
    if (j >= d) {
        throw DomainError("mode index out of range");
    }
    Exponents ex(2 * d, 0);
    Exponents ep(2 * d, 0);
    ex[j] = 2;
    ep[d + j] = 2;
    Symbol s(d);
    s.add_term(ex, 0.5);
    s.add_term(ep, 0.5);
    return s;
}

Symbol Symbol::quadratic(std::span<const double> speeds) {
    const std::size_t d = speeds.size();
    Symbol s(d);
    for (std::size_t j = 0; j < d; ++j) {
        if (speeds[j] != 0.0) {
            s += mode_energy(d, j) * Complex(speeds[j]);
        }
    }
    return s;
}

Symbol Symbol::monomial(Exponents exps, Complex coeff) {
    if (exps.size() % 2 != 0 || exps.empty()) {
        throw DomainError("exponent vector must have even positive length");
    }
    Symbol s(exps.size() / 2);
    s.add_term(exps, coeff);
    if (s.degree() > kMaxSymbolDegree) {
        throw DomainError("polynomial degree exceeds 8");
    }
    return s;
}

Symbol Symbol::character(std::vector<double> w, Complex weight) {
    if (w.size() % 2 != 0 || w.empty()) {
        throw DomainError("character parameter must have even positive length");
    }
    for (double v : w) {
        if (!std::isfinite(v)) {
            throw DomainError("character parameter must be finite");
        }
    }
    Symbol s(w.size() / 2);
    s.characters_.push_back({weight, std::move(w)});
    return s;
}

int Symbol::degree() const {
    int best = 0;
    for (const auto &[e, c] : terms_) {
        int total = 0;
        for (auto v : e) {
            total += v;
        }
        best = std::max(best, total);
    }
    return best;
}

Complex Symbol::evaluate(const PhasePoint &z) const {
    if (z.dim() != dim_) {
        throw DomainError("phase point dimension mismatch");
    }
    Complex sum = 0.0;
    for (const auto &[e, c] : terms_) {
        double m = 1.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            m *= std::pow(z.x[j], e[j]) * std::pow(z.xi[j], e[dim_ + j]);
        }
        sum += c * m;
    }
    for (const auto &ch : characters_) {
        double phase = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            phase += z.xi[j] * ch.w[j] - z.x[j] * ch.w[dim_ + j];
        }
        sum += ch.weight * std::polar(1.0, phase);
    }
    return sum;
}

Symbol Symbol::rotated(std::span<const double> theta) const {
    if (theta.size() != dim_) {
        throw DomainError("rotation angle count mismatch");
    }
    std::vector<Symbol> new_x;
    std::vector<Symbol> new_xi;
    for (std::size_t j = 0; j < dim_; ++j) {
        const double c = std::cos(theta[j]);
        const double s = std::sin(theta[j]);
        new_x.push_back(position(dim_, j) * Complex(c) + momentum(dim_, j) * Complex(s));
        new_xi.push_back(position(dim_, j) * Complex(-s) + momentum(dim_, j) * Complex(c));
    }
    Symbol out(dim_);
    for (const auto &[e, coeff] : terms_) {
        Symbol term = constant(dim_, coeff);
        for (std::size_t j = 0; j < dim_; ++j) {
            for (int p = 0; p < e[j]; ++p) {
                term *= new_x[j];
            }
            for (int p = 0; p < e[dim_ + j]; ++p) {
                term *= new_xi[j];
            }
        }
        out += term;
    }
    // a(Rz) = e^{i sigma(z, R^{-1} w)}
    for (const auto &ch : characters_) {
        std::vector<double> w(2 * dim_);
        for (std::size_t j = 0; j < dim_; ++j) {
            const double c = std::cos(theta[j]);
            const double s = std::sin(theta[j]);
            w[j] = c * ch.w[j] - s * ch.w[dim_ + j];
            w[dim_ + j] = s * ch.w[j] + c * ch.w[dim_ + j];
        }
        out.characters_.push_back({ch.weight, std::move(w)});
    }
    return out;
}

Symbol &Symbol::operator+=(const Symbol &other) {
    check_dim(other);
    for (const auto &[e, c] : other.terms_) {
        add_term(e, c);
    }
    characters_.insert(characters_.end(), other.characters_.begin(),
                       other.characters_.end());
    return *this;
}

Symbol &Symbol::operator*=(Complex c) {
    for (auto &[e, v] : terms_) {
        v *= c;
    }
    for (auto &ch : characters_) {
        ch.weight *= c;
    }
    return *this;
}

Symbol &Symbol::operator*=(const Symbol &other) {
    check_dim(other);
    if (!is_polynomial() || !other.is_polynomial()) {
        throw DomainError("products involving characters are not supported");
    }
    if (degree() + other.degree() > kMaxSymbolDegree) {
        throw DomainError("polynomial degree exceeds 8");
    }
    std::map<Exponents, Complex> product;
    for (const auto &[ea, ca] : terms_) {
        for (const auto &[eb, cb] : other.terms_) {
            Exponents e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) {
                e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
            }
            product[e] += ca * cb;
        }
    }
    terms_ = std::move(product);
    return *this;
}

void Symbol::add_term(const Exponents &e, Complex c) {
    if (e.size() != 2 * dim_) {
        throw DomainError("exponent vector length mismatch");
    }
    terms_[e] += c;
}

void Symbol::check_dim(const Symbol &other) const {
    if (other.dim_ != dim_) {
        throw DomainError("symbol dimension mismatch");
    }
}

} // namespace scarkit
