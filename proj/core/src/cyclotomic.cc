// Copyright 2026 The nlcubes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nlcubes/cyclotomic.h"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nlcubes {

namespace {

int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw std::overflow_error("CycNum coefficient overflow");
    }
    return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw std::overflow_error("CycNum coefficient overflow");
    }
    return r;
}

// Remainder of `poly` modulo a monic polynomial, in place; result has
// length deg(monic).
void reduce_by_monic(std::vector<int64_t> &poly, const std::vector<int64_t> &monic) {
    size_t deg = monic.size() - 1;
    for (size_t top = poly.size(); top-- > deg;) {
        int64_t lead = poly[top];
        if (lead == 0) {
            continue;
        }
        size_t shift = top - deg;
        for (size_t i = 0; i <= deg; ++i) {
            poly[shift + i] = checked_add(poly[shift + i], -checked_mul(lead, monic[i]));
        }
    }
    poly.resize(deg);
}

// Exact quotient of `num` by a monic divisor; throws if not exact.
std::vector<int64_t> divide_monic(std::vector<int64_t> num, const std::vector<int64_t> &monic) {
    size_t deg = monic.size() - 1;
    if (num.size() < monic.size()) {
        throw std::logic_error("divide_monic: dividend degree too small");
    }
    std::vector<int64_t> quot(num.size() - deg, 0);
    for (size_t top = num.size(); top-- > deg;) {
        int64_t lead = num[top];
        size_t shift = top - deg;
        quot[shift] = lead;
        if (lead == 0) {
            continue;
        }
        for (size_t i = 0; i <= deg; ++i) {
            num[shift + i] -= lead * monic[i];
        }
    }
    for (size_t i = 0; i < deg; ++i) {
        if (num[i] != 0) {
            throw std::logic_error("divide_monic: inexact division");
        }
    }
    return quot;
}

void check_order(int order) {
    if (order < 1) {
        throw std::invalid_argument("CycNum order must be positive, got " + std::to_string(order));
    }
}

// Folds exponents mod L then reduces mod Phi_L.
std::vector<int64_t> normalize(int order, std::span<const int64_t> raw) {
    std::vector<int64_t> folded(static_cast<size_t>(order), 0);
    for (size_t i = 0; i < raw.size(); ++i) {
        size_t slot = i % static_cast<size_t>(order);
        folded[slot] = checked_add(folded[slot], raw[i]);
    }
    reduce_by_monic(folded, cyclotomic_polynomial(order));
    return folded;
}

}  // namespace

int euler_phi(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            result -= result / p;
        }
    }
    if (n > 1) {
        result -= result / n;
    }
    return result;
}

const std::vector<int64_t> &cyclotomic_polynomial(int order) {
    check_order(order);
    static std::mutex mu;
    static std::map<int, std::vector<int64_t>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(order);
        if (it != cache.end()) {
            return it->second;
        }
    }
    // x^L - 1 divided by Phi_d for every proper divisor d.
    std::vector<int64_t> poly(static_cast<size_t>(order) + 1, 0);
    poly[0] = -1;
    poly[static_cast<size_t>(order)] = 1;
    for (int d = 1; d < order; ++d) {
        if (order % d == 0) {
            poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(order, std::move(poly)).first->second;
}

CycNum::CycNum() : CycNum(1) {
}

CycNum::CycNum(int order) : order_(order) {
    check_order(order);
    coeffs_.assign(static_cast<size_t>(euler_phi(order)), 0);
}

CycNum::CycNum(int order, int64_t integer) : CycNum(order) {
    coeffs_[0] = integer;
}

CycNum CycNum::from_coefficients(int order, std::span<const int64_t> coeffs) {
    check_order(order);
    CycNum out(order);
    out.coeffs_ = normalize(order, coeffs);
    return out;
}

CycNum CycNum::root_power(int order, int64_t exponent, int64_t c) {
    check_order(order);
    int64_t e = exponent % order;
    if (e < 0) {
        e += order;
    }
    std::vector<int64_t> raw(static_cast<size_t>(e) + 1, 0);
    raw[static_cast<size_t>(e)] = c;
    return from_coefficients(order, raw);
}

bool CycNum::is_zero() const {
    for (int64_t c : coeffs_) {
        if (c != 0) {
            return false;
        }
    }
    return true;
}

CycNum CycNum::lifted(int new_order) const {
    check_order(new_order);
    if (new_order == order_) {
        return *this;
    }
    if (new_order % order_ != 0) {
        throw std::invalid_argument("CycNum::lifted: target order must be a multiple");
    }
    int step = new_order / order_;
    std::vector<int64_t> raw(static_cast<size_t>(new_order), 0);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        raw[j * static_cast<size_t>(step)] = coeffs_[j];
    }
    return from_coefficients(new_order, raw);
}

CycNum CycNum::conj() const {
    std::vector<int64_t> raw(static_cast<size_t>(order_), 0);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        size_t target = (static_cast<size_t>(order_) - j) % static_cast<size_t>(order_);
        raw[target] = coeffs_[j];
    }
    return from_coefficients(order_, raw);
}

CycNum CycNum::operator-() const {
    CycNum out = *this;
    for (int64_t &c : out.coeffs_) {
        c = checked_mul(c, -1);
    }
    return out;
}

CycNum &CycNum::operator+=(const CycNum &other) {
    if (other.order_ != order_) {
        int common = std::lcm(order_, other.order_);
        *this = lifted(common);
        return *this += other.lifted(common);
    }
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] = checked_add(coeffs_[i], other.coeffs_[i]);
    }
    return *this;
}

CycNum &CycNum::operator-=(const CycNum &other) {
    return *this += -other;
}

CycNum operator*(const CycNum &a, const CycNum &b) {
    if (a.order_ != b.order_) {
        int common = std::lcm(a.order_, b.order_);
        return a.lifted(common) * b.lifted(common);
    }
    size_t n = a.coeffs_.size();
    if (n == 1) {
        return CycNum(a.order_, checked_mul(a.coeffs_[0], b.coeffs_[0]));
    }
    std::vector<int64_t> prod(2 * n - 1, 0);
    for (size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i] == 0) {
            continue;
        }
        for (size_t j = 0; j < n; ++j) {
            prod[i + j] = checked_add(prod[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    return CycNum::from_coefficients(a.order_, prod);
}

CycNum &CycNum::operator*=(const CycNum &other) {
    *this = *this * other;
    return *this;
}

CycNum &CycNum::operator*=(int64_t scalar) {
    for (int64_t &c : coeffs_) {
        c = checked_mul(c, scalar);
    }
    return *this;
}

bool CycNum::operator==(const CycNum &other) const {
    if (order_ == other.order_) {
        return coeffs_ == other.coeffs_;
    }
    int common = std::lcm(order_, other.order_);
    return lifted(common).coeffs_ == other.lifted(common).coeffs_;
}

int64_t CycNum::content() const {
    int64_t g = 0;
    for (int64_t c : coeffs_) {
        g = std::gcd(g, c < 0 ? -c : c);
    }
    return g;
}

CycNum &CycNum::divide_exact(int64_t divisor) {
    if (divisor == 0) {
        throw std::domain_error("CycNum::divide_exact by zero");
    }
    for (int64_t &c : coeffs_) {
        if (c % divisor != 0) {
            throw std::domain_error("CycNum::divide_exact: inexact division");
        }
        c /= divisor;
    }
    return *this;
}

bool CycNum::is_integer(int64_t *value) const {
    for (size_t i = 1; i < coeffs_.size(); ++i) {
        if (coeffs_[i] != 0) {
            return false;
        }
    }
    if (value != nullptr) {
        *value = coeffs_[0];
    }
    return true;
}

std::complex<double> CycNum::to_complex() const {
    std::complex<double> sum = 0;
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        if (coeffs_[j] == 0) {
            continue;
        }
        double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / order_;
        sum += static_cast<double>(coeffs_[j]) * std::polar(1.0, angle);
    }
    return sum;
}

std::string CycNum::str() const {
    std::ostringstream out;
    bool first = true;
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        int64_t c = coeffs_[j];
        if (c == 0) {
            continue;
        }
        if (first) {
            if (c < 0) {
                out << "-";
            }
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        int64_t mag = c < 0 ? -c : c;
        if (j == 0) {
            out << mag;
        } else {
            if (mag != 1) {
                out << mag << "*";
            }
            out << "w" << order_;
            if (j != 1) {
                out << "^" << j;
            }
        }
        first = false;
    }
    if (first) {
        out << "0";
    }
    return out.str();
}

std::ostream &operator<<(std::ostream &out, const CycNum &value) {
    return out << value.str();
}

}  // namespace nlcubes
