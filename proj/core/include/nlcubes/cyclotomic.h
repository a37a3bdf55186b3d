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

#ifndef NLCUBES_CYCLOTOMIC_H
#define NLCUBES_CYCLOTOMIC_H

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace nlcubes {

/// Coefficients of the L-th cyclotomic polynomial, lowest degree first.
/// The polynomial is monic of degree phi(L). Results are cached per order.
const std::vector<int64_t> &cyclotomic_polynomial(int order);

/// Euler's totient.
int euler_phi(int n);

/// An element of the ring Z[w], w = exp(2 pi i / L).
///
/// Stored as the integer coefficients of w^0 .. w^{phi(L)-1} after reduction
/// modulo the L-th cyclotomic polynomial, so the representation is unique and
/// `is_zero()` is an exact test. Binary operations between different orders
/// lift both operands to the lcm of the orders.
///
/// Arithmetic is on int64 coefficients with overflow detection; an overflow
/// throws std::overflow_error rather than wrapping.
class CycNum {
   public:
    CycNum();
    explicit CycNum(int order);
    CycNum(int order, int64_t integer);

    /// Builds from an arbitrary-length coefficient vector of w^0, w^1, ...
    /// (exponents taken mod L) and reduces it.
    static CycNum from_coefficients(int order, std::span<const int64_t> coeffs);

    /// c * w^exponent, exponent taken mod L.
    static CycNum root_power(int order, int64_t exponent, int64_t c = 1);

    int order() const { return order_; }
    const std::vector<int64_t> &coefficients() const { return coeffs_; }

    bool is_zero() const;

    /// The same value expressed over a multiple of the current order.
    CycNum lifted(int new_order) const;

    /// Complex conjugate (w^j -> w^{L-j}).
    CycNum conj() const;

    CycNum operator-() const;
    CycNum &operator+=(const CycNum &other);
    CycNum &operator-=(const CycNum &other);
    CycNum &operator*=(const CycNum &other);
    CycNum &operator*=(int64_t scalar);

    friend CycNum operator+(CycNum a, const CycNum &b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum &b) { return a -= b; }
    friend CycNum operator*(const CycNum &a, const CycNum &b);
    friend CycNum operator*(CycNum a, int64_t s) { return a *= s; }

    /// Exact value equality (orders are reconciled first).
    bool operator==(const CycNum &other) const;

    /// gcd of the absolute coefficient values; 0 for the zero element.
    int64_t content() const;

    /// Divides every coefficient by `divisor`. Throws std::domain_error if
    /// the division is not exact.
    CycNum &divide_exact(int64_t divisor);

    /// Integer value if the number lies in Z, otherwise nullopt-like false.
    bool is_integer(int64_t *value = nullptr) const;

    std::complex<double> to_complex() const;

    /// Human-readable form, e.g. "2 - w12^3".
    std::string str() const;

   private:
    int order_;
    std::vector<int64_t> coeffs_;
};

std::ostream &operator<<(std::ostream &out, const CycNum &value);

}  // namespace nlcubes

#endif
