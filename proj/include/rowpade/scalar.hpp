/*
   Copyright 2026 The rowpade authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ROWPADE_SCALAR_HPP
#define ROWPADE_SCALAR_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace rowpade {

// Arbitrary-precision real, dynamic precision, no expression templates.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Working-precision settings shared by every scalar created while it is
/// active. Precision is realized through the thread-default precision of the
/// underlying mpfr backend, so each worker thread must activate the context
/// before computing.
struct PrecisionContext {
    unsigned significand_bits = 512;

    PrecisionContext() = default;
    explicit PrecisionContext(unsigned bits) : significand_bits(bits) {
        if (bits < 64) throw std::invalid_argument("PrecisionContext: significand_bits must be >= 64");
    }

    /// Threshold for "is zero" decisions, relative to the current magnitude
    /// scale: 2^(-significand_bits/2).
    Real zero_tolerance() const {
        Real t = 1;
        return ldexp(t, -static_cast<int>(significand_bits / 2));
    }

    /// Machine epsilon at this precision, 2^(-significand_bits).
    Real eps() const {
        Real t = 1;
        return ldexp(t, -static_cast<int>(significand_bits));
    }

    unsigned decimal_digits() const {
        return static_cast<unsigned>(significand_bits * 0.30103) + 2;
    }

    /// Make this precision the thread default. Call once per thread before
    /// creating scalars.
    void activate() const { Real::default_precision(decimal_digits()); }
};

/// Complex scalar over Real. All operations must produce finite results; a
/// non-finite value indicates a usage error (division by zero, pole hit) and
/// is reported by check_finite at the call sites that can produce one.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(double r) : re(r), im(0) {}
    Complex(double r, double i) : re(r), im(i) {}
    Complex(int r) : re(r), im(0) {}

    Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
    Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    Complex& operator/=(const Complex& o);
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

inline Complex conj(const Complex& a) { return Complex(a.re, -a.im); }
inline Real norm_sq(const Complex& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Complex& a) {
    using boost::multiprecision::sqrt;
    return sqrt(norm_sq(a));
}

inline Complex& Complex::operator/=(const Complex& o) {
    Real d = norm_sq(o);
    if (d == 0) throw std::domain_error("Complex: division by zero");
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
}
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }

inline bool is_finite(const Complex& a) {
    return boost::multiprecision::isfinite(a.re) && boost::multiprecision::isfinite(a.im);
}

inline void check_finite(const Complex& a, const char* where) {
    if (!is_finite(a)) throw std::domain_error(std::string("non-finite value in ") + where);
}

/// e^{i*angle} at working precision.
inline Complex unit_circle_point(const Real& angle) {
    return Complex(cos(angle), sin(angle));
}

inline Real pi_value() {
    using boost::multiprecision::atan;
    return 4 * atan(Real(1));
}

/// Integer power, n >= 0.
inline Complex pow_int(const Complex& base, long n) {
    Complex acc(1), b = base;
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

inline std::string to_string(const Real& x, unsigned digits) {
    return x.str(digits, std::ios_base::scientific);
}

}  // namespace rowpade

#endif
