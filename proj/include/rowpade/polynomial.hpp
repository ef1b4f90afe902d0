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

#ifndef ROWPADE_POLYNOMIAL_HPP
#define ROWPADE_POLYNOMIAL_HPP

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rowpade/scalar.hpp"

namespace rowpade {

/// Dense complex polynomial, coefficients in ascending degree order.
/// The zero polynomial has an empty coefficient vector.
struct Polynomial {
    std::vector<Complex> coeffs;

    Polynomial() = default;
    explicit Polynomial(std::vector<Complex> c) : coeffs(std::move(c)) {}

    bool is_zero() const { return coeffs.empty(); }
    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    const Complex& operator[](std::size_t i) const { return coeffs[i]; }
    Complex& operator[](std::size_t i) { return coeffs[i]; }

    Complex coeff(std::size_t i) const { return i < coeffs.size() ? coeffs[i] : Complex(0); }
};

inline Polynomial poly_one() { return Polynomial({Complex(1)}); }

/// z^k
inline Polynomial poly_monomial(std::size_t k, Complex c = Complex(1)) {
    std::vector<Complex> v(k + 1, Complex(0));
    v[k] = c;
    return Polynomial(std::move(v));
}

/// max |coeff| (the coefficient norm of Theorem A, realized as l-infinity).
inline Real coefficient_norm(const Polynomial& p) {
    Real m = 0;
    for (const auto& c : p.coeffs) m = (std::max)(m, abs(c));
    return m;
}

inline Real coefficient_norm_l1(const Polynomial& p) {
    Real s = 0;
    for (const auto& c : p.coeffs) s += abs(c);
    return s;
}

/// Drop trailing coefficients below zero_tolerance * max|coeff|.
inline Polynomial trimmed(Polynomial p, const PrecisionContext& ctx) {
    Real scale = coefficient_norm(p);
    if (scale == 0) return Polynomial();
    Real cut = scale * ctx.zero_tolerance();
    while (!p.coeffs.empty() && abs(p.coeffs.back()) <= cut) p.coeffs.pop_back();
    return p;
}

inline Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs.size(), b.coeffs.size()), Complex(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] += b.coeffs[i];
    return Polynomial(std::move(c));
}

inline Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
    std::vector<Complex> c(std::max(a.coeffs.size(), b.coeffs.size()), Complex(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) c[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) c[i] -= b.coeffs[i];
    return Polynomial(std::move(c));
}

inline Polynomial poly_scale(const Polynomial& a, const Complex& s) {
    Polynomial r = a;
    for (auto& c : r.coeffs) c *= s;
    return r;
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Complex> c(a.coeffs.size() + b.coeffs.size() - 1, Complex(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            c[i + j] += a.coeffs[i] * b.coeffs[j];
    return Polynomial(std::move(c));
}

/// Multiply by z^k.
inline Polynomial poly_shift_up(const Polynomial& a, std::size_t k) {
    if (a.is_zero()) return a;
    std::vector<Complex> c(a.coeffs.size() + k, Complex(0));
    std::copy(a.coeffs.begin(), a.coeffs.end(), c.begin() + static_cast<long>(k));
    return Polynomial(std::move(c));
}

/// Exact division by z^k; caller guarantees the low k coefficients vanish
/// (they are dropped regardless).
inline Polynomial poly_shift_down(const Polynomial& a, std::size_t k) {
    if (a.coeffs.size() <= k) return Polynomial();
    return Polynomial(std::vector<Complex>(a.coeffs.begin() + static_cast<long>(k), a.coeffs.end()));
}

/// Keep powers 0..max_degree only.
inline Polynomial poly_truncate(const Polynomial& a, int max_degree) {
    if (max_degree < 0) return Polynomial();
    if (a.degree() <= max_degree) return a;
    return Polynomial(std::vector<Complex>(a.coeffs.begin(), a.coeffs.begin() + max_degree + 1));
}

inline Complex poly_eval(const Polynomial& p, const Complex& z) {
    Complex acc(0);
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline Polynomial poly_derivative(const Polynomial& p) {
    if (p.coeffs.size() <= 1) return Polynomial();
    std::vector<Complex> c(p.coeffs.size() - 1);
    for (std::size_t i = 1; i < p.coeffs.size(); ++i) c[i - 1] = p.coeffs[i] * Complex(Real(static_cast<unsigned>(i)));
    return Polynomial(std::move(c));
}

/// j-th derivative evaluated at z.
inline Complex poly_derivative_eval(const Polynomial& p, const Complex& z, unsigned j) {
    Polynomial q = p;
    for (unsigned i = 0; i < j; ++i) q = poly_derivative(q);
    return poly_eval(q, z);
}

/// Coefficients of p(z) written in powers of (z - xi) (Taylor shift by
/// repeated synthetic division).
inline std::vector<Complex> poly_taylor_shift(const Polynomial& p, const Complex& xi) {
    std::vector<Complex> work = p.coeffs;
    std::size_t n = work.size();
    std::vector<Complex> out(n, Complex(0));
    for (std::size_t k = 0; k < n; ++k) {
        // synthetic division of work by (z - xi); remainder is coefficient k
        for (std::size_t i = n - 1; i > k; --i) work[i - 1] += work[i] * xi;
        out[k] = work[k];
        // quotient occupies indices k+1..n-1 shifted; emulate by leaving work
        // in place and starting the next pass one slot higher
    }
    return out;
}

/// Smallest index with coefficient above the zero threshold.
inline std::size_t valuation_at_zero(const Polynomial& p, const PrecisionContext& ctx) {
    Real scale = coefficient_norm(p);
    if (scale == 0) throw std::domain_error("valuation_at_zero: zero polynomial");
    Real cut = scale * ctx.zero_tolerance();
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        if (abs(p.coeffs[i]) > cut) return i;
    throw std::logic_error("valuation_at_zero: trimming invariant violated");
}

inline Polynomial poly_monic(const Polynomial& p, const PrecisionContext& ctx) {
    Polynomial t = trimmed(p, ctx);
    if (t.is_zero()) throw std::domain_error("poly_monic: zero polynomial");
    Complex lead = t.coeffs.back();
    Polynomial r = poly_scale(t, Complex(1) / lead);
    r.coeffs.back() = Complex(1);
    return r;
}

/// Monic polynomial with the given roots (with repetition).
inline Polynomial poly_from_roots(const std::vector<Complex>& roots) {
    Polynomial p = poly_one();
    for (const auto& r : roots) p = poly_mul(p, Polynomial({-r, Complex(1)}));
    return p;
}

/// Max modulus of `eval` over `samples` equispaced points on the circle of
/// the given radius. A lower approximation of the true sup norm; evaluation
/// failures (e.g. a pole on the circle) propagate to the caller.
inline Real sup_norm_on_circle(const std::function<Complex(const Complex&)>& eval,
                               const Real& radius, unsigned samples) {
    if (samples < 16) throw std::invalid_argument("sup_norm_on_circle: samples must be >= 16");
    if (radius <= 0) throw std::invalid_argument("sup_norm_on_circle: radius must be positive");
    Real two_pi = 2 * pi_value();
    Real best = 0;
    for (unsigned k = 0; k < samples; ++k) {
        Real angle = two_pi * Real(k) / Real(samples);
        Complex z = unit_circle_point(angle);
        z.re *= radius;
        z.im *= radius;
        Complex v = eval(z);
        check_finite(v, "sup_norm_on_circle");
        best = (std::max)(best, abs(v));
    }
    return best;
}

inline Real sup_norm_on_circle(const Polynomial& p, const Real& radius, unsigned samples) {
    return sup_norm_on_circle([&p](const Complex& z) { return poly_eval(p, z); }, radius, samples);
}

}  // namespace rowpade

#endif
