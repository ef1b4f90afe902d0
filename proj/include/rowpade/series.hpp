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

#ifndef ROWPADE_SERIES_HPP
#define ROWPADE_SERIES_HPP

#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rowpade/polynomial.hpp"

namespace rowpade {

/// Lazy, cached stream of Taylor coefficients. The producer must be a
/// deterministic map n -> phi_n; cache growth is serialized internally, reads
/// of already-cached prefixes are safe concurrently.
class CoefficientSeries {
  public:
    CoefficientSeries() = default;
    explicit CoefficientSeries(std::function<Complex(std::size_t)> producer)
        : state_(std::make_shared<State>(std::move(producer))) {}

    Complex at(std::size_t n) const {
        if (!state_) throw std::logic_error("CoefficientSeries: empty");
        std::lock_guard<std::mutex> lock(state_->mutex);
        while (state_->cache.size() <= n) state_->cache.push_back(state_->producer(state_->cache.size()));
        return state_->cache[n];
    }

    std::vector<Complex> prefix(std::size_t count) const {
        std::vector<Complex> out(count);
        for (std::size_t i = 0; i < count; ++i) out[i] = at(i);
        return out;
    }

  private:
    struct State {
        explicit State(std::function<Complex(std::size_t)> p) : producer(std::move(p)) {}
        std::function<Complex(std::size_t)> producer;
        std::vector<Complex> cache;
        std::mutex mutex;
    };
    std::shared_ptr<State> state_;
};

/// sum_{j=1..tau} coeffs[j-1] / (z - location)^j, coeffs.back() != 0.
struct PrincipalPart {
    Complex location;
    std::vector<Complex> coeffs;  // c_1 .. c_tau

    unsigned order() const { return static_cast<unsigned>(coeffs.size()); }
};

enum class TailKind { polynomial, power_series_with_radius, lacunary_factorial };

/// One entire (or disk-analytic) summand that is not a rational principal
/// part. "polynomial" tails are absorbed into the model's polynomial part at
/// construction; the remaining kinds act as atoms: two atoms are the same
/// function iff they compare equal coefficientwise, and distinct atoms are
/// treated as linearly independent over the rational functions.
struct EntireTail {
    TailKind kind = TailKind::polynomial;
    std::vector<Complex> data;  // polynomial / power-series coefficients
    Real analyticity_radius = std::numeric_limits<double>::infinity();

    static EntireTail lacunary() {
        EntireTail t;
        t.kind = TailKind::lacunary_factorial;
        t.analyticity_radius = 1;
        return t;
    }
    static EntireTail polynomial_tail(std::vector<Complex> coeffs) {
        EntireTail t;
        t.kind = TailKind::polynomial;
        t.data = std::move(coeffs);
        return t;
    }
    static EntireTail power_series(std::vector<Complex> coeffs, Real radius) {
        EntireTail t;
        t.kind = TailKind::power_series_with_radius;
        t.data = std::move(coeffs);
        t.analyticity_radius = std::move(radius);
        return t;
    }

    Complex coefficient(std::size_t n) const {
        switch (kind) {
            case TailKind::lacunary_factorial: {
                // 1 at the factorial indices 1, 2, 6, 24, ..., 0 elsewhere
                if (n == 0) return Complex(0);
                unsigned long long f = 1;
                for (unsigned long long k = 1; f < n; ++k) f *= k;
                return Complex(f == n ? 1 : 0);
            }
            default:
                return n < data.size() ? data[n] : Complex(0);
        }
    }
};

inline bool tails_equal(const EntireTail& a, const EntireTail& b, const PrecisionContext& ctx) {
    if (a.kind != b.kind) return false;
    if (a.kind == TailKind::lacunary_factorial) return true;
    if (a.data.size() != b.data.size()) return false;
    Real tol = ctx.zero_tolerance();
    for (std::size_t i = 0; i < a.data.size(); ++i)
        if (abs(a.data[i] - b.data[i]) > tol * (1 + abs(a.data[i]))) return false;
    return a.analyticity_radius == b.analyticity_radius;
}

/// multiplier(z) * atom(z); the multiplier arises from polynomial
/// combinations and from the z^j factors of the associated system.
struct TailTerm {
    Polynomial multiplier;
    EntireTail atom;  // never TailKind::polynomial
};

/// Structural description of one component f_k: listed poles with principal
/// parts, a free polynomial part, and polynomially-multiplied entire-tail
/// atoms with known analyticity radii.
struct MeromorphicModel {
    std::vector<PrincipalPart> principal_parts;
    Polynomial poly_part;
    std::vector<TailTerm> tail_terms;
};

struct SystemModel {
    std::vector<MeromorphicModel> components;
    std::vector<unsigned> m;  // multi-index, all entries >= 1

    unsigned total_m() const {
        unsigned s = 0;
        for (auto v : m) s += v;
        return s;
    }
};

namespace detail {

inline void add_principal(std::vector<PrincipalPart>& parts, const Complex& location,
                          const std::vector<Complex>& coeffs, const PrecisionContext& ctx) {
    Real tol = ctx.zero_tolerance();
    for (auto& p : parts) {
        if (abs(p.location - location) <= tol * (1 + abs(location))) {
            if (p.coeffs.size() < coeffs.size()) p.coeffs.resize(coeffs.size(), Complex(0));
            for (std::size_t j = 0; j < coeffs.size(); ++j) p.coeffs[j] += coeffs[j];
            return;
        }
    }
    PrincipalPart np;
    np.location = location;
    np.coeffs = coeffs;
    parts.push_back(std::move(np));
}

inline void trim_principal(std::vector<PrincipalPart>& parts, const PrecisionContext& ctx) {
    Real tol = ctx.zero_tolerance();
    std::vector<PrincipalPart> out;
    for (auto& p : parts) {
        Real scale = 0;
        for (const auto& c : p.coeffs) scale = (std::max)(scale, abs(c));
        if (scale == 0) continue;
        while (!p.coeffs.empty() && abs(p.coeffs.back()) <= tol * scale) p.coeffs.pop_back();
        if (!p.coeffs.empty()) out.push_back(std::move(p));
    }
    parts = std::move(out);
}

}  // namespace detail

/// Canonical form: zero principal parts and zero tail multipliers removed.
inline MeromorphicModel model_normalized(MeromorphicModel m, const PrecisionContext& ctx) {
    detail::trim_principal(m.principal_parts, ctx);
    m.poly_part = trimmed(m.poly_part, ctx);
    std::vector<TailTerm> tt;
    for (auto& t : m.tail_terms) {
        t.multiplier = trimmed(t.multiplier, ctx);
        if (t.multiplier.is_zero()) continue;
        bool merged = false;
        for (auto& u : tt) {
            if (tails_equal(u.atom, t.atom, ctx)) {
                u.multiplier = trimmed(poly_add(u.multiplier, t.multiplier), ctx);
                merged = true;
                break;
            }
        }
        if (!merged) tt.push_back(std::move(t));
    }
    std::vector<TailTerm> keep;
    for (auto& t : tt)
        if (!t.multiplier.is_zero()) keep.push_back(std::move(t));
    m.tail_terms = std::move(keep);
    return m;
}

inline MeromorphicModel model_add(const MeromorphicModel& a, const MeromorphicModel& b,
                                  const PrecisionContext& ctx) {
    MeromorphicModel r = a;
    for (const auto& p : b.principal_parts) detail::add_principal(r.principal_parts, p.location, p.coeffs, ctx);
    r.poly_part = poly_add(r.poly_part, b.poly_part);
    for (const auto& t : b.tail_terms) r.tail_terms.push_back(t);
    return model_normalized(std::move(r), ctx);
}

/// p(z) * model, realized exactly: the principal part of p * c_j/(z-xi)^j is
/// read off the expansion of p in powers of (z - xi); leftover nonnegative
/// powers join the polynomial part.
inline MeromorphicModel model_mul_poly(const MeromorphicModel& m, const Polynomial& p,
                                       const PrecisionContext& ctx) {
    MeromorphicModel r;
    r.poly_part = poly_mul(m.poly_part, p);
    for (const auto& t : m.tail_terms) r.tail_terms.push_back({poly_mul(t.multiplier, p), t.atom});
    for (const auto& pp : m.principal_parts) {
        std::vector<Complex> b = poly_taylor_shift(p, pp.location);  // p = sum b_i (z-xi)^i
        unsigned tau = pp.order();
        std::vector<Complex> new_pp(tau, Complex(0));
        for (unsigned jp = 1; jp <= tau; ++jp)
            for (unsigned j = jp; j <= tau; ++j)
                if (j - jp < b.size()) new_pp[jp - 1] += b[j - jp] * pp.coeffs[j - 1];
        detail::add_principal(r.principal_parts, pp.location, new_pp, ctx);
        // polynomial remainder: terms (z-xi)^t, t >= 0
        int max_t = static_cast<int>(b.size()) - 1 - 1;  // i up to deg p, j >= 1
        if (max_t >= 0) {
            std::vector<Complex> shifted(static_cast<std::size_t>(max_t) + 1, Complex(0));
            for (unsigned j = 1; j <= tau; ++j)
                for (std::size_t i = j; i < b.size(); ++i) shifted[i - j] += b[i] * pp.coeffs[j - 1];
            // expand sum shifted[t] (z-xi)^t back to the standard basis
            Polynomial acc;
            for (std::size_t t = shifted.size(); t-- > 0;) {
                acc = poly_mul(acc, Polynomial({-pp.location, Complex(1)}));
                acc = poly_add(acc, Polynomial({shifted[t]}));
            }
            r.poly_part = poly_add(r.poly_part, acc);
        }
    }
    return model_normalized(std::move(r), ctx);
}

inline MeromorphicModel model_scale(const MeromorphicModel& m, const Complex& s,
                                    const PrecisionContext& ctx) {
    return model_mul_poly(m, Polynomial({s}), ctx);
}

struct Singularity {
    Complex location;
    unsigned order;
};

/// Pole list (normalized model) sorted by ascending modulus.
inline std::vector<Singularity> model_poles(const MeromorphicModel& m) {
    std::vector<Singularity> s;
    for (const auto& p : m.principal_parts) s.push_back({p.location, p.order()});
    std::sort(s.begin(), s.end(), [](const Singularity& a, const Singularity& b) {
        Real ma = norm_sq(a.location), mb = norm_sq(b.location);
        if (ma != mb) return ma < mb;
        if (a.location.re != b.location.re) return a.location.re < b.location.re;
        return a.location.im < b.location.im;
    });
    return s;
}

/// Smallest natural-boundary radius among active tail atoms; +inf when the
/// non-polynomial tail is absent.
inline Real model_tail_radius(const MeromorphicModel& m) {
    Real r = std::numeric_limits<double>::infinity();
    for (const auto& t : m.tail_terms) r = (std::min)(r, t.atom.analyticity_radius);
    return r;
}

/// Exact Taylor coefficients at the origin. Errors out when a pole sits at 0.
inline CoefficientSeries taylor_coefficients(const MeromorphicModel& model_in,
                                             const PrecisionContext& ctx) {
    auto model = std::make_shared<MeromorphicModel>(model_normalized(model_in, ctx));
    for (const auto& p : model->principal_parts)
        if (abs(p.location) <= ctx.zero_tolerance())
            throw std::domain_error("taylor_coefficients: pole at the origin");
    return CoefficientSeries([model](std::size_t n) {
        Complex phi = model->poly_part.coeff(n);
        // c_j/(z-xi)^j contributes c_j (-1)^j C(n+j-1, j-1) xi^(-n-j)
        for (const auto& p : model->principal_parts) {
            Complex xi_inv = Complex(1) / p.location;
            Complex xi_pow = pow_int(xi_inv, static_cast<long>(n) + 1);
            Real binom = 1;  // C(n+j-1, j-1), updated over j
            Complex sign(1);
            for (unsigned j = 1; j <= p.order(); ++j) {
                sign = -sign;
                xi_pow *= xi_inv;
                if (j > 1) binom = binom * Real(static_cast<unsigned long>(n) + j - 1) / Real(j - 1);
                phi += p.coeffs[j - 1] * sign * Complex(binom) * (xi_pow * p.location);
            }
        }
        for (const auto& t : model->tail_terms) {
            // convolution of the multiplier with the atom coefficients
            std::size_t dmax = static_cast<std::size_t>(std::max(0, t.multiplier.degree()));
            for (std::size_t i = 0; i <= dmax && i <= n; ++i)
                phi += t.multiplier.coeff(i) * t.atom.coefficient(n - i);
        }
        check_finite(phi, "taylor_coefficients");
        return phi;
    });
}

/// Exact radius of convergence of the model's expansion at 0.
inline Real radius_R0_exact(const MeromorphicModel& m_in, const PrecisionContext& ctx) {
    MeromorphicModel m = model_normalized(m_in, ctx);
    Real r = model_tail_radius(m);
    for (const auto& p : m.principal_parts) r = (std::min)(r, abs(p.location));
    return r;
}

/// 1 / (max over the trailing `window` coefficients of |phi_n|^(1/n)), a
/// limsup proxy; `upto` is the last index sampled.
inline Real radius_R0(const CoefficientSeries& s, std::size_t upto, std::size_t window,
                      const PrecisionContext& /*ctx*/) {
    if (window < 8) throw std::invalid_argument("radius_R0: window must be >= 8");
    if (upto + 1 < window) throw std::invalid_argument("radius_R0: not enough coefficients");
    using boost::multiprecision::pow;
    Real best = 0;
    for (std::size_t n = upto + 1 - window; n <= upto; ++n) {
        if (n == 0) continue;
        Real a = abs(s.at(n));
        if (a == 0) continue;
        best = (std::max)(best, pow(a, Real(1) / Real(static_cast<unsigned long>(n))));
    }
    if (best == 0) throw std::domain_error("radius_R0: all sampled coefficients are zero");
    return 1 / best;
}

/// Radius of the largest disk centered at 0 in which the model is
/// meromorphic with at most m poles (counting multiplicity); +inf when the
/// pole budget is never exceeded and the tail is entire.
inline Real disk_radii_Rm(const MeromorphicModel& model_in, unsigned m, const PrecisionContext& ctx) {
    MeromorphicModel model = model_normalized(model_in, ctx);
    Real cap = model_tail_radius(model);
    auto poles = model_poles(model);
    unsigned cumulative = 0;
    std::size_t i = 0;
    Real tol = ctx.zero_tolerance();
    while (i < poles.size()) {
        Real mod = abs(poles[i].location);
        if (mod >= cap) break;
        unsigned here = 0;
        std::size_t j = i;
        while (j < poles.size() && abs(abs(poles[j].location) - mod) <= tol * (1 + mod)) {
            here += poles[j].order;
            ++j;
        }
        if (cumulative + here > m) return mod;
        cumulative += here;
        i = j;
    }
    return cap;
}

/// f-bar = (f_1, z f_1, ..., z^{m_1-1} f_1, f_2, ...) with multi-index all
/// ones; shares poles, radii, denominators, and system poles with (f, m).
inline SystemModel associated_system(const SystemModel& sys, const PrecisionContext& ctx) {
    SystemModel out;
    for (std::size_t k = 0; k < sys.components.size(); ++k) {
        for (unsigned j = 0; j < sys.m[k]; ++j) {
            out.components.push_back(model_mul_poly(sys.components[k], poly_monomial(j), ctx));
            out.m.push_back(1);
        }
    }
    return out;
}

/// Evaluate the model at a point; lacunary atoms are summed until the next
/// factorial power drops the term below 2^-(2*significand_bits) at |z| < 1.
/// Evaluation on or beyond a tail's natural boundary is an error.
inline Complex model_eval(const MeromorphicModel& m, const Complex& z, const PrecisionContext& ctx) {
    Complex v = poly_eval(m.poly_part, z);
    for (const auto& p : m.principal_parts) {
        Complex diff = z - p.location;
        if (norm_sq(diff) == 0) throw std::domain_error("model_eval: evaluation at a pole");
        Complex inv = Complex(1) / diff;
        Complex powv = inv;
        for (unsigned j = 1; j <= p.order(); ++j) {
            v += p.coeffs[j - 1] * powv;
            powv *= inv;
        }
    }
    for (const auto& t : m.tail_terms) {
        Complex mult = poly_eval(t.multiplier, z);
        Complex tail(0);
        if (t.atom.kind == TailKind::lacunary_factorial) {
            Real az = abs(z);
            if (az >= 1) throw std::domain_error("model_eval: lacunary tail evaluated at |z| >= 1");
            using boost::multiprecision::log;
            Real log_az = log(az);
            Real cutoff = -Real(2 * ctx.significand_bits) * log(Real(2));
            unsigned long long f = 1;
            for (unsigned long long k = 1;; ++k) {
                f *= k;  // f = k!, exponents 1, 2, 6, 24, ...
                if (Real(f) * log_az < cutoff) break;
                tail += pow_int(z, static_cast<long>(f));
                if (k > 25) break;  // factorial overflow guard; unreachable at sane precision
            }
        } else {
            for (std::size_t i = 0; i < t.atom.data.size(); ++i) tail += t.atom.data[i] * pow_int(z, static_cast<long>(i));
        }
        v += mult * tail;
    }
    check_finite(v, "model_eval");
    return v;
}

}  // namespace rowpade

#endif
