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

#ifndef ROWPADE_APPROXIMANTS_HPP
#define ROWPADE_APPROXIMANTS_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rowpade/linalg.hpp"
#include "rowpade/roots.hpp"
#include "rowpade/series.hpp"

namespace rowpade {

/// Simultaneous rational interpolant at z^n level for a vector of series.
///
/// For each record: q_full is the solved denominator before stripping the
/// common zero at the origin, q the stripped (and monic, when the leading
/// coefficient is significant) denominator actually paired with the
/// numerators p[k]; lambda is the multiplicity of the stripped origin zero;
/// null_dimension reports solution-space degeneracy of the linear system.
struct ApproximantRecord {
    std::size_t n = 0;
    std::vector<unsigned> m;
    Polynomial q_full;
    Polynomial q;
    std::vector<Polynomial> p;
    unsigned lambda = 0;
    std::size_t null_dimension = 1;
    Real sigma_max = 0;
};

namespace detail {

/// Row for "coefficient of z^pow in Q(z) * f(z)" as a linear functional of
/// the unknown Q-coefficients q_0..q_dq.
inline Vector convolution_row(const std::vector<Complex>& f, std::size_t pow, std::size_t dq) {
    Vector row(dq + 1, Complex(0));
    for (std::size_t i = 0; i <= dq && i <= pow; ++i) row[i] = f[pow - i];
    return row;
}

inline ApproximantRecord finish_record(std::size_t n, std::vector<unsigned> m,
                                       const std::vector<std::vector<Complex>>& coeffs,
                                       Vector q_coeffs, std::size_t null_dim, Real sigma_max,
                                       const PrecisionContext& ctx) {
    ApproximantRecord rec;
    rec.n = n;
    rec.m = std::move(m);
    rec.null_dimension = null_dim;
    rec.sigma_max = std::move(sigma_max);
    rec.q_full = trimmed(Polynomial{std::move(q_coeffs)}, ctx);
    if (rec.q_full.is_zero()) throw std::runtime_error("approximant: denominator vanished");

    rec.lambda = static_cast<unsigned>(valuation_at_zero(rec.q_full, ctx));
    rec.q = poly_shift_down(rec.q_full, rec.lambda);
    Complex lead = rec.q.coeffs.back();
    rec.q = poly_monic(rec.q, ctx);
    Complex lead_inv = Complex(1) / lead;  // numerators must track the monic scaling of q

    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        // numerator: truncation of q * f_k to degree n - m_k (before the
        // origin shift the common factor z^lambda cancels on both sides)
        long cut = static_cast<long>(n) - static_cast<long>(rec.m[k]);
        Polynomial prod;
        prod.coeffs.assign(cut >= 0 ? static_cast<std::size_t>(cut) + 1 + rec.lambda : 0, Complex(0));
        for (std::size_t i = 0; i < prod.coeffs.size(); ++i) {
            Complex s(0);
            for (std::size_t j = 0; j <= i && j < rec.q_full.coeffs.size(); ++j)
                s += rec.q_full.coeffs[j] * coeffs[k][i - j];
            prod.coeffs[i] = s;
        }
        rec.p.push_back(poly_scale(trimmed(poly_shift_down(prod, rec.lambda), ctx), lead_inv));
    }
    return rec;
}

}  // namespace detail

/// Denominator Q_n (deg <= |m|, monic after stripping the origin zero) with
/// coefficients of z^(n-m_k+1)..z^n vanishing in Q_n f_k for every k, plus
/// the matching numerators. Needs series coefficients up to index n.
inline ApproximantRecord hermite_pade(const std::vector<CoefficientSeries>& f,
                                      const std::vector<unsigned>& m, std::size_t n,
                                      const PrecisionContext& ctx) {
    if (f.size() != m.size() || f.empty()) throw std::invalid_argument("hermite_pade: size mismatch");
    unsigned total = 0;
    for (auto v : m) {
        if (v == 0) throw std::invalid_argument("hermite_pade: multi-index entries must be >= 1");
        total += v;
    }
    if (n < total) throw std::invalid_argument("hermite_pade: need n >= |m|");

    std::vector<std::vector<Complex>> coeffs;
    for (const auto& s : f) coeffs.push_back(s.prefix(n + 1));

    Matrix a;
    for (std::size_t k = 0; k < f.size(); ++k)
        for (std::size_t pow = n - m[k] + 1; pow <= n; ++pow)
            a.push_back(detail::convolution_row(coeffs[k], pow, total));

    NullSpaceResult ns = null_space_vector(a, ctx);
    return detail::finish_record(n, m, coeffs, ns.vector, ns.null_dimension, ns.sigma_max, ctx);
}

/// Classical one-series case. m = 0 degenerates to the Taylor section.
inline ApproximantRecord pade(const CoefficientSeries& f, unsigned m, std::size_t n,
                              const PrecisionContext& ctx) {
    if (m == 0) {
        ApproximantRecord rec;
        rec.n = n;
        rec.m = {0};
        rec.q_full = poly_one();
        rec.q = poly_one();
        rec.p.push_back(trimmed(Polynomial{f.prefix(n + 1)}, ctx));
        return rec;
    }
    return hermite_pade({f}, {m}, n, ctx);
}

enum class IncompleteSelection { minimal_norm, from_hermite_pade };

/// Incomplete interpolant: deg Q <= m but only the coefficients of
/// z^(n-m_star+1)..z^n of Q f are required to vanish (m_star <= m). The
/// solution space has dimension >= m - m_star + 1; `selection` picks the
/// representative: minimal_norm takes the smallest singular direction of the
/// underdetermined system, from_hermite_pade embeds a k-th component
/// Hermite-Pade denominator of a supplied system.
struct IncompletePadeOptions {
    IncompleteSelection selection = IncompleteSelection::minimal_norm;
    const SystemModel* host_system = nullptr;  // for from_hermite_pade
    std::size_t host_component = 0;
    const PrecisionContext* host_ctx = nullptr;
};

inline ApproximantRecord incomplete_pade(const CoefficientSeries& f, unsigned m, unsigned m_star,
                                         std::size_t n, const PrecisionContext& ctx,
                                         const IncompletePadeOptions& opts = {}) {
    if (m_star == 0 || m_star > m) throw std::invalid_argument("incomplete_pade: need 1 <= m_star <= m");
    if (n < m) throw std::invalid_argument("incomplete_pade: need n >= m");
    std::vector<std::vector<Complex>> coeffs{f.prefix(n + 1)};

    if (opts.selection == IncompleteSelection::from_hermite_pade) {
        if (!opts.host_system) throw std::invalid_argument("incomplete_pade: host system required");
        std::vector<CoefficientSeries> fs;
        for (const auto& c : opts.host_system->components) fs.push_back(taylor_coefficients(c, ctx));
        ApproximantRecord host = hermite_pade(fs, opts.host_system->m, n, ctx);
        return detail::finish_record(n, {m}, coeffs, host.q_full.coeffs, host.null_dimension,
                                     host.sigma_max, ctx);
    }

    Matrix a;
    for (std::size_t pow = n - m_star + 1; pow <= n; ++pow)
        a.push_back(detail::convolution_row(coeffs[0], pow, m));
    NullSpaceResult ns = null_space_vector(a, ctx);
    return detail::finish_record(n, {m}, coeffs, ns.vector, ns.null_dimension, ns.sigma_max, ctx);
}

/// Rescale a whole record so the full denominator has unit l1 coefficient
/// norm; numerators follow so the represented rationals are unchanged.
inline ApproximantRecord l1_scaled(ApproximantRecord rec) {
    Real s = coefficient_norm_l1(rec.q_full);
    if (s == 0) throw std::domain_error("l1_scaled: zero denominator");
    Complex inv(1 / s);
    rec.q_full = poly_scale(rec.q_full, inv);
    rec.q = poly_scale(rec.q, inv);
    for (auto& p : rec.p) p = poly_scale(p, inv);
    return rec;
}

/// Denominator coefficients lambda_0..lambda_|m| with sum |lambda_k| = 1 —
/// the normalization under which denominator convergence is measured.
struct NormalizedDenominator {
    std::vector<Complex> lambda;  // length |m| + 1
    Complex leading;              // lambda_|m|
};

inline NormalizedDenominator normalize_l1(const ApproximantRecord& rec) {
    unsigned total = 0;
    for (auto v : rec.m) total += v;
    Real s = coefficient_norm_l1(rec.q_full);
    if (s == 0) throw std::domain_error("normalize_l1: zero denominator");
    NormalizedDenominator out;
    out.lambda.resize(total + 1, Complex(0));
    Complex inv(1 / s);
    for (std::size_t k = 0; k < rec.q_full.coeffs.size() && k <= total; ++k)
        out.lambda[k] = rec.q_full.coeffs[k] * inv;
    out.leading = out.lambda[total];
    return out;
}

/// Diagnostics attached to one incomplete interpolant per Definition-style
/// bookkeeping: lambda_n = origin-zero order of Q, m_n = degree of the
/// reduced denominator (here: after the origin strip; no further numerator
/// cancellation is searched), tau_n = min(n - m_star - lambda_n - deg p,
/// m - lambda_n - m_n).
struct DefectDiagnostics {
    unsigned lambda_n = 0;
    unsigned m_n = 0;
    long tau_n = 0;
    Real s_value = 0;  // min zero modulus of the reduced denominator (0 if none)
    Real g_value = 0;  // max zero modulus (+inf if none)
    // step conditions w.r.t. the previous record (true when no previous):
    bool step_i = true;   // |lambda_n - lambda_{n-1}| <= m_star - 1
    bool step_ii = true;  // |(m_n+lambda_n+tau_n) - previous sum| <= m_star - 1
    bool lemma_sufficient = false;  // min(m_n + tau_n, previous m_n + tau_n) >= m - m_star + 1
};

namespace detail {

inline std::vector<Real> sorted_zero_moduli(const Polynomial& q, const PrecisionContext& ctx) {
    std::vector<Real> mods;
    for (const auto& z : roots(q, ctx)) mods.push_back(abs(z));
    std::sort(mods.begin(), mods.end());
    return mods;
}

}  // namespace detail

/// Per-record extremes of the reduced-denominator zero moduli; the
/// sequence-level S (liminf of the min) and G (limsup of the max) aggregate
/// these across a sweep. Zero-free denominators give S=0, G=+inf markers
/// and are skipped by the aggregation.
inline void zero_spread(const Polynomial& q_reduced, const PrecisionContext& ctx, Real& s_out,
                        Real& g_out) {
    std::vector<Real> mods = detail::sorted_zero_moduli(q_reduced, ctx);
    if (mods.empty()) {
        s_out = 0;
        g_out = std::numeric_limits<double>::infinity();
        return;
    }
    s_out = mods.front();
    g_out = mods.back();
}

inline DefectDiagnostics defect_diagnostics(const ApproximantRecord& rec, unsigned m,
                                            unsigned m_star, const PrecisionContext& ctx,
                                            const DefectDiagnostics* previous = nullptr) {
    DefectDiagnostics d;
    d.lambda_n = rec.lambda;
    int deg_q = rec.q.degree();
    d.m_n = deg_q < 0 ? 0 : static_cast<unsigned>(deg_q);
    // defect of the order conditions: scalar records use the supplied
    // m_star; full system records have m_k conditions per component, so the
    // binding defect is the minimum over components
    long left = std::numeric_limits<long>::max();
    for (std::size_t k = 0; k < rec.p.size(); ++k) {
        long stars = rec.p.size() == 1 ? static_cast<long>(m_star) : static_cast<long>(rec.m[k]);
        long deg_p = rec.p[k].degree();
        left = (std::min)(left, static_cast<long>(rec.n) - stars - static_cast<long>(d.lambda_n) -
                                    (deg_p < 0 ? 0 : deg_p));
    }
    if (rec.p.empty()) left = static_cast<long>(rec.n) - static_cast<long>(m_star) -
                              static_cast<long>(d.lambda_n);
    long right = static_cast<long>(m) - static_cast<long>(d.lambda_n) - static_cast<long>(d.m_n);
    d.tau_n = (std::min)(left, right);
    zero_spread(rec.q, ctx, d.s_value, d.g_value);
    long gap = static_cast<long>(m) - static_cast<long>(m_star);
    if (previous) {
        long a = static_cast<long>(d.m_n) + d.tau_n;
        long b = static_cast<long>(previous->m_n) + previous->tau_n;
        d.lemma_sufficient = (std::min)(a, b) >= gap + 1;
        long bound = static_cast<long>(m_star) - 1;
        long dl = static_cast<long>(d.lambda_n) - static_cast<long>(previous->lambda_n);
        d.step_i = (dl < 0 ? -dl : dl) <= bound;
        long sum_now = static_cast<long>(d.m_n) + static_cast<long>(d.lambda_n) + d.tau_n;
        long sum_prev = static_cast<long>(previous->m_n) + static_cast<long>(previous->lambda_n) +
                        previous->tau_n;
        long ds = sum_now - sum_prev;
        d.step_ii = (ds < 0 ? -ds : ds) <= bound;
    }
    return d;
}

}  // namespace rowpade

#endif
