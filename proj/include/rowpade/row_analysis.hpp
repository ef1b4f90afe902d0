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

#ifndef ROWPADE_ROW_ANALYSIS_HPP
#define ROWPADE_ROW_ANALYSIS_HPP

#include <atomic>
#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include "rowpade/approximants.hpp"
#include "rowpade/system_poles.hpp"

namespace rowpade {

struct SweepOptions {
    bool l1_normalize = false;          // report l1-normalized records alongside monic q
    Polynomial q_reference;             // compare against this when nonzero...
    bool reference_from_last = false;   // ...or against the final record's q
    std::vector<Complex> eval_points;   // evaluate q and derivatives here
    unsigned eval_max_derivative = 0;   // j = 0..this
    unsigned jobs = 1;
};

struct SweepResult {
    std::size_t n_min = 0;
    std::size_t n_max = 0;
    std::vector<ApproximantRecord> records;  // index i corresponds to n_min + i
    std::vector<Real> reference_norms;       // ||q_reference - q_n|| (coefficientwise sup)
    // evaluations[p][j][i] = q_n^{(j)} at eval_points[p] for record i
    std::vector<std::vector<std::vector<Complex>>> evaluations;
    Polynomial q_reference;

    const ApproximantRecord& at(std::size_t n) const { return records.at(n - n_min); }
};

/// Solve the row n = n_min..n_max; record solves run on `options.jobs`
/// threads, analysis data is filled single-threaded afterwards.
inline SweepResult sweep(const SystemModel& sys, std::size_t n_min, std::size_t n_max,
                         const SweepOptions& options, const PrecisionContext& ctx) {
    unsigned max_mk = 0;
    for (auto v : sys.m) max_mk = (std::max)(max_mk, v);
    if (n_min < sys.total_m() || n_min > n_max)
        throw std::invalid_argument("sweep: need |m| <= n_min <= n_max");

    std::vector<CoefficientSeries> fs;
    for (const auto& c : sys.components) fs.push_back(taylor_coefficients(c, ctx));
    for (auto& s : fs) s.prefix(n_max + 1);  // warm the caches on this thread

    SweepResult out;
    out.n_min = n_min;
    out.n_max = n_max;
    out.records.resize(n_max - n_min + 1);

    unsigned jobs = (std::max)(1u, options.jobs);
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(jobs);
    auto worker = [&](unsigned tid) {
        ctx.activate();
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= out.records.size()) return;
            std::size_t n = n_min + i;
            try {
                out.records[i] = hermite_pade(fs, sys.m, n, ctx);
            } catch (const std::exception& e) {
                errors[tid] = "n=" + std::to_string(n) + ": " + e.what();
                return;
            }
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error("sweep: " + e);

    out.q_reference = options.q_reference;
    if (options.reference_from_last) out.q_reference = out.records.back().q;
    if (!out.q_reference.is_zero())
        for (const auto& rec : out.records)
            out.reference_norms.push_back(coefficient_norm(poly_sub(out.q_reference, rec.q)));

    out.evaluations.resize(options.eval_points.size());
    for (std::size_t p = 0; p < options.eval_points.size(); ++p) {
        out.evaluations[p].resize(options.eval_max_derivative + 1);
        for (unsigned j = 0; j <= options.eval_max_derivative; ++j)
            for (const auto& rec : out.records)
                out.evaluations[p][j].push_back(poly_derivative_eval(rec.q, options.eval_points[p], j));
    }
    if (options.l1_normalize)
        for (auto& rec : out.records) rec = l1_scaled(std::move(rec));
    return out;
}

struct RateEstimate {
    Real fitted_rate = 0;        // exp(least-squares slope of log value vs n)
    Real limsup_proxy = 0;       // max over the window of value^(1/n)
    std::size_t window_lo = 0;
    std::size_t window_hi = 0;
    Real residual = 0;           // rms log-residual of the fit
    std::size_t used = 0;        // points entering the fit
    std::size_t censored = 0;    // points dropped at the noise floor
    std::string method = "log-least-squares+nth-root-max";
};

/// Geometric-rate estimator: least-squares on log|v_n| plus the n-th-root
/// maximum as a limsup proxy. Values below the noise floor
/// 2^-significand_bits * (window max) * n are censored.
inline RateEstimate fit_geometric_rate(const std::vector<Real>& values, std::size_t n_of_first,
                                       std::size_t window_lo, std::size_t window_hi,
                                       const PrecisionContext& ctx) {
    if (window_lo < n_of_first || window_hi >= n_of_first + values.size() || window_lo > window_hi)
        throw std::invalid_argument("fit_geometric_rate: window out of range");
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    using boost::multiprecision::pow;
    using boost::multiprecision::sqrt;

    Real vmax = 0;
    for (std::size_t n = window_lo; n <= window_hi; ++n)
        vmax = (std::max)(vmax, values[n - n_of_first]);
    Real eps = ctx.eps();

    RateEstimate est;
    est.window_lo = window_lo;
    est.window_hi = window_hi;
    std::vector<Real> xs, ys;
    for (std::size_t n = window_lo; n <= window_hi; ++n) {
        const Real& v = values[n - n_of_first];
        Real floor_n = eps * vmax * Real(static_cast<unsigned long>(n));
        if (v <= floor_n) {
            ++est.censored;
            continue;
        }
        xs.push_back(Real(static_cast<unsigned long>(n)));
        ys.push_back(log(v));
        if (n > 0)
            est.limsup_proxy =
                (std::max)(est.limsup_proxy, pow(v, Real(1) / Real(static_cast<unsigned long>(n))));
    }
    est.used = xs.size();
    if (est.used < 6) throw std::domain_error("fit_geometric_rate: fewer than 6 usable values");

    Real sx = 0, sy = 0, sxx = 0, sxy = 0, cnt = Real(static_cast<unsigned long>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    Real denom = cnt * sxx - sx * sx;
    Real slope = (cnt * sxy - sx * sy) / denom;
    Real intercept = (sy - slope * sx) / cnt;
    est.fitted_rate = exp(slope);
    Real ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        Real r = ys[i] - (slope * xs[i] + intercept);
        ss += r * r;
    }
    est.residual = sqrt(ss / cnt);
    return est;
}

struct PoleEstimateCluster {
    Complex center;
    unsigned multiplicity = 1;
    std::vector<std::vector<Complex>> member_tracks;  // per merged track, per window record
    Real drift = 0;                                   // max member distance to center
};

namespace detail {

/// Exact minimal-total-cost assignment (Hungarian algorithm with
/// potentials) on a square double matrix; returns column of each row.
inline std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    std::size_t n = cost.size();
    const double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0), v(n + 1, 0);
    std::vector<std::size_t> way(n + 1, 0), match(n + 1, n);  // match[col] = row
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> minv(n + 1, kInf);
        std::vector<bool> used(n + 1, false);
        std::size_t j0 = n;  // virtual column holding current row
        match[j0] = i;
        do {
            used[j0] = true;
            std::size_t i0 = match[j0], j1 = n;
            double delta = kInf;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                double cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != n);
        do {
            std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0 != n);
    }
    std::vector<std::size_t> row_to_col(n);
    for (std::size_t j = 0; j < n; ++j)
        if (match[j] < n) row_to_col[match[j]] = j;
    return row_to_col;
}

}  // namespace detail

/// Track denominator zeros across the trailing window by minimal-distance
/// assignment between consecutive records, then merge tracks whose trailing
/// means coincide within the merge radius into multiplicity counts. Records
/// whose reduced degree differs from the window's final degree are skipped.
inline std::vector<PoleEstimateCluster> cluster_zeros(const SweepResult& sweep_result,
                                                      std::size_t trailing_window,
                                                      const PrecisionContext& ctx) {
    if (sweep_result.records.empty() || trailing_window == 0) return {};
    std::size_t count = (std::min)(trailing_window, sweep_result.records.size());
    std::size_t begin = sweep_result.records.size() - count;

    int deg = sweep_result.records.back().q.degree();
    if (deg < 1) return {};
    std::size_t m = static_cast<std::size_t>(deg);

    std::vector<std::vector<Complex>> tracks;  // [track][step]
    for (std::size_t i = begin; i < sweep_result.records.size(); ++i) {
        const auto& rec = sweep_result.records[i];
        if (rec.q.degree() != deg) continue;
        std::vector<Complex> zs = roots(rec.q, ctx);
        if (tracks.empty()) {
            tracks.assign(m, {});
            for (std::size_t t = 0; t < m; ++t) tracks[t].push_back(zs[t]);
            continue;
        }
        std::vector<std::vector<double>> cost(m, std::vector<double>(m));
        for (std::size_t t = 0; t < m; ++t)
            for (std::size_t j = 0; j < m; ++j)
                cost[t][j] = static_cast<double>(abs(tracks[t].back() - zs[j]));
        std::vector<std::size_t> asg = detail::min_cost_assignment(cost);
        for (std::size_t t = 0; t < m; ++t) tracks[t].push_back(zs[asg[t]]);
    }
    if (tracks.empty()) return {};

    std::vector<Complex> centers;
    for (const auto& tr : tracks) {
        Complex c(0);
        for (const auto& z : tr) c += z;
        centers.push_back(c * Complex(Real(1) / Real(static_cast<unsigned long>(tr.size()))));
    }
    // merge radius: modest multiple of the largest in-track drift
    Real merge_radius = 0;
    for (std::size_t t = 0; t < tracks.size(); ++t)
        for (const auto& z : tracks[t]) merge_radius = (std::max)(merge_radius, abs(z - centers[t]));
    merge_radius = (std::max)(merge_radius * 4, Real(ctx.zero_tolerance()));

    std::vector<PoleEstimateCluster> clusters;
    std::vector<bool> taken(tracks.size(), false);
    for (std::size_t t = 0; t < tracks.size(); ++t) {
        if (taken[t]) continue;
        PoleEstimateCluster cl;
        std::vector<std::size_t> members{t};
        taken[t] = true;
        for (std::size_t u = t + 1; u < tracks.size(); ++u)
            if (!taken[u] && abs(centers[u] - centers[t]) <= merge_radius) {
                members.push_back(u);
                taken[u] = true;
            }
        Complex c(0);
        std::size_t total = 0;
        for (auto idx : members)
            for (const auto& z : tracks[idx]) {
                c += z;
                ++total;
            }
        cl.center = c * Complex(Real(1) / Real(static_cast<unsigned long>(total)));
        cl.multiplicity = static_cast<unsigned>(members.size());
        for (auto idx : members) {
            cl.member_tracks.push_back(tracks[idx]);
            for (const auto& z : tracks[idx]) cl.drift = (std::max)(cl.drift, abs(z - cl.center));
        }
        clusters.push_back(std::move(cl));
    }
    std::sort(clusters.begin(), clusters.end(), [](const PoleEstimateCluster& a, const PoleEstimateCluster& b) {
        Real ma = norm_sq(a.center), mb = norm_sq(b.center);
        if (ma != mb) return ma < mb;
        if (a.center.re != b.center.re) return a.center.re < b.center.re;
        return a.center.im != b.center.im ? a.center.im < b.center.im : false;
    });
    return clusters;
}

struct DerivativeRates {
    std::vector<RateEstimate> per_order;  // j = 0..s_bar
    Real max_fitted = 0;
    Real max_limsup = 0;
};

/// Rates of |q_n^(j)(xi)| for j = 0..s_bar over the window; the max over j
/// estimates |xi| / R_{xi, s_bar+1} for a system pole xi of order > s_bar.
inline DerivativeRates derivative_rates(const SweepResult& sweep_result, const Complex& xi,
                                        unsigned s_bar, std::size_t window_lo, std::size_t window_hi,
                                        const PrecisionContext& ctx) {
    if (norm_sq(xi) == 0) throw std::invalid_argument("derivative_rates: xi must be nonzero");
    DerivativeRates out;
    for (unsigned j = 0; j <= s_bar; ++j) {
        std::vector<Real> vals;
        for (const auto& rec : sweep_result.records)
            vals.push_back(abs(poly_derivative_eval(rec.q, xi, j)));
        RateEstimate est = fit_geometric_rate(vals, sweep_result.n_min, window_lo, window_hi, ctx);
        out.max_fitted = (std::max)(out.max_fitted, est.fitted_rate);
        out.max_limsup = (std::max)(out.max_limsup, est.limsup_proxy);
        out.per_order.push_back(std::move(est));
    }
    return out;
}

/// Sup-norm error ||f_k - p_k/q|| sampled on the circle |z| = radius, per
/// record, fitted to a geometric rate. The circle must keep the stated
/// margin from every pole of every component.
inline RateEstimate convergence_on_circle(const SweepResult& sweep_result, const SystemModel& sys,
                                          std::size_t k, const Real& radius, std::size_t samples,
                                          std::size_t window_lo, std::size_t window_hi,
                                          const PrecisionContext& ctx, const Real& margin = Real(1) / 100) {
    if (k >= sys.components.size()) throw std::invalid_argument("convergence_on_circle: bad component");
    if (samples < 16) throw std::invalid_argument("convergence_on_circle: need >= 16 samples");
    MeromorphicModel comp = model_normalized(sys.components[k], ctx);
    for (const auto& c : sys.components)
        for (const auto& p : model_poles(model_normalized(c, ctx)))
            if (abs(abs(p.location) - radius) <= margin)
                throw std::domain_error("convergence_on_circle: pole within margin of the circle");

    std::vector<Complex> pts;
    std::vector<Complex> fvals;
    Real two_pi = 2 * pi_value();
    for (std::size_t i = 0; i < samples; ++i) {
        Complex z = unit_circle_point(two_pi * Real(static_cast<unsigned long>(i)) /
                                      Real(static_cast<unsigned long>(samples))) *
                    Complex(radius);
        pts.push_back(z);
        fvals.push_back(model_eval(comp, z, ctx));
    }
    std::vector<Real> errs;
    for (const auto& rec : sweep_result.records) {
        Real worst = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Complex qv = poly_eval(rec.q, pts[i]);
            if (norm_sq(qv) == 0) {
                worst = std::numeric_limits<double>::infinity();
                break;
            }
            worst = (std::max)(worst, abs(fvals[i] - poly_eval(rec.p[k], pts[i]) / qv));
        }
        errs.push_back(worst);
    }
    return fit_geometric_rate(errs, sweep_result.n_min, window_lo, window_hi, ctx);
}

struct InverseDiagnosis {
    std::vector<DefectDiagnostics> per_n;  // aligned with the record range
    Real s_estimate = 0;                   // liminf proxy: min record-min over trailing window
    Real g_estimate = 0;                   // limsup proxy: max record-max over trailing window
    bool steps_hold_eventually = false;    // both step conditions over the trailing window
    bool lemma_holds_eventually = false;
    bool r0_positive = false;              // step i + S > 0
    bool r0_finite = false;                // step ii + G < inf + deg q >= 1 infinitely often
    std::string conclusion;
    std::size_t n0 = 0;  // start of the trailing window used
};

/// Evaluate the inverse-theory hypotheses on a sequence of incomplete
/// interpolants: step conditions and the zero-modulus spread over a
/// trailing window, yielding a consistency statement about R_0.
inline InverseDiagnosis inverse_diagnosis(const std::vector<ApproximantRecord>& records, unsigned m,
                                          unsigned m_star, std::size_t trailing_window,
                                          const PrecisionContext& ctx) {
    InverseDiagnosis out;
    const DefectDiagnostics* prev = nullptr;
    for (const auto& rec : records) {
        out.per_n.push_back(defect_diagnostics(rec, m, m_star, ctx, prev));
        prev = &out.per_n.back();
    }
    if (out.per_n.empty()) {
        out.conclusion = "no data";
        return out;
    }
    std::size_t count = (std::min)(trailing_window, out.per_n.size());
    std::size_t begin = out.per_n.size() - count;
    out.n0 = begin;
    Real inf = std::numeric_limits<double>::infinity();
    Real s = inf, g = 0;
    bool steps = true, lemma = count > 1, any_deg = false;
    for (std::size_t i = begin; i < out.per_n.size(); ++i) {
        const auto& d = out.per_n[i];
        if (i > begin || i > 0) {
            steps = steps && d.step_i && d.step_ii;
            if (i > begin) lemma = lemma && d.lemma_sufficient;
        }
        if (d.m_n >= 1) {
            any_deg = true;
            s = (std::min)(s, d.s_value);
            g = (std::max)(g, d.g_value);
        }
    }
    out.s_estimate = any_deg ? s : Real(0);
    out.g_estimate = any_deg ? g : inf;
    out.steps_hold_eventually = steps;
    out.lemma_holds_eventually = lemma;
    out.r0_positive = steps && out.s_estimate > 0;
    out.r0_finite = steps && any_deg && out.g_estimate < inf;
    if (out.r0_positive && out.r0_finite)
        out.conclusion = "0 < R_0 < infinity; R_0 consistent with [S, G]";
    else if (out.r0_positive)
        out.conclusion = "R_0 > 0";
    else if (out.r0_finite)
        out.conclusion = "R_0 < infinity (or polynomial)";
    else
        out.conclusion = "no evidence";
    return out;
}

}  // namespace rowpade

#endif
