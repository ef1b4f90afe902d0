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

#ifndef ROWPADE_ROOTS_HPP
#define ROWPADE_ROOTS_HPP

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "rowpade/polynomial.hpp"

namespace rowpade {

struct RootCluster {
    Complex center;
    unsigned multiplicity;
};

namespace detail {

/// Aberth-Ehrlich simultaneous iteration on a monic polynomial with
/// p(0) != 0. Initial points sit on the Cauchy root bound circle with an
/// irrational-ish angular offset to break symmetry.
inline std::vector<Complex> aberth(const Polynomial& p, const PrecisionContext& ctx) {
    const int deg = p.degree();
    Polynomial dp = poly_derivative(p);
    Real bound = 0;
    for (int i = 0; i < deg; ++i) bound = (std::max)(bound, abs(p.coeffs[static_cast<std::size_t>(i)]));
    bound = 1 + bound;  // monic: all roots inside |z| <= 1 + max|a_i|

    std::vector<Complex> z(static_cast<std::size_t>(deg));
    Real two_pi = 2 * pi_value();
    for (int k = 0; k < deg; ++k) {
        Real angle = two_pi * (Real(k) + Real("0.3618")) / Real(deg);
        Complex u = unit_circle_point(angle);
        z[static_cast<std::size_t>(k)] = Complex(u.re * bound, u.im * bound);
    }

    const Real step_tol = ctx.eps() * 32;
    const unsigned max_iter = 2000;
    for (unsigned iter = 0; iter < max_iter; ++iter) {
        Real worst = 0;
        for (int k = 0; k < deg; ++k) {
            auto ku = static_cast<std::size_t>(k);
            Complex pk = poly_eval(p, z[ku]);
            Complex dk = poly_eval(dp, z[ku]);
            Complex w;
            if (norm_sq(dk) == 0) {
                // stationary point hit exactly; nudge
                w = Complex(step_tol, step_tol);
            } else {
                w = pk / dk;
            }
            Complex s(0);
            for (int j = 0; j < deg; ++j) {
                if (j == k) continue;
                Complex diff = z[ku] - z[static_cast<std::size_t>(j)];
                if (norm_sq(diff) == 0) diff = Complex(step_tol, 0);
                s += Complex(1) / diff;
            }
            Complex denom = Complex(1) - w * s;
            Complex corr = (norm_sq(denom) == 0) ? w : w / denom;
            z[ku] -= corr;
            worst = (std::max)(worst, abs(corr) / (1 + abs(z[ku])));
        }
        if (worst < step_tol) return z;
    }
    throw std::runtime_error("roots: Aberth iteration did not converge");
}

}  // namespace detail

/// All roots of p with repetition; degree >= 1 required. Roots at the origin
/// are split off exactly via the valuation. Residuals satisfy
/// |p(root)| <= ~deg * eps * sum_i |a_i| |root|^i for simple roots; repeated
/// roots are accurate to roughly eps^(1/multiplicity) and are grouped by the
/// clustering radius max(1,|z|) * 2^(-significand_bits/16).
inline std::vector<Complex> roots(const Polynomial& p_in, const PrecisionContext& ctx) {
    Polynomial p = trimmed(p_in, ctx);
    if (p.degree() < 1) throw std::domain_error("roots: degree must be >= 1");
    std::size_t val = valuation_at_zero(p, ctx);
    std::vector<Complex> out(val, Complex(0));
    p = poly_shift_down(p, val);
    if (p.degree() >= 1) {
        Polynomial monic = poly_monic(p, ctx);
        auto rest = detail::aberth(monic, ctx);
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        Real ma = norm_sq(a), mb = norm_sq(b);
        if (ma != mb) return ma < mb;
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });
    return out;
}

/// Cluster a root list into centers with multiplicity estimates. The cluster
/// radius is derived from the zero tolerance; roots of genuine multiplicity
/// up to 8 land within it at the default precision.
inline std::vector<RootCluster> cluster_roots(const std::vector<Complex>& rts,
                                              const PrecisionContext& ctx) {
    Real radius_unit = ldexp(Real(1), -static_cast<int>(ctx.significand_bits / 16));
    std::vector<RootCluster> clusters;
    for (const auto& r : rts) {
        bool placed = false;
        for (auto& c : clusters) {
            Real rad = radius_unit * (std::max)(Real(1), abs(c.center));
            if (abs(r - c.center) <= rad) {
                // running mean keeps the center near the cluster barycenter
                Real w = Real(c.multiplicity);
                c.center = Complex((c.center.re * w + r.re) / (w + 1),
                                   (c.center.im * w + r.im) / (w + 1));
                ++c.multiplicity;
                placed = true;
                break;
            }
        }
        if (!placed) clusters.push_back({r, 1u});
    }
    return clusters;
}

/// roots() followed by cluster_roots().
inline std::vector<RootCluster> roots_with_multiplicity(const Polynomial& p,
                                                        const PrecisionContext& ctx) {
    return cluster_roots(roots(p, ctx), ctx);
}

}  // namespace rowpade

#endif
