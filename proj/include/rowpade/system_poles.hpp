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

#ifndef ROWPADE_SYSTEM_POLES_HPP
#define ROWPADE_SYSTEM_POLES_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rowpade/linalg.hpp"
#include "rowpade/series.hpp"

namespace rowpade {

/// Linear parameterization of the combinations sum_k p_k f_k with
/// deg p_k < m_k. Internally the system is replaced by its associated form
/// (f_1, z f_1, ..., z^{m_1-1} f_1, f_2, ...), so a combination is a
/// constant vector c of length |m| and every structural feature of the
/// combined function (principal-part coefficients, tail-atom multipliers)
/// is linear in c.
class CombinationSpace {
  public:
    CombinationSpace(const SystemModel& sys, const PrecisionContext& ctx) : ctx_(&ctx) {
        SystemModel assoc = associated_system(sys, ctx);
        for (auto& c : assoc.components) components_.push_back(model_normalized(std::move(c), ctx));
        dimension_ = components_.size();
        collect_features();
    }

    std::size_t dimension() const { return dimension_; }
    const PrecisionContext& ctx() const { return *ctx_; }

    struct PoleSite {
        Complex location;
        unsigned max_order;  // over all components
    };

    const std::vector<PoleSite>& pole_sites() const { return pole_sites_; }
    const std::vector<EntireTail>& atoms() const { return atoms_; }

    /// Coefficient of order j (1-based) of the principal part at
    /// pole_sites()[site] contributed by component comp.
    Complex principal_coeff(std::size_t site, unsigned j, std::size_t comp) const {
        const auto& model = components_[comp];
        for (const auto& p : model.principal_parts)
            if (abs(p.location - pole_sites_[site].location) <= loc_tol(pole_sites_[site].location))
                return j <= p.order() ? p.coeffs[j - 1] : Complex(0);
        return Complex(0);
    }

    /// Multiplier polynomial of atoms()[a] inside component comp.
    const Polynomial& atom_multiplier(std::size_t a, std::size_t comp) const {
        return atom_multipliers_[a][comp];
    }

    /// Combined structural model for a coefficient vector c.
    MeromorphicModel combine(const Vector& c) const {
        if (c.size() != dimension_) throw std::invalid_argument("combine: bad coefficient vector");
        MeromorphicModel acc;
        for (std::size_t k = 0; k < dimension_; ++k)
            acc = model_add(acc, model_scale(components_[k], c[k], *ctx_), *ctx_);
        return acc;
    }

    struct Requirements {
        // annihilate each pole site with modulus <= kill_radius entirely,
        // except `pinned_site` where orders above pinned_order vanish and
        // the order-`pinned_order` coefficient is set to 1; annihilate each
        // atom with analyticity radius <= kill_radius.
        Real kill_radius;
        std::optional<std::size_t> pinned_site;
        unsigned pinned_order = 0;
    };

    /// Feasibility of the linear (in)homogeneous system expressing the
    /// requirements; returns the solving coefficient vector when feasible.
    std::optional<Vector> solve(const Requirements& req) const {
        Matrix a;
        Vector b;
        Real slack = 1 + req.kill_radius;
        for (std::size_t s = 0; s < pole_sites_.size(); ++s) {
            bool pinned = req.pinned_site && *req.pinned_site == s;
            bool inside = abs(pole_sites_[s].location) <= req.kill_radius + loc_tol(pole_sites_[s].location);
            if (!pinned && !inside) continue;
            unsigned j_top = pole_sites_[s].max_order;
            if (pinned) j_top = (std::max)(j_top, req.pinned_order);
            for (unsigned j = 1; j <= j_top; ++j) {
                bool is_pin = pinned && j == req.pinned_order;
                bool must_vanish = pinned ? j > req.pinned_order : inside;
                if (!is_pin && !must_vanish) continue;
                Vector row(dimension_);
                for (std::size_t k = 0; k < dimension_; ++k) row[k] = principal_coeff(s, j, k);
                a.push_back(std::move(row));
                b.push_back(Complex(is_pin ? 1 : 0));
            }
        }
        for (std::size_t t = 0; t < atoms_.size(); ++t) {
            if (atoms_[t].analyticity_radius > req.kill_radius * (1 + ctx_->zero_tolerance())) continue;
            int dmax = -1;
            for (std::size_t k = 0; k < dimension_; ++k)
                dmax = (std::max)(dmax, atom_multipliers_[t][k].degree());
            for (int pw = 0; pw <= dmax; ++pw) {
                Vector row(dimension_);
                for (std::size_t k = 0; k < dimension_; ++k)
                    row[k] = atom_multipliers_[t][k].coeff(static_cast<std::size_t>(pw));
                a.push_back(std::move(row));
                b.push_back(Complex(0));
            }
        }
        (void)slack;
        if (a.empty()) return Vector(dimension_, Complex(0));
        LinearSolveResult res = solve_affine(a, b, *ctx_);
        if (!res.feasible) return std::nullopt;
        return res.particular;
    }

    /// Requirements for a pole of exact order `order` at site, with
    /// everything of modulus/analyticity radius <= radius annihilated.
    Requirements exact_pole_requirements(std::size_t site, unsigned order, Real radius) const {
        Requirements r;
        r.kill_radius = std::move(radius);
        r.pinned_site = site;
        r.pinned_order = order;
        return r;
    }

  private:
    Real loc_tol(const Complex& z) const { return ctx_->zero_tolerance() * (1 + abs(z)); }

    void collect_features() {
        for (const auto& model : components_) {
            for (const auto& p : model.principal_parts) {
                bool found = false;
                for (auto& site : pole_sites_) {
                    if (abs(site.location - p.location) <= loc_tol(p.location)) {
                        site.max_order = (std::max)(site.max_order, p.order());
                        found = true;
                        break;
                    }
                }
                if (!found) pole_sites_.push_back({p.location, p.order()});
            }
            for (const auto& t : model.tail_terms) {
                bool found = false;
                for (const auto& atom : atoms_)
                    if (tails_equal(atom, t.atom, *ctx_)) {
                        found = true;
                        break;
                    }
                if (!found) atoms_.push_back(t.atom);
            }
        }
        std::sort(pole_sites_.begin(), pole_sites_.end(), [](const PoleSite& x, const PoleSite& y) {
            Real mx = norm_sq(x.location), my = norm_sq(y.location);
            if (mx != my) return mx < my;
            if (x.location.re != y.location.re) return x.location.re < y.location.re;
            return x.location.im < y.location.im;
        });
        atom_multipliers_.assign(atoms_.size(), std::vector<Polynomial>(dimension_));
        for (std::size_t k = 0; k < dimension_; ++k)
            for (const auto& t : components_[k].tail_terms)
                for (std::size_t a = 0; a < atoms_.size(); ++a)
                    if (tails_equal(atoms_[a], t.atom, *ctx_))
                        atom_multipliers_[a][k] = poly_add(atom_multipliers_[a][k], t.multiplier);
    }

    const PrecisionContext* ctx_;
    std::vector<MeromorphicModel> components_;
    std::size_t dimension_ = 0;
    std::vector<PoleSite> pole_sites_;
    std::vector<EntireTail> atoms_;
    std::vector<std::vector<Polynomial>> atom_multipliers_;  // [atom][component]
};

/// Characteristic radius r_{xi,s}: the supremum of R_s(g) over combinations
/// g with a pole of exact order s at xi and no other singularity in
/// |z| <= |xi|. Computed by scanning the outward breakpoints (pole moduli
/// and atom radii beyond |xi|): each feasible level pushes the guaranteed
/// meromorphy radius past the next obstruction; the first infeasible level
/// is the answer. Returns +inf when every obstruction can be cleared.
inline Real characteristic_radius(const CombinationSpace& space, std::size_t site, unsigned order) {
    const auto& sites = space.pole_sites();
    Real base = abs(sites[site].location);
    if (!space.solve(space.exact_pole_requirements(site, order, base)))
        throw std::domain_error("characteristic_radius: no combination with the requested exact order");

    std::vector<Real> breakpoints;
    Real tol = space.ctx().zero_tolerance();
    auto push = [&](const Real& v) {
        if (v <= base * (1 + tol) + tol) return;
        for (const auto& w : breakpoints)
            if (abs(w - v) <= tol * (1 + v)) return;
        breakpoints.push_back(v);
    };
    for (const auto& s : sites) push(abs(s.location));
    for (const auto& atom : space.atoms())
        if (atom.analyticity_radius != std::numeric_limits<double>::infinity())
            push(atom.analyticity_radius);
    std::sort(breakpoints.begin(), breakpoints.end());

    for (const auto& b : breakpoints)
        if (!space.solve(space.exact_pole_requirements(site, order, b))) return b;
    return std::numeric_limits<double>::infinity();
}

struct SystemPoleReport {
    Complex location;
    unsigned order = 0;                  // tau: largest feasible exact order
    std::vector<Real> r_s;               // r_{xi,s}, s = 1..tau
    std::vector<Real> big_r_s;           // R_{xi,s} = min_{l<=s} r_{xi,l}
    Real capacity() const { return big_r_s.empty() ? Real(0) : big_r_s.back(); }  // R_xi
};

struct SystemPoleSet {
    std::vector<SystemPoleReport> poles;  // ascending modulus
    unsigned total_order = 0;             // sum of orders
    unsigned expected_total = 0;          // |m|
    bool complete = false;                // total_order == |m|
};

/// Enumerate the system poles of (f, m) with their orders and radii.
inline SystemPoleSet enumerate_system_poles(const SystemModel& sys, const PrecisionContext& ctx) {
    CombinationSpace space(sys, ctx);
    SystemPoleSet out;
    out.expected_total = sys.total_m();
    const auto& sites = space.pole_sites();
    for (std::size_t s = 0; s < sites.size(); ++s) {
        Real base = abs(sites[s].location);
        unsigned tau = 0;
        while (tau < out.expected_total &&
               space.solve(space.exact_pole_requirements(s, tau + 1, base)))
            ++tau;
        if (tau == 0) continue;
        SystemPoleReport rep;
        rep.location = sites[s].location;
        rep.order = tau;
        Real running = std::numeric_limits<double>::infinity();
        for (unsigned j = 1; j <= tau; ++j) {
            Real r = characteristic_radius(space, s, j);
            running = (std::min)(running, r);
            rep.r_s.push_back(r);
            rep.big_r_s.push_back(running);
        }
        out.total_order += rep.order;
        out.poles.push_back(std::move(rep));
    }
    out.complete = out.total_order == out.expected_total;
    return out;
}

/// Monic polynomial with each system pole as a zero of its order; degree
/// |m| exactly when the set is complete.
inline Polynomial limit_denominator(const SystemPoleSet& set) {
    Polynomial q = poly_one();
    for (const auto& p : set.poles)
        for (unsigned j = 0; j < p.order; ++j) q = poly_mul(q, Polynomial({-p.location, Complex(1)}));
    return q;
}

/// theta = max over system poles of |xi| / R_xi; 0 when there are none.
/// This is the geometric rate governing denominator convergence when the
/// pole set is complete.
inline Real predicted_theta(const SystemPoleSet& set) {
    Real theta = 0;
    for (const auto& p : set.poles) {
        Real cap = p.capacity();
        if (cap == std::numeric_limits<double>::infinity()) continue;
        theta = (std::max)(theta, abs(p.location) / cap);
    }
    return theta;
}

struct IndependenceResult {
    bool independent = true;
    Vector witness;  // nontrivial annihilating coefficients when dependent
};

/// The system is algebraically independent iff no nontrivial combination
/// (over the associated system) is a polynomial: all principal parts and
/// all tail-atom multipliers must be annihilated simultaneously.
inline IndependenceResult algebraically_independent(const SystemModel& sys,
                                                    const PrecisionContext& ctx) {
    CombinationSpace space(sys, ctx);
    Matrix a;
    const auto& sites = space.pole_sites();
    for (std::size_t s = 0; s < sites.size(); ++s)
        for (unsigned j = 1; j <= sites[s].max_order; ++j) {
            Vector row(space.dimension());
            for (std::size_t k = 0; k < space.dimension(); ++k) row[k] = space.principal_coeff(s, j, k);
            a.push_back(std::move(row));
        }
    for (std::size_t t = 0; t < space.atoms().size(); ++t) {
        int dmax = -1;
        for (std::size_t k = 0; k < space.dimension(); ++k)
            dmax = (std::max)(dmax, space.atom_multiplier(t, k).degree());
        for (int pw = 0; pw <= dmax; ++pw) {
            Vector row(space.dimension());
            for (std::size_t k = 0; k < space.dimension(); ++k)
                row[k] = space.atom_multiplier(t, k).coeff(static_cast<std::size_t>(pw));
            a.push_back(std::move(row));
        }
    }
    IndependenceResult res;
    if (a.empty()) {
        res.independent = space.dimension() == 0;
        if (!res.independent) {
            res.witness.assign(space.dimension(), Complex(0));
            res.witness[0] = Complex(1);
        }
        return res;
    }
    while (a.size() < space.dimension()) a.push_back(Vector(space.dimension(), Complex(0)));
    NullSpaceResult ns = null_space_vector(a, ctx);
    if (ns.null_dimension > 0) {
        res.independent = false;
        res.witness = ns.vector;
    }
    return res;
}

struct StarRadius {
    Real disk_radius;  // R_{|m|,k}: poles of f_k in it are system poles of at least matching order
    Real star_radius;  // min with the radii R_{xi, tilde-tau} of those poles
};

/// Per-component convergence radii determined by the system-pole geometry.
inline std::vector<StarRadius> star_radii(const SystemModel& sys, const SystemPoleSet& set,
                                          const PrecisionContext& ctx) {
    std::vector<StarRadius> out;
    Real inf = std::numeric_limits<double>::infinity();
    for (const auto& comp_raw : sys.components) {
        MeromorphicModel comp = model_normalized(comp_raw, ctx);
        Real disk = model_tail_radius(comp);
        auto poles = model_poles(comp);
        for (const auto& p : poles) {
            const SystemPoleReport* match = nullptr;
            for (const auto& rep : set.poles)
                if (abs(rep.location - p.location) <= ctx.zero_tolerance() * (1 + abs(p.location))) {
                    match = &rep;
                    break;
                }
            if (!match || match->order < p.order) {
                disk = (std::min)(disk, abs(p.location));
                break;
            }
        }
        Real star = disk;
        for (const auto& p : poles) {
            if (abs(p.location) >= disk) continue;
            for (const auto& rep : set.poles)
                if (abs(rep.location - p.location) <= ctx.zero_tolerance() * (1 + abs(p.location)))
                    star = (std::min)(star, rep.big_r_s[p.order - 1]);
        }
        out.push_back({disk == inf ? inf : disk, star});
    }
    return out;
}

}  // namespace rowpade

#endif
