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

#ifndef ROWPADE_TESTBED_HPP
#define ROWPADE_TESTBED_HPP

#include <string>
#include <vector>

#include "rowpade/series.hpp"

namespace rowpade {

struct ExpectedPole {
    Complex location;
    unsigned order;
    std::vector<Real> r_s;      // characteristic radii r_{xi,s}, s = 1..order
};

struct GroundTruth {
    std::vector<ExpectedPole> poles;  // ascending modulus
    Real theta = 0;
    Polynomial q_limit;               // monic, degree = total order
    bool complete = false;
    bool independent = true;
    std::vector<Real> star_radii;     // R*_{|m|,k} per component
    std::string notes;
};

struct NamedExample {
    std::string id;
    SystemModel system;
    GroundTruth truth;
};

namespace detail {

inline MeromorphicModel simple_pole(const Complex& at, const Complex& residue) {
    MeromorphicModel m;
    m.principal_parts.push_back({at, {residue}});
    return m;
}

inline void add_simple_pole(MeromorphicModel& m, const Complex& at, const Complex& residue) {
    m.principal_parts.push_back({at, {residue}});
}

inline void add_lacunary(MeromorphicModel& m) {
    m.tail_terms.push_back({poly_one(), EntireTail::lacunary()});
}

}  // namespace detail

/// Built-in catalog of systems with fully known pole structure.
inline std::vector<NamedExample> examples() {
    Real inf = std::numeric_limits<double>::infinity();
    std::vector<NamedExample> out;

    {
        // E1: two components sharing the pole 1/2 and the factorial-power
        // tail; only the first also has the pole at 2.
        // f1 = 1/(1-2z) + sum z^(n!) + 1/(z-2), f2 = 1/(1-2z) + sum z^(n!)
        NamedExample e;
        e.id = "E1";
        MeromorphicModel f1 = detail::simple_pole(Complex(Real(1) / 2), Complex(-Real(1) / 2));
        detail::add_lacunary(f1);
        detail::add_simple_pole(f1, Complex(2), Complex(1));
        MeromorphicModel f2 = detail::simple_pole(Complex(Real(1) / 2), Complex(-Real(1) / 2));
        detail::add_lacunary(f2);
        e.system.components = {f1, f2};
        e.system.m = {1, 1};
        e.truth.poles = {{Complex(Real(1) / 2), 1, {Real(1)}}, {Complex(2), 1, {inf}}};
        e.truth.theta = Real(1) / 2;
        e.truth.q_limit = poly_from_roots({Complex(Real(1) / 2), Complex(2)});
        e.truth.complete = true;
        e.truth.independent = true;
        e.truth.star_radii = {Real(1), Real(1)};
        e.truth.notes = "shared pole 1/2 limited by the lacunary boundary at 1; pole 2 separable";
        out.push_back(std::move(e));
    }
    {
        // E2: f1 = 1/(z-1) + 1/(z-2), f2 = 1/(z-3); the pole at 2 of f1 is
        // not a system pole (no combination isolates it inside |z| <= 2).
        NamedExample e;
        e.id = "E2";
        MeromorphicModel f1 = detail::simple_pole(Complex(1), Complex(1));
        detail::add_simple_pole(f1, Complex(2), Complex(1));
        MeromorphicModel f2 = detail::simple_pole(Complex(3), Complex(1));
        e.system.components = {f1, f2};
        e.system.m = {1, 1};
        e.truth.poles = {{Complex(1), 1, {Real(2)}}, {Complex(3), 1, {inf}}};
        e.truth.theta = Real(1) / 2;
        e.truth.q_limit = poly_from_roots({Complex(1), Complex(3)});
        e.truth.complete = true;
        e.truth.independent = true;
        e.truth.star_radii = {Real(2), inf};
        e.truth.notes = "z=2 is a pole of f1 but not a system pole";
        out.push_back(std::move(e));
    }
    {
        // E3: scalar 1/(z-1/2) + sum z^(n!), m = 1.
        NamedExample e;
        e.id = "E3";
        MeromorphicModel f = detail::simple_pole(Complex(Real(1) / 2), Complex(1));
        detail::add_lacunary(f);
        e.system.components = {f};
        e.system.m = {1};
        e.truth.poles = {{Complex(Real(1) / 2), 1, {Real(1)}}};
        e.truth.theta = Real(1) / 2;
        e.truth.q_limit = poly_from_roots({Complex(Real(1) / 2)});
        e.truth.complete = true;
        e.truth.independent = true;
        e.truth.star_radii = {Real(1)};
        e.truth.notes = "scalar row sequence against a natural boundary at 1";
        out.push_back(std::move(e));
    }
    {
        // E4: fully rational, independent pair with well-separated poles.
        NamedExample e;
        e.id = "E4";
        MeromorphicModel f1 = detail::simple_pole(Complex(1), Complex(1));
        MeromorphicModel f2 = detail::simple_pole(Complex(-2), Complex(1));
        e.system.components = {f1, f2};
        e.system.m = {1, 1};
        e.truth.poles = {{Complex(1), 1, {inf}}, {Complex(-2), 1, {inf}}};
        e.truth.theta = 0;
        e.truth.q_limit = poly_from_roots({Complex(1), Complex(-2)});
        e.truth.complete = true;
        e.truth.independent = true;
        e.truth.star_radii = {inf, inf};
        e.truth.notes = "rational pair; denominators lock on exactly";
        out.push_back(std::move(e));
    }
    {
        // E5: dependent pair (g, g); the difference of the components is a
        // nontrivial combination that is identically zero.
        NamedExample e;
        e.id = "E5";
        MeromorphicModel g = detail::simple_pole(Complex(1), Complex(1));
        e.system.components = {g, g};
        e.system.m = {1, 1};
        e.truth.poles = {{Complex(1), 1, {inf}}};
        e.truth.theta = 0;
        e.truth.q_limit = poly_from_roots({Complex(1)});
        e.truth.complete = false;  // total order 1 < |m| = 2
        e.truth.independent = false;
        e.truth.star_radii = {inf, inf};
        e.truth.notes = "duplicated component; system-pole count falls short of |m|";
        out.push_back(std::move(e));
    }
    {
        // E6: single series with denominator budget 2; equivalent to its
        // associated two-component system under the all-ones multi-index.
        NamedExample e;
        e.id = "E6";
        MeromorphicModel f = detail::simple_pole(Complex(1), Complex(1));
        detail::add_simple_pole(f, Complex(2), Complex(1));
        e.system.components = {f};
        e.system.m = {2};
        e.truth.poles = {{Complex(1), 1, {inf}}, {Complex(2), 1, {inf}}};
        e.truth.theta = 0;
        e.truth.q_limit = poly_from_roots({Complex(1), Complex(2)});
        e.truth.complete = true;
        e.truth.independent = true;
        e.truth.star_radii = {inf};
        e.truth.notes = "classical one-series case exercised through the shared pipeline";
        out.push_back(std::move(e));
    }
    return out;
}

inline const NamedExample& example_by_id(const std::vector<NamedExample>& all, const std::string& id) {
    for (const auto& e : all)
        if (e.id == id) return e;
    throw std::out_of_range("unknown example id: " + id);
}

/// Plain convolution of a polynomial with a coefficient stream — an
/// independent check of the order conditions satisfied by solved
/// denominators. Coefficients are pulled lazily but deterministically.
inline CoefficientSeries series_product_oracle(const Polynomial& q, const CoefficientSeries& f) {
    return CoefficientSeries([q, f](std::size_t n) {
        Complex s(0);
        for (std::size_t j = 0; j <= n && j < q.coeffs.size(); ++j) s += q.coeffs[j] * f.at(n - j);
        return s;
    });
}

}  // namespace rowpade

#endif
