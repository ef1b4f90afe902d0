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

#ifndef ROWPADE_IO_HPP
#define ROWPADE_IO_HPP

#include <sstream>
#include <string>

#include <json.hpp>

#include "rowpade/approximants.hpp"
#include "rowpade/row_analysis.hpp"
#include "rowpade/system_poles.hpp"

namespace rowpade {

using json = nlohmann::json;

/// Decimal rendering with enough digits to round-trip at the context's
/// precision; infinities render as the strings "inf"/"-inf".
inline std::string real_to_string(const Real& x, const PrecisionContext& ctx) {
    if (x == std::numeric_limits<double>::infinity()) return "inf";
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    return x.str(static_cast<std::streamsize>(ctx.decimal_digits() + 4));
}

inline Real real_from_json(const json& v) {
    if (v.is_string()) {
        const std::string& s = v.get_ref<const std::string&>();
        if (s == "inf") return Real(std::numeric_limits<double>::infinity());
        if (s == "-inf") return Real(-std::numeric_limits<double>::infinity());
        return Real(s);
    }
    if (v.is_number_integer()) return Real(v.get<long long>());
    if (v.is_number()) return Real(v.get<double>());
    throw std::invalid_argument("expected a number or decimal string");
}

inline json complex_to_json(const Complex& z, const PrecisionContext& ctx) {
    return json{{"re", real_to_string(z.re, ctx)}, {"im", real_to_string(z.im, ctx)}};
}

inline Complex complex_from_json(const json& v) {
    if (v.is_array()) {
        if (v.size() != 2) throw std::invalid_argument("complex array must be [re, im]");
        return Complex(real_from_json(v[0]), real_from_json(v[1]));
    }
    return Complex(real_from_json(v.at("re")), v.contains("im") ? real_from_json(v.at("im")) : Real(0));
}

inline json polynomial_to_json(const Polynomial& p, const PrecisionContext& ctx) {
    json arr = json::array();
    for (const auto& c : p.coeffs) arr.push_back(json::array({real_to_string(c.re, ctx), real_to_string(c.im, ctx)}));
    return arr;
}

inline Polynomial polynomial_from_json(const json& v) {
    Polynomial p;
    for (const auto& c : v) p.coeffs.push_back(complex_from_json(c));
    return p;
}

// ---------------------------------------------------------------------------
// System description schema:
// {
//   "m": [1, 1],
//   "components": [
//     {
//       "poles": [ {"re": "...", "im": "...", "principal": [[re, im], ...]} ],
//       "polynomial": [[re, im], ...],            // optional
//       "tail": {"kind": "none"}                   // or:
//              {"kind": "lacunary_factorial"}      // sum of z^(n!)
//              {"kind": "power_series_with_radius",
//               "coefficients": [[re, im], ...], "radius": "..."}
//     }
//   ]
// }
// Poles at the origin are rejected. Reals may be numbers or decimal strings.
// ---------------------------------------------------------------------------

inline SystemModel system_from_json(const json& doc, const PrecisionContext& ctx) {
    SystemModel sys;
    if (!doc.contains("components") || !doc.contains("m"))
        throw std::invalid_argument("system description needs \"components\" and \"m\"");
    for (const auto& mv : doc.at("m")) {
        long v = mv.get<long>();
        if (v < 1) throw std::invalid_argument("multi-index entries must be >= 1");
        sys.m.push_back(static_cast<unsigned>(v));
    }
    for (const auto& cj : doc.at("components")) {
        MeromorphicModel comp;
        if (cj.contains("poles"))
            for (const auto& pj : cj.at("poles")) {
                PrincipalPart pp;
                pp.location = complex_from_json(pj);
                if (abs(pp.location) <= ctx.zero_tolerance())
                    throw std::invalid_argument("poles at the origin are not representable");
                if (!pj.contains("principal")) throw std::invalid_argument("pole needs \"principal\"");
                for (const auto& c : pj.at("principal")) pp.coeffs.push_back(complex_from_json(c));
                if (pp.coeffs.empty()) throw std::invalid_argument("empty principal part");
                comp.principal_parts.push_back(std::move(pp));
            }
        if (cj.contains("polynomial")) comp.poly_part = polynomial_from_json(cj.at("polynomial"));
        if (cj.contains("tail")) {
            const json& tj = cj.at("tail");
            std::string kind = tj.value("kind", "none");
            if (kind == "lacunary_factorial") {
                comp.tail_terms.push_back({poly_one(), EntireTail::lacunary()});
            } else if (kind == "power_series_with_radius") {
                std::vector<Complex> coeffs;
                for (const auto& c : tj.at("coefficients")) coeffs.push_back(complex_from_json(c));
                comp.tail_terms.push_back(
                    {poly_one(), EntireTail::power_series(std::move(coeffs), real_from_json(tj.at("radius")))});
            } else if (kind != "none") {
                throw std::invalid_argument("unknown tail kind: " + kind);
            }
        }
        sys.components.push_back(model_normalized(std::move(comp), ctx));
    }
    if (sys.components.size() != sys.m.size())
        throw std::invalid_argument("\"components\" and \"m\" must have equal length");
    if (sys.components.empty()) throw std::invalid_argument("empty system");
    return sys;
}

inline json system_to_json(const SystemModel& sys, const PrecisionContext& ctx) {
    json doc;
    doc["m"] = sys.m;
    doc["components"] = json::array();
    for (const auto& comp_raw : sys.components) {
        MeromorphicModel comp = model_normalized(comp_raw, ctx);
        json cj;
        cj["poles"] = json::array();
        for (const auto& p : comp.principal_parts) {
            json pj = complex_to_json(p.location, ctx);
            pj["principal"] = json::array();
            for (const auto& c : p.coeffs)
                pj["principal"].push_back(json::array({real_to_string(c.re, ctx), real_to_string(c.im, ctx)}));
            cj["poles"].push_back(std::move(pj));
        }
        if (!comp.poly_part.is_zero()) cj["polynomial"] = polynomial_to_json(comp.poly_part, ctx);
        json tj{{"kind", "none"}};
        for (const auto& t : comp.tail_terms) {
            // round-trippable only for unit multipliers; others are exported
            // as explicit polynomial-times-atom notes
            if (t.atom.kind == TailKind::lacunary_factorial) {
                tj = json{{"kind", "lacunary_factorial"}};
            } else {
                tj = json{{"kind", "power_series_with_radius"},
                          {"coefficients", polynomial_to_json(Polynomial{t.atom.data}, ctx)},
                          {"radius", real_to_string(t.atom.analyticity_radius, ctx)}};
            }
        }
        cj["tail"] = std::move(tj);
        doc["components"].push_back(std::move(cj));
    }
    return doc;
}

inline json record_to_json(const ApproximantRecord& rec, const PrecisionContext& ctx) {
    json j;
    j["n"] = rec.n;
    j["m"] = rec.m;
    j["precision_bits"] = ctx.significand_bits;
    j["lambda"] = rec.lambda;
    j["null_dimension"] = rec.null_dimension;
    j["q"] = polynomial_to_json(rec.q, ctx);
    j["q_full"] = polynomial_to_json(rec.q_full, ctx);
    j["p"] = json::array();
    for (const auto& p : rec.p) j["p"].push_back(polynomial_to_json(p, ctx));
    return j;
}

/// CSV row: n, deg Q, lambda_n, m_n, tau_n, null_dimension, q coefficients
/// (re and im interleaved).
inline std::string record_to_csv_row(const ApproximantRecord& rec, const DefectDiagnostics& d,
                                     const PrecisionContext& ctx) {
    std::ostringstream os;
    os << rec.n << ',' << rec.q.degree() << ',' << d.lambda_n << ',' << d.m_n << ',' << d.tau_n << ','
       << rec.null_dimension;
    for (const auto& c : rec.q.coeffs)
        os << ',' << real_to_string(c.re, ctx) << ',' << real_to_string(c.im, ctx);
    return os.str();
}

inline json pole_set_to_json(const SystemPoleSet& set, const PrecisionContext& ctx) {
    json j;
    j["precision_bits"] = ctx.significand_bits;
    j["total_order"] = set.total_order;
    j["expected_total"] = set.expected_total;
    j["complete"] = set.complete;
    j["theta"] = real_to_string(predicted_theta(set), ctx);
    j["q_limit"] = polynomial_to_json(limit_denominator(set), ctx);
    j["poles"] = json::array();
    for (const auto& p : set.poles) {
        json pj;
        pj["location"] = complex_to_json(p.location, ctx);
        pj["order"] = p.order;
        pj["r"] = json::array();
        for (const auto& r : p.r_s) pj["r"].push_back(real_to_string(r, ctx));
        pj["R"] = json::array();
        for (const auto& r : p.big_r_s) pj["R"].push_back(real_to_string(r, ctx));
        pj["capacity"] = real_to_string(p.capacity(), ctx);
        j["poles"].push_back(std::move(pj));
    }
    return j;
}

inline json rate_to_json(const RateEstimate& est, const PrecisionContext& ctx) {
    return json{{"fitted_rate", real_to_string(est.fitted_rate, ctx)},
                {"limsup_proxy", real_to_string(est.limsup_proxy, ctx)},
                {"window", json::array({est.window_lo, est.window_hi})},
                {"residual", real_to_string(est.residual, ctx)},
                {"used", est.used},
                {"censored", est.censored},
                {"method", est.method}};
}

inline json clusters_to_json(const std::vector<PoleEstimateCluster>& clusters,
                             const PrecisionContext& ctx) {
    json arr = json::array();
    for (const auto& c : clusters)
        arr.push_back(json{{"center", complex_to_json(c.center, ctx)},
                           {"multiplicity", c.multiplicity},
                           {"drift", real_to_string(c.drift, ctx)}});
    return arr;
}

inline json diagnosis_to_json(const InverseDiagnosis& d, const PrecisionContext& ctx) {
    return json{{"S", real_to_string(d.s_estimate, ctx)},
                {"G", real_to_string(d.g_estimate, ctx)},
                {"steps_hold", d.steps_hold_eventually},
                {"lemma_holds", d.lemma_holds_eventually},
                {"r0_positive", d.r0_positive},
                {"r0_finite", d.r0_finite},
                {"conclusion", d.conclusion},
                {"n0", d.n0}};
}

}  // namespace rowpade

#endif
