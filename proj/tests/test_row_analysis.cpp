// Unit tests for row sweeps, geometric-rate fitting, zero clustering,
// derivative rates, circle errors, and the inverse-theory diagnosis.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rowpade/row_analysis.hpp"
#include "rowpade/testbed.hpp"

using namespace rowpade;

namespace {

const PrecisionContext ctx(512);

Real pw(const Real& base, std::size_t n) {
    using boost::multiprecision::pow;
    return pow(base, static_cast<int>(n));
}

}  // namespace

TEST_CASE("rate fit recovers a clean geometric sequence") {
    ctx.activate();
    std::vector<Real> vals;
    for (std::size_t n = 0; n <= 40; ++n) vals.push_back(3 * pw(Real(1) / 2, n));
    auto est = fit_geometric_rate(vals, 0, 5, 40, ctx);
    CHECK(abs(est.fitted_rate - Real(1) / 2) <= Real(1) / pow(Real(10), 40));
    CHECK(est.limsup_proxy <= Real(1));
    CHECK(abs(est.limsup_proxy - Real(1) / 2) <= Real(1) / 5);  // 3^(1/n) bias at small n
    CHECK(est.used == 36);
    CHECK(est.censored == 0);
    CHECK(est.residual <= Real(1) / pow(Real(10), 40));
}

TEST_CASE("rate fit tolerates a polynomial factor") {
    ctx.activate();
    std::vector<Real> vals;
    for (std::size_t n = 0; n <= 80; ++n)
        vals.push_back(Real(static_cast<unsigned long>(n * n + 1)) * pw(Real(1) / 3, n));
    auto est = fit_geometric_rate(vals, 0, 40, 80, ctx);
    CHECK(abs(est.fitted_rate - Real(1) / 3) <= Real(1) / 20);
    CHECK(abs(est.limsup_proxy - Real(1) / 3) <= Real(1) / 10);
}

TEST_CASE("rate fit censors the noise floor and demands enough points") {
    ctx.activate();
    std::vector<Real> vals;
    for (std::size_t n = 0; n <= 30; ++n)
        vals.push_back(n < 12 ? pw(Real(1) / 2, n) : Real(0));  // dead tail
    auto est = fit_geometric_rate(vals, 0, 0, 30, ctx);
    CHECK(est.censored >= 19);
    CHECK(est.used <= 12);
    CHECK(abs(est.fitted_rate - Real(1) / 2) <= Real(1) / pow(Real(10), 40));

    std::vector<Real> few(30, Real(0));
    few[0] = 1;
    few[1] = Real(1) / 2;
    CHECK_THROWS(fit_geometric_rate(few, 0, 0, 29, ctx));       // < 6 usable
    CHECK_THROWS(fit_geometric_rate(vals, 0, 10, 40, ctx));     // window past the data
    CHECK_THROWS(fit_geometric_rate(vals, 5, 0, 20, ctx));      // window before the data
}

TEST_CASE("rate fit is scale invariant") {
    ctx.activate();
    std::vector<Real> a, b;
    for (std::size_t n = 0; n <= 30; ++n) {
        Real v = pw(Real(2) / 3, n) * (1 + Real(n % 5) / 50);
        a.push_back(v);
        b.push_back(v * 1000);
    }
    auto ea = fit_geometric_rate(a, 0, 5, 30, ctx);
    auto eb = fit_geometric_rate(b, 0, 5, 30, ctx);
    CHECK(abs(ea.fitted_rate - eb.fitted_rate) <= ctx.eps() * 1024);
}

TEST_CASE("sweep basics and thread-count determinism") {
    ctx.activate();
    auto all = examples();
    const auto& e2 = example_by_id(all, "E2");
    SweepOptions opts;
    opts.reference_from_last = true;
    auto s1 = sweep(e2.system, 2, 20, opts, ctx);
    REQUIRE(s1.records.size() == 19);
    CHECK(s1.at(7).n == 7);
    CHECK(s1.reference_norms.size() == 19);
    // monotone improvement holds once past the preasymptotic range
    for (std::size_t i = 8; i + 1 < s1.reference_norms.size(); ++i)
        CHECK(s1.reference_norms[i + 1] <= s1.reference_norms[i]);

    opts.jobs = 3;
    auto s3 = sweep(e2.system, 2, 20, opts, ctx);
    for (std::size_t i = 0; i < s1.records.size(); ++i) {
        REQUIRE(s1.records[i].q.coeffs.size() == s3.records[i].q.coeffs.size());
        for (std::size_t j = 0; j < s1.records[i].q.coeffs.size(); ++j)
            CHECK(s1.records[i].q.coeffs[j] == s3.records[i].q.coeffs[j]);
    }

    CHECK_THROWS(sweep(e2.system, 1, 20, opts, ctx));  // n_min < |m|
    auto single = sweep(e2.system, 5, 5, SweepOptions{}, ctx);
    CHECK(single.records.size() == 1);
}

TEST_CASE("denominator error decays at the predicted rate") {
    ctx.activate();
    auto all = examples();
    const auto& e2 = example_by_id(all, "E2");
    SweepOptions opts;
    opts.q_reference = e2.truth.q_limit;
    auto sw = sweep(e2.system, 2, 36, opts, ctx);
    auto est = fit_geometric_rate(sw.reference_norms, sw.n_min, 12, 36, ctx);
    CHECK(abs(est.fitted_rate - Real(1) / 2) <= Real(1) / 20);
    CHECK(abs(est.limsup_proxy - Real(1) / 2) <= Real(1) / 10);
}

TEST_CASE("zero clustering finds the limit poles") {
    ctx.activate();
    auto all = examples();
    const auto& e2 = example_by_id(all, "E2");
    auto sw = sweep(e2.system, 2, 30, SweepOptions{}, ctx);
    auto clusters = cluster_zeros(sw, 10, ctx);
    REQUIRE(clusters.size() == 2);
    CHECK(abs(clusters[0].center - Complex(1)) <= Real(1) / 1000);
    CHECK(abs(clusters[1].center - Complex(3)) <= Real(1) / 1000);
    CHECK(clusters[0].multiplicity == 1);
    CHECK(clusters[1].multiplicity == 1);
    CHECK(clusters[0].drift < abs(clusters[1].center - clusters[0].center));
}

TEST_CASE("zero clustering merges a double root") {
    ctx.activate();
    // f with a double pole approximated with m = 2: both zero tracks sit on
    // the same point
    SystemModel sys;
    MeromorphicModel a;
    a.principal_parts.push_back({Complex(1), {Complex(0), Complex(1)}});  // 1/(z-1)^2
    sys.components = {a};
    sys.m = {2};
    auto sw = sweep(sys, 2, 12, SweepOptions{}, ctx);
    auto clusters = cluster_zeros(sw, 6, ctx);
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].multiplicity == 2);
    CHECK(abs(clusters[0].center - Complex(1)) <= Real(1) / pow(Real(10), 20));
}

TEST_CASE("clustering edge cases") {
    ctx.activate();
    SweepResult empty;
    CHECK(cluster_zeros(empty, 5, ctx).empty());
    auto all = examples();
    auto sw = sweep(example_by_id(all, "E2").system, 4, 10, SweepOptions{}, ctx);
    CHECK(cluster_zeros(sw, 0, ctx).empty());
}

TEST_CASE("derivative rates at a system pole") {
    ctx.activate();
    auto all = examples();
    const auto& e2 = example_by_id(all, "E2");
    auto sw = sweep(e2.system, 2, 36, SweepOptions{}, ctx);
    auto dr = derivative_rates(sw, Complex(1), 0, 12, 36, ctx);
    REQUIRE(dr.per_order.size() == 1);
    // |q_n(1)| -> 0 like (|xi| / R_xi)^n = (1/2)^n
    CHECK(abs(dr.max_fitted - Real(1) / 2) <= Real(1) / 20);
    CHECK(abs(dr.max_limsup - Real(1) / 2) <= Real(1) / 10);
    CHECK_THROWS(derivative_rates(sw, Complex(0), 0, 12, 36, ctx));
}

TEST_CASE("circle error decays geometrically and respects the pole margin") {
    ctx.activate();
    auto all = examples();
    const auto& e2 = example_by_id(all, "E2");
    auto sw = sweep(e2.system, 2, 60, SweepOptions{}, ctx);
    Real radius = Real(3) / 2;
    auto est = convergence_on_circle(sw, e2.system, 0, radius, 64, 30, 60, ctx);
    // expected rate |z| / R*_1 = 1.5 / 2 = 0.75
    CHECK(est.fitted_rate < 1);
    CHECK(abs(est.fitted_rate - Real(3) / 4) <= Real(1) / 20);
    CHECK(abs(est.limsup_proxy - Real(3) / 4) <= Real(15) / 100);
    CHECK_THROWS(convergence_on_circle(sw, e2.system, 0, Real(1), 64, 30, 60, ctx));   // on a pole
    CHECK_THROWS(convergence_on_circle(sw, e2.system, 0, radius, 8, 30, 60, ctx));     // few samples
    CHECK_THROWS(convergence_on_circle(sw, e2.system, 5, radius, 64, 30, 60, ctx));    // bad index
}

TEST_CASE("inverse diagnosis on an exact one-pole sequence") {
    ctx.activate();
    MeromorphicModel a;
    a.principal_parts.push_back({Complex(Real(1) / 2), {Complex(1)}});
    auto f = taylor_coefficients(a, ctx);
    std::vector<ApproximantRecord> recs;
    for (std::size_t n = 1; n <= 14; ++n) recs.push_back(incomplete_pade(f, 1, 1, n, ctx));
    auto diag = inverse_diagnosis(recs, 1, 1, 8, ctx);
    CHECK(abs(diag.s_estimate - Real(1) / 2) <= Real(1) / pow(Real(10), 40));
    CHECK(abs(diag.g_estimate - Real(1) / 2) <= Real(1) / pow(Real(10), 40));
    CHECK(diag.steps_hold_eventually);
    CHECK(diag.lemma_holds_eventually);
    CHECK(diag.r0_positive);
    CHECK(diag.r0_finite);
    CHECK(diag.conclusion == "0 < R_0 < infinity; R_0 consistent with [S, G]");

    auto none = inverse_diagnosis({}, 1, 1, 8, ctx);
    CHECK(none.conclusion == "no data");
}

TEST_CASE("l1 normalization option keeps the coefficient sum at one") {
    ctx.activate();
    auto all = examples();
    SweepOptions opts;
    opts.l1_normalize = true;
    auto sw = sweep(example_by_id(all, "E2").system, 4, 12, opts, ctx);
    for (const auto& rec : sw.records) {
        Real sum = 0;
        for (const auto& c : rec.q_full.coeffs) sum += abs(c);
        CHECK(abs(sum - 1) <= ctx.eps() * 1024);
    }
}
