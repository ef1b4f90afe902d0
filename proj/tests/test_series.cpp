// Unit tests for coefficient streams, structural models, radii, and the
// associated-system construction.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rowpade/series.hpp"
#include "rowpade/testbed.hpp"

using namespace rowpade;

namespace {

const PrecisionContext ctx(512);
const Real inf = std::numeric_limits<double>::infinity();

bool near(const Complex& a, const Complex& b, const Real& tol) { return abs(a - b) <= tol; }

MeromorphicModel pole_model(const Complex& at, const Complex& residue) {
    MeromorphicModel m;
    m.principal_parts.push_back({at, {residue}});
    return m;
}

}  // namespace

TEST_CASE("taylor coefficients of simple poles") {
    ctx.activate();
    // 1/(1-2z) = -(1/2)/(z-1/2): phi_n = 2^n
    auto s1 = taylor_coefficients(pole_model(Complex(Real(1) / 2), Complex(Real(-1) / 2)), ctx);
    for (std::size_t n = 0; n < 20; ++n)
        CHECK(near(s1.at(n), Complex(pow_int(Complex(2), static_cast<long>(n))), ctx.eps() * 1024));

    // 1/(z-2): phi_n = -2^(-n-1)
    auto s2 = taylor_coefficients(pole_model(Complex(2), Complex(1)), ctx);
    for (std::size_t n = 0; n < 20; ++n) {
        Complex want = -Complex(1) / pow_int(Complex(2), static_cast<long>(n) + 1);
        CHECK(near(s2.at(n), want, ctx.eps() * 1024));
    }
}

TEST_CASE("lacunary tail coefficients") {
    ctx.activate();
    MeromorphicModel m;
    m.tail_terms.push_back({poly_one(), EntireTail::lacunary()});
    auto s = taylor_coefficients(m, ctx);
    std::vector<int> want{0, 1, 1, 0, 0, 0, 1};  // indices 0..6; factorials 1,2,6
    for (std::size_t n = 0; n < want.size(); ++n) CHECK(s.at(n) == Complex(want[n]));
    CHECK(s.at(24) == Complex(1));
    CHECK(s.at(25) == Complex(0));
    CHECK(s.at(120) == Complex(1));
}

TEST_CASE("second order pole coefficients") {
    ctx.activate();
    // 1/(z-1)^2 = sum (n+1) z^n
    MeromorphicModel m;
    m.principal_parts.push_back({Complex(1), {Complex(0), Complex(1)}});
    auto s = taylor_coefficients(m, ctx);
    for (std::size_t n = 0; n < 15; ++n)
        CHECK(near(s.at(n), Complex(Real(static_cast<unsigned long>(n) + 1)), ctx.eps() * 1024));
}

TEST_CASE("pole at origin is rejected") {
    ctx.activate();
    CHECK_THROWS(taylor_coefficients(pole_model(Complex(0), Complex(1)), ctx));
}

TEST_CASE("sum model coefficients are coefficientwise sums") {
    ctx.activate();
    MeromorphicModel a = pole_model(Complex(Real(1) / 2), Complex(1));
    MeromorphicModel b = pole_model(Complex(3), Complex(2));
    b.poly_part = Polynomial({Complex(1), Complex(4)});
    auto sa = taylor_coefficients(a, ctx);
    auto sb = taylor_coefficients(b, ctx);
    auto ssum = taylor_coefficients(model_add(a, b, ctx), ctx);
    for (std::size_t n = 0; n < 25; ++n)
        CHECK(near(ssum.at(n), sa.at(n) + sb.at(n), ctx.eps() * 4096));
}

TEST_CASE("rational model coefficients satisfy the denominator recurrence") {
    ctx.activate();
    std::mt19937_64 rng(7u);
    std::uniform_real_distribution<double> d(-2, 2);
    MeromorphicModel m;
    Complex p1(1.25, 0.5), p2(-2.0, 1.0);
    m.principal_parts.push_back({p1, {Complex(d(rng), d(rng))}});
    m.principal_parts.push_back({p2, {Complex(d(rng), d(rng))}});
    Polynomial q = poly_from_roots({p1, p2});  // q * f is a polynomial
    auto s = taylor_coefficients(m, ctx);
    for (std::size_t n = 3; n < 23; ++n) {
        Complex acc(0);
        for (std::size_t j = 0; j < q.coeffs.size(); ++j) acc += q.coeffs[j] * s.at(n - j);
        CHECK(abs(acc) <= ctx.eps() * 65536);
    }
}

TEST_CASE("multiplying a model by a polynomial is exact") {
    ctx.activate();
    std::mt19937_64 rng(11u);
    std::uniform_real_distribution<double> d(-2, 2);
    for (int trial = 0; trial < 6; ++trial) {
        MeromorphicModel m;
        m.principal_parts.push_back({Complex(1.5, 0.25), {Complex(d(rng), d(rng)), Complex(d(rng), d(rng))}});
        m.principal_parts.push_back({Complex(-0.75), {Complex(d(rng), d(rng))}});
        m.poly_part = Polynomial({Complex(d(rng)), Complex(d(rng))});
        Polynomial p({Complex(d(rng), d(rng)), Complex(d(rng)), Complex(1)});
        MeromorphicModel prod = model_mul_poly(m, p, ctx);
        Complex z(0.3, -0.4);
        CHECK(near(model_eval(prod, z, ctx), model_eval(m, z, ctx) * poly_eval(p, z),
                   ctx.eps() * 65536));
        // coefficientwise: coefficients of prod equal the convolution
        auto sm = taylor_coefficients(m, ctx);
        auto sp = taylor_coefficients(prod, ctx);
        for (std::size_t n = 0; n < 15; ++n) {
            Complex acc(0);
            for (std::size_t j = 0; j <= n && j < p.coeffs.size(); ++j) acc += p.coeffs[j] * sm.at(n - j);
            CHECK(near(sp.at(n), acc, ctx.eps() * 65536));
        }
    }
}

TEST_CASE("radius_R0") {
    ctx.activate();
    // phi_n = 2^n -> R_0 = 0.5
    auto s = taylor_coefficients(pole_model(Complex(Real(1) / 2), Complex(Real(-1) / 2)), ctx);
    Real est = radius_R0(s, 64, 32, ctx);
    CHECK(est >= Real(45) / 100);
    CHECK(est <= Real(55) / 100);

    // exact value from the model: pole at 1/2 inside tail radius 1
    MeromorphicModel f2 = pole_model(Complex(Real(1) / 2), Complex(Real(-1) / 2));
    f2.tail_terms.push_back({poly_one(), EntireTail::lacunary()});
    CHECK(radius_R0_exact(f2, ctx) == Real(1) / 2);

    MeromorphicModel polyonly;
    polyonly.poly_part = Polynomial({Complex(1), Complex(2)});
    CHECK(radius_R0_exact(polyonly, ctx) == inf);
    CHECK_THROWS(radius_R0(taylor_coefficients(polyonly, ctx), 64, 32, ctx));
}

TEST_CASE("disk_radii_Rm") {
    ctx.activate();
    MeromorphicModel f = pole_model(Complex(1), Complex(1));
    f.principal_parts.push_back({Complex(2), {Complex(1)}});
    CHECK(disk_radii_Rm(f, 1, ctx) == Real(2));
    CHECK(disk_radii_Rm(f, 0, ctx) == Real(1));
    CHECK(disk_radii_Rm(f, 2, ctx) == inf);

    MeromorphicModel g = pole_model(Complex(Real(1) / 2), Complex(1));
    g.tail_terms.push_back({poly_one(), EntireTail::lacunary()});
    CHECK(disk_radii_Rm(g, 1, ctx) == Real(1));

    // nondecreasing in m and Rm(.,0) equals the exact R_0
    for (unsigned m = 0; m < 4; ++m) CHECK(disk_radii_Rm(f, m, ctx) <= disk_radii_Rm(f, m + 1, ctx));
    CHECK(disk_radii_Rm(f, 0, ctx) == radius_R0_exact(f, ctx));
    CHECK(disk_radii_Rm(g, 0, ctx) == radius_R0_exact(g, ctx));
}

TEST_CASE("associated_system") {
    ctx.activate();
    {
        // d=1, m=(2), f = 1/(z-1) -> (1/(z-1), z/(z-1)), all-ones multi-index
        SystemModel sys;
        sys.components = {pole_model(Complex(1), Complex(1))};
        sys.m = {2};
        SystemModel bar = associated_system(sys, ctx);
        REQUIRE(bar.components.size() == 2);
        CHECK(bar.m == std::vector<unsigned>({1, 1}));
        auto s0 = taylor_coefficients(bar.components[0], ctx);
        auto s1 = taylor_coefficients(bar.components[1], ctx);
        auto sf = taylor_coefficients(sys.components[0], ctx);
        for (std::size_t n = 1; n < 12; ++n) {
            CHECK(near(s0.at(n), sf.at(n), ctx.eps() * 256));
            CHECK(near(s1.at(n), sf.at(n - 1), ctx.eps() * 256));
        }
        CHECK(near(s1.at(0), Complex(0), ctx.eps() * 256));
    }
    {
        // m=(1,1): unchanged
        SystemModel sys;
        sys.components = {pole_model(Complex(1), Complex(1)), pole_model(Complex(2), Complex(1))};
        sys.m = {1, 1};
        SystemModel bar = associated_system(sys, ctx);
        CHECK(bar.components.size() == 2);
        CHECK(bar.m == sys.m);
    }
    {
        // d=2, m=(2,1): three components
        SystemModel sys;
        sys.components = {pole_model(Complex(1), Complex(1)), pole_model(Complex(2), Complex(1))};
        sys.m = {2, 1};
        SystemModel bar = associated_system(sys, ctx);
        CHECK(bar.components.size() == 3);
        CHECK(bar.m == std::vector<unsigned>({1, 1, 1}));
        // pole locations and disk radii are preserved
        for (unsigned m = 0; m < 4; ++m) {
            Real orig = (std::min)(disk_radii_Rm(sys.components[0], m, ctx),
                                   disk_radii_Rm(sys.components[1], m, ctx));
            Real assoc = inf;
            for (const auto& c : bar.components) assoc = (std::min)(assoc, disk_radii_Rm(c, m, ctx));
            CHECK(orig == assoc);
        }
    }
}

TEST_CASE("model evaluation against the lacunary series") {
    ctx.activate();
    MeromorphicModel m;
    m.tail_terms.push_back({poly_one(), EntireTail::lacunary()});
    Complex z(Real(1) / 2, 0);
    // partial sums hit the value: with |z|=1/2 the terms past 2^-(2*bits)
    // are invisible
    Complex want(0);
    unsigned long long f = 1;
    for (unsigned long long k = 1; f <= 512; f *= ++k) want += pow_int(z, static_cast<long>(f));
    CHECK(near(model_eval(m, z, ctx), want, ldexp(Real(1), -500)));
    CHECK_THROWS(model_eval(m, Complex(Real(3) / 2), ctx));
}

TEST_CASE("series product oracle") {
    ctx.activate();
    auto s = taylor_coefficients(pole_model(Complex(Real(1) / 2), Complex(Real(-1) / 2)), ctx);
    // q = 1: identity
    auto id = series_product_oracle(poly_one(), s);
    for (std::size_t n = 0; n < 10; ++n) CHECK(near(id.at(n), s.at(n), ctx.eps()));
    // q = z - 1/2 against phi_n = 2^n: everything >= 1 vanishes
    auto killed = series_product_oracle(Polynomial({Complex(Real(-1) / 2), Complex(1)}), s);
    CHECK(near(killed.at(0), Complex(Real(-1) / 2), ctx.eps() * 64));
    for (std::size_t n = 1; n < 20; ++n) CHECK(abs(killed.at(n)) <= ctx.eps() * 65536);
    // q = z: shift
    auto shifted = series_product_oracle(poly_monomial(1), s);
    CHECK(near(shifted.at(0), Complex(0), ctx.eps()));
    for (std::size_t n = 1; n < 10; ++n) CHECK(near(shifted.at(n), s.at(n - 1), ctx.eps()));
}

TEST_CASE("example catalog is internally consistent") {
    ctx.activate();
    auto all = examples();
    REQUIRE(all.size() >= 6);
    for (const auto& e : all) {
        CHECK(e.system.components.size() == e.system.m.size());
        // theta is recomputable from the stored radii
        Real theta = 0;
        for (const auto& p : e.truth.poles) {
            Real cap = inf;
            for (const auto& r : p.r_s) cap = (std::min)(cap, r);
            if (cap != inf) theta = (std::max)(theta, abs(p.location) / cap);
        }
        CHECK(theta == e.truth.theta);
        // q_limit degree equals the total expected order when complete
        unsigned total = 0;
        for (const auto& p : e.truth.poles) total += p.order;
        if (e.truth.complete) CHECK(total == e.system.total_m());
        CHECK(e.truth.q_limit.degree() == static_cast<int>(total));
    }
}
