#include <doctest.h>

#include "abel/basis.hpp"
#include "abel/config.hpp"
#include "abel/cycles.hpp"
#include "oracles.hpp"

using namespace abel;

namespace {

NumericsConfig fast_config() {
    NumericsConfig cfg;
    cfg.grid_points = 200;
    cfg.ode_rel_tol = 1e-9;
    cfg.ode_abs_tol = 1e-11;
    cfg.window_hi = 3.0;
    return cfg;
}

std::vector<double> census_roots(const CycleCensus& c) {
    std::vector<double> r;
    for (const LimitCycle& lc : c.all())
        for (int k = 0; k < lc.multiplicity; ++k) r.push_back(lc.x0);
    return r;
}

} // namespace

TEST_CASE("eval_basis identity cases") {
    const Vec3 trig0 = eval_basis(BasisFamily::trigonometric(), 0.0, 0);
    CHECK(trig0[0] == 1.0);
    CHECK(trig0[1] == 0.0);
    CHECK(trig0[2] == 1.0);

    const Vec3 quad1 = eval_basis(BasisFamily::quadratic(), 0.5, 1);
    CHECK(quad1[0] == 0.0);
    CHECK(quad1[1] == 1.0);
    CHECK(quad1[2] == 1.0);

    // d/dt (1, (1-t)^1, (1-t)^2) at t = 0.
    const Vec3 sp1 = eval_basis(BasisFamily::shifted_power(1.0, 2.0), 0.0, 1);
    CHECK(sp1[0] == 0.0);
    CHECK(sp1[1] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(sp1[2] == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("eval_basis domain errors") {
    CHECK_THROWS_AS(eval_basis(BasisFamily::quadratic(), -0.1, 0), std::domain_error);
    CHECK_THROWS_AS(eval_basis(BasisFamily::quadratic(), 1.1, 0), std::domain_error);
    // Derivative of (1-t)^0.5 is singular at t = 1.
    CHECK_THROWS_AS(eval_basis(BasisFamily::shifted_power(0.5, 2.0), 1.0, 1),
                    singularity_error);
    // Order-0 values stay finite on the whole closed interval.
    CHECK(eval_basis(BasisFamily::shifted_power(0.5, 2.0), 1.0, 0)[1] == 0.0);
}

TEST_CASE("finite-difference check of basis derivatives") {
    const BasisFamily families[] = {
        BasisFamily::trigonometric(), BasisFamily::quadratic(), BasisFamily::trinomial(1, 3, 5),
        BasisFamily::shifted_power(1.0, 2.0), BasisFamily::shifted_power(0.7, 2.6)};
    for (const BasisFamily& basis : families) {
        const double T = basis.period();
        const double lo = 0.01 * T, hi = 0.95 * T; // away from singular endpoints
        for (int i = 0; i <= 1000; ++i) {
            const double t = lo + (hi - lo) * i / 1000;
            const Vec3 d1 = basis.eval(t, 1);
            for (int k = 0; k < 3; ++k) {
                const double fd = oracle::central_diff(
                    [&](double s) { return basis.eval(s, 0)[k]; }, t, 1e-6);
                CHECK(oracle::rel_close(d1[k], fd, 1e-6));
            }
        }
    }
}

TEST_CASE("eval_coeffs pinned values") {
    const AbelEquation zero{BasisFamily::trigonometric(), {0, 0, 0}, {0, 0, 0}};
    const Coeffs cz = eval_coeffs(zero, 1.234);
    CHECK(cz.A == 0.0);
    CHECK(cz.B == 0.0);
    CHECK(cz.dA == 0.0);
    CHECK(cz.dB == 0.0);

    // A = t^2/2 + t/4, B = t^2 - 1 at t = 0.
    const AbelEquation rem{BasisFamily::quadratic(), {0.0, 0.25, 0.5}, {-1.0, 0.0, 1.0}};
    const Coeffs cr = eval_coeffs(rem, 0.0);
    CHECK(cr.A == 0.0);
    CHECK(cr.B == -1.0);

    const AbelEquation star{BasisFamily::trigonometric(),
                            {0.0, -6.283185307179586, 0.0},
                            {0.0, 0.0, -6.283185307179586}};
    const Coeffs cs = eval_coeffs(star, 1.5707963267948966);
    CHECK(cs.A == doctest::Approx(-6.283185307179586).epsilon(1e-14));
    CHECK(std::abs(cs.B) < 1e-14);
}

TEST_CASE("evaluation is linear in the coefficient vectors") {
    oracle::Rng rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        AbelEquation e1{BasisFamily::trigonometric(), {}, {}};
        AbelEquation e2 = e1, sum = e1;
        for (int i = 0; i < 3; ++i) {
            e1.lambda[i] = rng.uniform(-2, 2);
            e1.mu[i] = rng.uniform(-2, 2);
            e2.lambda[i] = rng.uniform(-2, 2);
            e2.mu[i] = rng.uniform(-2, 2);
            sum.lambda[i] = e1.lambda[i] + e2.lambda[i];
            sum.mu[i] = e1.mu[i] + e2.mu[i];
        }
        const double t = rng.uniform(0.0, e1.period());
        const Coeffs c1 = eval_coeffs(e1, t), c2 = eval_coeffs(e2, t),
                     cs = eval_coeffs(sum, t);
        CHECK(cs.A == doctest::Approx(c1.A + c2.A).epsilon(1e-15));
        CHECK(cs.B == doctest::Approx(c1.B + c2.B).epsilon(1e-15));
        CHECK(cs.dA == doctest::Approx(c1.dA + c2.dA).epsilon(1e-15));
        CHECK(cs.dB == doctest::Approx(c1.dB + c2.dB).epsilon(1e-15));
    }
}

TEST_CASE("normalize_trinomial exponent map and coefficient scaling") {
    const AbelEquation base{BasisFamily::trinomial(0, 1, 2), {1.0, -2.0, 0.5}, {0.25, 0.0, -1.0}};
    const AbelEquation norm = normalize_trinomial(base);
    CHECK(norm.basis.kind() == BasisKind::ShiftedPower);
    CHECK(norm.basis.alpha() == doctest::Approx(1.0));
    CHECK(norm.basis.beta() == doctest::Approx(2.0));
    for (int i = 0; i < 3; ++i) {
        CHECK(norm.lambda[i] == doctest::Approx(-base.lambda[i]));
        CHECK(norm.mu[i] == doctest::Approx(-base.mu[i]));
    }

    const AbelEquation deg{BasisFamily::trinomial(1, 3, 5), {1, 0, 0}, {0, 1, 0}};
    const AbelEquation dn = normalize_trinomial(deg);
    CHECK(dn.basis.alpha() == doctest::Approx(1.0)); // (3-1)/2
    CHECK(dn.basis.beta() == doctest::Approx(2.0));  // (5-1)/2
    CHECK(dn.lambda[0] == doctest::Approx(-0.5));

    CHECK_THROWS_AS(normalize_trinomial(AbelEquation{BasisFamily::quadratic(), {}, {}}),
                    precondition_error);
}

TEST_CASE("normalize_trinomial preserves the cycle census") {
    const NumericsConfig cfg = fast_config();
    oracle::Rng rng(2024);
    const int m_pool[][3] = {{0, 1, 2}, {1, 3, 5}, {0, 2, 5}, {2, 3, 7}};
    int with_cycles = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto& m = m_pool[rng.pick(4)];
        AbelEquation eq{BasisFamily::trinomial(m[0], m[1], m[2]), {}, {}};
        for (int i = 0; i < 3; ++i) {
            eq.lambda[i] = rng.uniform(-2, 2);
            eq.mu[i] = rng.uniform(-2, 2);
        }
        const AbelEquation norm = normalize_trinomial(eq);
        const CycleCensus c0 = find_cycles(eq, -3.0, 3.0, cfg);
        const CycleCensus c1 = find_cycles(norm, -3.0, 3.0, cfg);
        const auto r0 = census_roots(c0), r1 = census_roots(c1);
        REQUIRE(r0.size() == r1.size());
        // The closed solutions (hence their initial values) coincide.
        for (std::size_t i = 0; i < r0.size(); ++i)
            CHECK(std::abs(r0[i] - r1[i]) < 1e-5 * std::max(1.0, std::abs(r0[i])));
        if (!r0.empty()) ++with_cycles;
    }
    CHECK(with_cycles > 0); // the sample must exercise non-trivial censuses
}
