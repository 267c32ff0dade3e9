#include <doctest.h>

#include <cmath>

#include "abel/chebyshev.hpp"
#include "oracles.hpp"

using namespace abel;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

// det of the (k+1)x(k+1) derivative matrix with derivatives replaced by
// central differences of order-0 evaluations.
double fd_wronskian(const BasisFamily& basis, double t, int k, double h) {
    auto fd1 = [&](int j, double s) {
        return (basis.eval(s + h, 0)[j] - basis.eval(s - h, 0)[j]) / (2.0 * h);
    };
    auto fd2 = [&](int j, double s) {
        return (basis.eval(s + h, 0)[j] - 2.0 * basis.eval(s, 0)[j] +
                basis.eval(s - h, 0)[j]) /
               (h * h);
    };
    const Vec3 f = basis.eval(t, 0);
    if (k == 0) return f[0];
    if (k == 1) return f[0] * fd1(1, t) - f[1] * fd1(0, t);
    const double d10 = fd1(0, t), d11 = fd1(1, t), d12 = fd1(2, t);
    const double d20 = fd2(0, t), d21 = fd2(1, t), d22 = fd2(2, t);
    return f[0] * (d11 * d22 - d12 * d21) - f[1] * (d10 * d22 - d12 * d20) +
           f[2] * (d10 * d21 - d11 * d20);
}

} // namespace

TEST_CASE("Wronskian closed values") {
    const BasisFamily quad = BasisFamily::quadratic();
    for (double t : {0.0, 0.3, 0.99}) CHECK(wronskian(quad, t, 2) == 2.0);
    CHECK(wronskian(quad, 0.4, 0) == 1.0);
    CHECK(wronskian(quad, 0.4, 1) == 1.0);

    const BasisFamily trig = BasisFamily::trigonometric();
    for (double t : {0.0, 1.0, 4.5})
        CHECK(wronskian(trig, t, 2) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("shifted-power Wronskian matches the symbolic closed form") {
    oracle::Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        const double alpha = rng.uniform(0.4, 2.5);
        const double beta = alpha + rng.uniform(0.3, 2.5);
        const BasisFamily sp = BasisFamily::shifted_power(alpha, beta);
        const double t = rng.uniform(0.0, 0.9);
        // Symbolic differentiation gives alpha*beta*(alpha-beta)*(1-t)^(a+b-3);
        // only its non-vanishing enters the certificate.
        const double expected =
            alpha * beta * (alpha - beta) * std::pow(1.0 - t, alpha + beta - 3.0);
        CHECK(oracle::rel_close(wronskian(sp, t, 2), expected, 1e-10));
        CHECK(oracle::rel_close(wronskian(sp, t, 1), -alpha * std::pow(1.0 - t, alpha - 1.0),
                                1e-10));
    }
}

TEST_CASE("Wronskian agrees with finite differences") {
    const BasisFamily families[] = {BasisFamily::trigonometric(), BasisFamily::quadratic(),
                                    BasisFamily::trinomial(1, 2, 4),
                                    BasisFamily::shifted_power(1.5, 3.0)};
    oracle::Rng rng(11);
    for (const BasisFamily& basis : families) {
        for (int i = 0; i < 100; ++i) {
            const double t = rng.uniform(0.05, 0.9) * basis.period();
            for (int k = 0; k < 3; ++k) {
                const double w = wronskian(basis, t, k);
                const double fw = fd_wronskian(basis, t, k, 1e-5);
                CHECK(oracle::rel_close(w, fw, 1e-4));
            }
        }
    }
}

TEST_CASE("certificates per family") {
    const EctCertificate quad = ect_certificate(BasisFamily::quadratic());
    CHECK(quad.ok);
    CHECK(quad.strategy == CertStrategy::WronskianScan);
    CHECK(quad.min_abs_wronskian[0] == doctest::Approx(1.0));
    CHECK(quad.min_abs_wronskian[1] == doctest::Approx(1.0));
    CHECK(quad.min_abs_wronskian[2] == doctest::Approx(2.0));

    const EctCertificate sp = ect_certificate(BasisFamily::shifted_power(1.0, 2.0));
    CHECK(sp.ok);
    CHECK(sp.strategy == CertStrategy::AnalyticShiftedPower);
    CHECK(sp.min_abs_wronskian[2] == doctest::Approx(2.0)); // |1*2*(1-2)| (1-t)^0

    const EctCertificate trig = ect_certificate(BasisFamily::trigonometric());
    CHECK(trig.ok);
    CHECK(trig.strategy == CertStrategy::AnalyticTrig);
    // The Wronskian route indeed fails for this ordering: W_{1,sin} = cos.
    CHECK(trig.min_abs_wronskian[1] < 1e-2);

    CHECK(ect_certificate(BasisFamily::trinomial(1, 3, 5)).ok);
    CHECK_THROWS_AS(ect_certificate(BasisFamily::quadratic(), 100), precondition_error);
}

TEST_CASE("zero_count pinned examples") {
    const BasisFamily trig = BasisFamily::trigonometric();
    CHECK(zero_count(trig, {0.0, 1.0, 0.0}, 0.0, 2.0 * kPi) == 2); // sin: 0 and pi
    CHECK(zero_count(trig, {1.0, 0.0, 1.0}, 0.0, 2.0 * kPi) == 2); // 1 + cos: double at pi

    const ZeroCountResult tangent =
        zero_count_detailed(trig, {1.0, 1.0, 0.0}, 0.0, 2.0 * kPi);
    CHECK(tangent.count == 2); // 1 + sin: double zero at 3pi/2
    REQUIRE(tangent.zeros.size() == 1);
    CHECK(tangent.zeros[0].multiplicity == 2);
    CHECK(tangent.zeros[0].t == doctest::Approx(3.0 * kPi / 2.0).epsilon(1e-6));

    const BasisFamily quad = BasisFamily::quadratic();
    CHECK(zero_count(quad, {1.0, 0.0, 1.0}, 0.0, 1.0) == 0); // 1 + t^2
    CHECK_THROWS_AS(zero_count(quad, {0.0, 0.0, 0.0}, 0.0, 1.0), precondition_error);
}

TEST_CASE("zero_count scale invariance and the certified two-zero cap") {
    oracle::Rng rng(23);
    struct Window {
        BasisFamily basis;
        double lo;
    };
    const Window windows[] = {{BasisFamily::trigonometric(), 0.0},
                              {BasisFamily::quadratic(), 0.0},
                              {BasisFamily::shifted_power(1.0, 2.0), 0.0},
                              {BasisFamily::trinomial(1, 3, 5), 1e-6}};
    for (const Window& w : windows) {
        for (int i = 0; i < 200; ++i) {
            Vec3 c{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
            if (std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) < 1e-3) c[0] += 1.0;
            const int z = zero_count(w.basis, c, w.lo, w.basis.period());
            CHECK(z <= 2);
            const double s = rng.uniform(0.1, 10.0) * (rng.pick(2) ? 1.0 : -1.0);
            const Vec3 cs{s * c[0], s * c[1], s * c[2]};
            CHECK(zero_count(w.basis, cs, w.lo, w.basis.period()) == z);
        }
    }
}

TEST_CASE("accuracy-one falsifier") {
    // A = sin, B = cos: every combination is a pure sinusoid.
    const AbelEquation trig{BasisFamily::trigonometric(), {0, 1, 0}, {0, 0, 1}};
    CHECK(!et_accuracy_falsifier(trig).has_value());

    // A = 1, B = t: affine combinations have at most one zero.
    const AbelEquation affine{BasisFamily::quadratic(), {1, 0, 0}, {0, 1, 0}};
    CHECK(!et_accuracy_falsifier(affine).has_value());

    // t (t^2 - 0.25)(t^2 - 0.64) expanded over {t, t^3, t^5} has three zeros
    // on [0, 1); this family is not ET there before normalization.
    const AbelEquation cubic_like{BasisFamily::trinomial(1, 3, 5),
                                  {0.16, -0.89, 1.0},
                                  {0.0, 0.0, 1.0}};
    const auto cx = et_accuracy_falsifier(cubic_like);
    REQUIRE(cx.has_value());
    CHECK(cx->zeros >= 3);

    CHECK_THROWS_AS(et_accuracy_falsifier(trig, 8), precondition_error);
}
