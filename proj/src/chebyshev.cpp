#include "abel/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abel/detail/optim.hpp"

namespace abel {

namespace {

constexpr double kCertThreshold = 1e-9;
constexpr double kCertMargin = 1e-9;
constexpr double kPi = 3.14159265358979323846264338327950288;

double combo(const BasisFamily& basis, const Vec3& c, double t) {
    const Vec3 f = basis.eval(t, 0);
    return c[0] * f[0] + c[1] * f[1] + c[2] * f[2];
}

double combo_deriv(const BasisFamily& basis, const Vec3& c, double t) {
    const Vec3 df = basis.eval(t, 1);
    return c[0] * df[0] + c[1] * df[1] + c[2] * df[2];
}

} // namespace

double wronskian(const BasisFamily& basis, double t, int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("Wronskian order must be 0, 1 or 2");
    const Vec3 f = basis.eval(t, 0);
    if (k == 0) return f[0];
    const Vec3 d1 = basis.eval(t, 1);
    if (k == 1) return f[0] * d1[1] - f[1] * d1[0];
    const Vec3 d2 = basis.eval(t, 2);
    return f[0] * (d1[1] * d2[2] - d1[2] * d2[1]) - f[1] * (d1[0] * d2[2] - d1[2] * d2[0]) +
           f[2] * (d1[0] * d2[1] - d1[1] * d2[0]);
}

EctCertificate ect_certificate(const BasisFamily& basis, int grid) {
    if (grid < 256) throw precondition_error("certificate grid must be >= 256");
    EctCertificate cert;

    const double lo = basis.cert_lo(kCertMargin);
    const double hi = basis.cert_hi(kCertMargin);
    for (int k = 0; k < 3; ++k) {
        double m = std::numeric_limits<double>::infinity();
        double argmin = lo;
        for (int i = 0; i <= grid; ++i) {
            const double t = lo + (hi - lo) * i / grid;
            const double w = std::abs(wronskian(basis, t, k));
            if (w < m) {
                m = w;
                argmin = t;
            }
        }
        cert.min_abs_wronskian[k] = m;
        if (m <= kCertThreshold && !cert.failure_point) cert.failure_point = argmin;
    }

    switch (basis.kind()) {
    case BasisKind::QuadraticPolynomial:
        cert.strategy = CertStrategy::WronskianScan;
        cert.ok = cert.min_abs_wronskian[0] > kCertThreshold &&
                  cert.min_abs_wronskian[1] > kCertThreshold &&
                  cert.min_abs_wronskian[2] > kCertThreshold;
        if (cert.ok) cert.failure_point.reset();
        break;
    case BasisKind::Trigonometric:
        // W_{1,sin} = cos t vanishes, so the Wronskian route fails for this
        // ordering; c0 + c1 sin + c2 cos = c0 + R sin(t + phase) has at most
        // two zeros on [0, 2pi) counted with multiplicity.
        cert.strategy = CertStrategy::AnalyticTrig;
        cert.ok = true;
        cert.failure_point.reset();
        break;
    case BasisKind::ShiftedPower:
        // W0 = 1, W1 = -alpha (1-t)^(alpha-1), W2 = alpha beta (alpha-beta)
        // (1-t)^(alpha+beta-3): all non-vanishing on [0, 1) since
        // 0 < alpha < beta. The scan minima can still approach zero at the
        // right endpoint, hence the analytic route.
        cert.strategy = CertStrategy::AnalyticShiftedPower;
        cert.ok = basis.alpha() > 0.0 && basis.beta() > basis.alpha();
        cert.failure_point.reset();
        break;
    case BasisKind::MonomialTrinomial:
        // W2 = (m1-m0)(m2-m0)(m2-m1) t^(m0+m1+m2-3): non-vanishing on (0, 1].
        cert.strategy = CertStrategy::AnalyticMonomial;
        cert.ok = true;
        cert.failure_point.reset();
        break;
    }
    return cert;
}

ZeroCountResult zero_count_detailed(const BasisFamily& basis, const Vec3& c, double lo,
                                    double hi, int grid) {
    if (c[0] == 0.0 && c[1] == 0.0 && c[2] == 0.0)
        throw precondition_error("zero_count requires a non-trivial combination");
    if (grid < 64) grid = 64;

    // Order-0 values are finite on all of [0, T]; only the half-open right
    // end needs a margin so a zero converging to T is not counted.
    const double end_margin = 1e-7 * basis.period();
    const double a = std::max(lo, 0.0);
    const double b = std::min(hi - end_margin, basis.period());
    if (!(b > a)) return {};

    std::vector<double> ts(grid + 1), g(grid + 1);
    double scale_f = 0.0;
    for (int i = 0; i <= grid; ++i) {
        ts[i] = a + (b - a) * i / grid;
        g[i] = combo(basis, c, ts[i]);
        const Vec3 f = basis.eval(ts[i], 0);
        scale_f = std::max({scale_f, std::abs(f[0]), std::abs(f[1]), std::abs(f[2])});
    }
    const double cnorm = std::max({std::abs(c[0]), std::abs(c[1]), std::abs(c[2])});
    const double tol = 1e-8 * cnorm * scale_f;

    ZeroCountResult out;
    auto g_of = [&](double t) { return combo(basis, c, t); };

    // Pass 1: clusters of nodes with |g| < tol become single zero events.
    std::vector<bool> in_cluster(grid + 1, false);
    int i = 0;
    while (i <= grid) {
        if (std::abs(g[i]) >= tol) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 <= grid && std::abs(g[j + 1]) < tol) ++j;
        for (int k = i; k <= j; ++k) in_cluster[k] = true;
        const double t_evt = 0.5 * (ts[i] + ts[j]);
        const bool has_left = i > 0, has_right = j < grid;
        int mult;
        if (has_left && has_right) {
            mult = (g[i - 1] < 0.0) != (g[j + 1] < 0.0) ? 1 : 2;
        } else {
            // Boundary zero: classify by the one-sided slope.
            const double d = combo_deriv(basis, c, t_evt);
            mult = std::abs(d) > tol / (b - a) * grid * 0.01 ? 1 : 2;
        }
        if (mult == 2 && has_left && has_right) {
            // A same-sign crossing must be a genuine tangency: the slope
            // changes sign from one side of the cluster to the other.
            const double dl = combo_deriv(basis, c, ts[i - 1]);
            const double dr = combo_deriv(basis, c, ts[j + 1]);
            if ((dl < 0.0) == (dr < 0.0) && dl != 0.0 && dr != 0.0)
                throw unresolved_zero("near-zero cell without slope change");
        }
        out.zeros.push_back({t_evt, mult});
        out.count += mult;
        i = j + 1;
    }

    // Pass 2: plain sign changes between non-cluster nodes.
    for (int k = 0; k < grid; ++k) {
        if (in_cluster[k] || in_cluster[k + 1]) continue;
        if ((g[k] < 0.0) != (g[k + 1] < 0.0)) {
            const double r = detail::bisect(g_of, ts[k], ts[k + 1], g[k], g[k + 1],
                                            (b - a) * 1e-13);
            out.zeros.push_back({r, 1});
            out.count += 1;
        }
    }

    // Pass 3: interior local minima of |g| that refine below tolerance are
    // tangential zeros of multiplicity two.
    for (int k = 1; k < grid; ++k) {
        if (in_cluster[k - 1] || in_cluster[k] || in_cluster[k + 1]) continue;
        if ((g[k - 1] < 0.0) != (g[k + 1] < 0.0)) continue;
        if (std::abs(g[k]) >= std::abs(g[k - 1]) || std::abs(g[k]) >= std::abs(g[k + 1]))
            continue;
        auto [t_min, v_min] =
            detail::golden_min([&](double t) { return std::abs(g_of(t)); }, ts[k - 1],
                               ts[k + 1], (b - a) * 1e-12);
        if (v_min < tol) {
            out.zeros.push_back({t_min, 2});
            out.count += 2;
        }
    }

    std::sort(out.zeros.begin(), out.zeros.end(),
              [](const ZeroInfo& u, const ZeroInfo& v) { return u.t < v.t; });
    return out;
}

int zero_count(const BasisFamily& basis, const Vec3& c, double lo, double hi, int grid) {
    return zero_count_detailed(basis, c, lo, hi, grid).count;
}

std::optional<EtCounterexample> et_accuracy_falsifier(const AbelEquation& eq, int samples) {
    if (samples < 64) throw precondition_error("falsifier needs at least 64 samples");
    const double T = eq.period();
    for (int j = 0; j < samples; ++j) {
        // Directions modulo sign: (l, m) and (-l, -m) have the same zeros.
        const double theta = kPi * j / samples;
        const double l = std::cos(theta), m = std::sin(theta);
        Vec3 c;
        for (int i = 0; i < 3; ++i) c[i] = l * eq.lambda[i] + m * eq.mu[i];
        if (std::abs(c[0]) + std::abs(c[1]) + std::abs(c[2]) < 1e-15) continue;
        const int z = zero_count(eq.basis, c, 0.0, T);
        if (z > 2) return EtCounterexample{l, m, z};
    }
    return std::nullopt;
}

} // namespace abel
