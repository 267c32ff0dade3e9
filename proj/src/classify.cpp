#include "abel/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "abel/detail/optim.hpp"

namespace abel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kD2MarginRel = 1e-7;  // strict margin required for a D.2 verdict
constexpr double kD1TolRel = 1e-9;     // slack accepted for a D.1 witness
constexpr double kDegenerateRel = 1e-12;

struct GridData {
    std::vector<double> t, A, B;
    double scale_AB = 0.0;
};

GridData sample_AB(const AbelEquation& eq, int grid) {
    GridData g;
    const double T = eq.period();
    g.t.resize(grid + 1);
    g.A.resize(grid + 1);
    g.B.resize(grid + 1);
    for (int i = 0; i <= grid; ++i) {
        g.t[i] = T * i / grid;
        const AB ab = eval_AB(eq, g.t[i]);
        g.A[i] = ab.A;
        g.B[i] = ab.B;
        g.scale_AB = std::max({g.scale_AB, std::abs(ab.A), std::abs(ab.B)});
    }
    return g;
}

// Global minimum of f over [lo, hi]: grid scan plus golden refinement of
// every interior local minimum and both endpoints.
template <class F>
double refined_min(F&& f, double lo, double hi, int grid) {
    std::vector<double> v(grid + 1);
    for (int i = 0; i <= grid; ++i) v[i] = f(lo + (hi - lo) * i / grid);
    double best = v[0];
    const double cell = (hi - lo) / grid;
    for (int i = 1; i < grid; ++i) {
        best = std::min(best, v[i]);
        if (v[i] <= v[i - 1] && v[i] <= v[i + 1]) {
            const double a = lo + cell * (i - 1), b = lo + cell * (i + 1);
            best = std::min(best, detail::golden_min(f, a, b, cell * 1e-8).second);
        }
    }
    best = std::min(best, v[grid]);
    if (v[1] > v[0])
        best = std::min(best, detail::golden_min(f, lo, lo + cell, cell * 1e-8).second);
    if (v[grid - 1] > v[grid])
        best = std::min(best, detail::golden_min(f, hi - cell, hi, cell * 1e-8).second);
    return best;
}

double d2_quantity(const AbelEquation& eq, double t) {
    const Coeffs c = eval_coeffs(eq, t);
    return c.A * c.dB - c.dA * c.B;
}

// A B' - A' B carries a structural power of the distance to the singular
// endpoint of the power families: the pairwise brackets of
// (1, u^a, u^b), u = 1 - t, are multiples of u^(a-1), u^(b-1), u^(a+b-1),
// so the quantity vanishes (a > 1) or diverges (a < 1) at u = 0 no matter
// the coefficients. Dividing by the leading factor yields a function with
// the same sign on the open interval and a bounded, testable margin. The
// monomial family behaves the same way at t = 0 with exponent m0 + m1 - 1.
struct D2Reduction {
    double exponent = 0.0;
    bool at_right = false; // factor in (1 - t) instead of t
};

D2Reduction d2_reduction(const BasisFamily& basis) {
    switch (basis.kind()) {
    case BasisKind::ShiftedPower: return {basis.alpha() - 1.0, true};
    case BasisKind::MonomialTrinomial:
        return {static_cast<double>(basis.m0() + basis.m1() - 1), false};
    default: return {0.0, false};
    }
}

double d2_reduced(const AbelEquation& eq, double t, const D2Reduction& red) {
    const double g = d2_quantity(eq, t);
    if (red.exponent == 0.0) return g;
    const double base = red.at_right ? 1.0 - t : t;
    return g / std::pow(base, red.exponent);
}

struct CertifiedDirection {
    D1Witness witness;
    bool valid = false;
};

D1Witness canonical(double l, double m, SignKind sign, double certified_min) {
    if (l < 0.0 || (l == 0.0 && m < 0.0)) {
        l = -l;
        m = -m;
        sign = sign == SignKind::Plus ? SignKind::Minus : SignKind::Plus;
    }
    return D1Witness{l, m, sign, certified_min};
}

CertifiedDirection certify_direction(const AbelEquation& eq, const GridData& g, double l,
                                     double m) {
    const double nrm = std::hypot(l, m);
    if (!(nrm > 0.0)) return {};
    l /= nrm;
    m /= nrm;

    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -vmin, vabsmax = 0.0;
    for (std::size_t i = 0; i < g.t.size(); ++i) {
        const double v = l * g.A[i] + m * g.B[i];
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        vabsmax = std::max(vabsmax, std::abs(v));
    }
    const double tol = kD1TolRel * std::max(1.0, vabsmax);
    auto value = [&](double t) {
        const AB ab = eval_AB(eq, t);
        return l * ab.A + m * ab.B;
    };
    const int grid = static_cast<int>(g.t.size()) - 1;
    const double T = g.t.back();

    CertifiedDirection out;
    if (vmin >= -tol) {
        const double refined = refined_min(value, 0.0, T, grid);
        if (refined >= -tol) {
            out.valid = true;
            out.witness = canonical(l, m, SignKind::Plus, refined);
        }
    }
    if (!out.valid && vmax <= tol) {
        const double refined = refined_min([&](double t) { return -value(t); }, 0.0, T, grid);
        if (refined >= -tol) {
            out.valid = true;
            out.witness = canonical(l, m, SignKind::Minus, refined);
        }
    }
    return out;
}

} // namespace

std::optional<D2Sign> d2_sign(const AbelEquation& eq, int grid) {
    if (grid < 1024) throw precondition_error("d2_sign grid must be >= 1024");
    const double delta = 1e-9;
    const D2Reduction red = d2_reduction(eq.basis);
    double lo = eq.basis.cert_lo(delta);
    const double hi = eq.basis.cert_hi(delta);
    if (red.exponent != 0.0 && !red.at_right) lo = std::max(lo, delta);

    std::vector<double> g(grid + 1);
    double scale = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double t = lo + (hi - lo) * i / grid;
        g[i] = d2_reduced(eq, t, red);
        scale = std::max(scale, std::abs(g[i]));
    }
    scale = std::max(scale, 1e-300);

    double gmax = -std::numeric_limits<double>::infinity(), gmin = -gmax;
    for (double v : g) {
        gmax = std::max(gmax, v);
        gmin = std::min(gmin, v);
    }
    if (std::max(std::abs(gmax), std::abs(gmin)) < kDegenerateRel * scale)
        return std::nullopt; // proportional pair, quantity vanishes identically

    const double band = kDegenerateRel * scale;
    const bool has_pos = gmax > band, has_neg = gmin < -band;
    if (has_pos && has_neg) return std::nullopt;

    const double min_abs =
        refined_min([&](double t) { return std::abs(d2_reduced(eq, t, red)); }, lo, hi, grid);
    if (min_abs > kD2MarginRel * scale)
        return D2Sign{has_pos ? SignKind::Plus : SignKind::Minus, min_abs};
    throw indeterminate_error("A B' - A' B enters the tolerance band without a sign change");
}

std::optional<D1Witness> d1_witness(const AbelEquation& eq, int grid) {
    if (grid < 256) throw precondition_error("d1_witness grid must be >= 256");
    const GridData g = sample_AB(eq, grid);
    if (g.scale_AB < 1e-300) {
        // A = B = 0: every direction certifies the zero combination.
        return D1Witness{1.0, 0.0, SignKind::Plus, 0.0};
    }

    // Stage (a): constructive candidates at zeros of A B' - A' B, in a fixed
    // order so the returned witness is deterministic and invariant under
    // positive rescaling of (A, B).
    const double delta = 1e-9;
    const D2Reduction red = d2_reduction(eq.basis);
    double lo = eq.basis.cert_lo(delta);
    const double hi = eq.basis.cert_hi(delta);
    if (red.exponent != 0.0 && !red.at_right) lo = std::max(lo, delta);
    std::vector<double> zeros;
    bool degenerate = false;
    double t_peak = lo;
    {
        std::vector<double> q(grid + 1);
        double qscale = 0.0, peak = -1.0;
        for (int i = 0; i <= grid; ++i) {
            const double t = lo + (hi - lo) * i / grid;
            q[i] = d2_reduced(eq, t, red);
            qscale = std::max(qscale, std::abs(q[i]));
            const AB ab = eval_AB(eq, t);
            if (std::abs(ab.A) + std::abs(ab.B) > peak) {
                peak = std::abs(ab.A) + std::abs(ab.B);
                t_peak = t;
            }
        }
        degenerate = qscale <= 1e-14 * g.scale_AB * g.scale_AB;
        if (!degenerate) {
            for (int i = 0; i < grid; ++i) {
                if ((q[i] < 0.0) != (q[i + 1] < 0.0)) {
                    const double a = lo + (hi - lo) * i / grid;
                    const double b = lo + (hi - lo) * (i + 1) / grid;
                    zeros.push_back(
                        detail::bisect([&](double t) { return d2_reduced(eq, t, red); }, a, b,
                                       q[i], q[i + 1], (hi - lo) * 1e-12));
                } else if (std::abs(q[i]) < 1e-9 * qscale) {
                    zeros.push_back(lo + (hi - lo) * i / grid);
                }
            }
        }
    }
    std::vector<std::pair<double, double>> candidates;
    if (degenerate) {
        // Proportional (or one-coefficient) pair: A and B alone, then the
        // exact annihilating direction at the largest sample.
        const AB ab = eval_AB(eq, t_peak);
        candidates = {{1.0, 0.0}, {0.0, 1.0}, {ab.B, -ab.A}};
    }
    for (double t0 : zeros) {
        const Coeffs c = eval_coeffs(eq, t0);
        candidates.emplace_back(1.0, 0.0);
        candidates.emplace_back(0.0, 1.0);
        candidates.emplace_back(c.B, -c.A);
        candidates.emplace_back(c.dB, -c.dA);
    }
    for (const auto& [l, m] : candidates) {
        const CertifiedDirection c = certify_direction(eq, g, l, m);
        if (c.valid) return c.witness;
    }

    // Stage (b): maximize over unit directions the worst-case margin
    // min_t cos(theta) A + sin(theta) B, coarse scan then golden refinement.
    const int coarse = 720;
    auto margin_of = [&](double theta) {
        const double l = std::cos(theta), m = std::sin(theta);
        double vmin = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < g.t.size(); ++i)
            vmin = std::min(vmin, l * g.A[i] + m * g.B[i]);
        return vmin;
    };
    double best_theta = 0.0, best_margin = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < coarse; ++j) {
        const double theta = kTwoPi * j / coarse;
        const double v = margin_of(theta);
        if (v > best_margin) {
            best_margin = v;
            best_theta = theta;
        }
    }
    const double dtheta = kTwoPi / coarse;
    const auto [theta_star, margin_star] =
        detail::golden_max(margin_of, best_theta - dtheta, best_theta + dtheta, 1e-12);
    (void)margin_star;
    const CertifiedDirection c =
        certify_direction(eq, g, std::cos(theta_star), std::sin(theta_star));
    if (c.valid) return c.witness;
    return std::nullopt;
}

ClassificationResult classify(const AbelEquation& eq, int grid) {
    ClassificationResult res;
    res.d2 = d2_sign(eq, std::max(grid, 1024));
    res.d1 = d1_witness(eq, std::max(grid, 256));
    if (res.d1 && res.d2)
        res.verdict = Verdict::Both;
    else if (res.d1)
        res.verdict = Verdict::D1Only;
    else if (res.d2)
        res.verdict = Verdict::D2Only;
    else
        res.verdict = Verdict::Neither;
    res.in_L1 = res.d1.has_value();
    res.in_LH = res.d2.has_value() && !res.in_L1;
    res.flipped_for_H = res.d2.has_value() && res.d2->sign == SignKind::Plus;
    return res;
}

ComboRange combo_range(const AbelEquation& eq, double lambda, double mu, int grid) {
    auto value = [&](double t) {
        const AB ab = eval_AB(eq, t);
        return lambda * ab.A + mu * ab.B;
    };
    const double T = eq.period();
    ComboRange r;
    r.min = refined_min(value, 0.0, T, grid);
    r.max = -refined_min([&](double t) { return -value(t); }, 0.0, T, grid);
    return r;
}

} // namespace abel
