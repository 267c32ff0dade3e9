#include "abel/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "abel/detail/optim.hpp"
#include "abel/detail/rk45.hpp"

namespace abel {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLyapZeroRel = 1e-10;

struct Moments {
    Vec3 I;
    std::array<std::array<double, 3>, 3> Imat;
};

// int_0^1 t^a * (t^(b+1)/(b+1)) dt and friends.
Moments power_moments(const std::array<double, 3>& p) {
    Moments m;
    for (int i = 0; i < 3; ++i) m.I[i] = 1.0 / (p[i] + 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m.Imat[i][j] = 1.0 / ((p[j] + 1.0) * (p[i] + p[j] + 2.0));
    return m;
}

// Antiderivatives F_j(t) = int_0^t (1-s)^(p_j) ds = (1 - (1-t)^(p_j+1))/(p_j+1).
Moments shifted_moments(const std::array<double, 3>& p) {
    Moments m;
    for (int i = 0; i < 3; ++i) m.I[i] = 1.0 / (p[i] + 1.0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m.Imat[i][j] =
                (1.0 / (p[j] + 1.0)) * (1.0 / (p[i] + 1.0) - 1.0 / (p[i] + p[j] + 2.0));
    return m;
}

Moments trig_moments() {
    Moments m;
    m.I = {2.0 * kPi, 0.0, 0.0};
    m.Imat = {{{2.0 * kPi * kPi, 2.0 * kPi, 0.0}, {-2.0 * kPi, 0.0, kPi}, {0.0, -kPi, 0.0}}};
    return m;
}

Moments family_moments(const BasisFamily& basis) {
    switch (basis.kind()) {
    case BasisKind::Trigonometric: return trig_moments();
    case BasisKind::QuadraticPolynomial: return power_moments({0.0, 1.0, 2.0});
    case BasisKind::MonomialTrinomial:
        return power_moments({static_cast<double>(basis.m0()), static_cast<double>(basis.m1()),
                              static_cast<double>(basis.m2())});
    case BasisKind::ShiftedPower: return shifted_moments({0.0, basis.alpha(), basis.beta()});
    }
    throw std::logic_error("unreachable basis kind");
}

double inf_norm(const Vec3& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

struct Node {
    double x;
    bool escaped;
    double d;
    double dP;
};

Node probe(const AbelEquation& eq, double x0, const NumericsConfig& cfg) {
    const PoincareResult pr = poincare(eq, x0, cfg);
    if (pr.outcome == FlowOutcome::BlowUp) return {x0, true, 0.0, 0.0};
    return {x0, false, pr.ret.P - x0, pr.ret.dP};
}

double noise_floor(double x, const NumericsConfig& cfg) {
    return 50.0 * (cfg.ode_abs_tol + cfg.ode_rel_tol * std::abs(x));
}

// Safeguarded Newton on d(x) = P(x) - x with derivative dP - 1, falling back
// to bisection whenever the step leaves the bracket.
LimitCycle refine_simple_root(const AbelEquation& eq, double lo, double hi, double d_lo,
                              double d_hi, const NumericsConfig& cfg) {
    double x = 0.5 * (lo + hi);
    double d = 0.0, dP = 1.0;
    bool have_point = false;
    for (int it = 0; it < cfg.newton_max_iter; ++it) {
        const Node n = probe(eq, x, cfg);
        if (n.escaped) throw unresolved_root("escape inside a root bracket");
        d = n.d;
        dP = n.dP;
        have_point = true;
        if ((d < 0.0) == (d_lo < 0.0)) {
            lo = x;
            d_lo = d;
        } else {
            hi = x;
            d_hi = d;
        }
        const double width = hi - lo;
        if (std::abs(d) <= cfg.newton_tol * std::max(1.0, std::abs(x)) ||
            width <= 1e-15 * std::max(1.0, std::abs(x)))
            break;
        double x_next = x - d / (dP - 1.0);
        if (!std::isfinite(x_next) || x_next <= lo || x_next >= hi)
            x_next = 0.5 * (lo + hi);
        x = x_next;
    }
    if (!have_point) throw unresolved_root("empty refinement");

    LimitCycle c;
    c.x0 = x;
    c.residual = std::abs(d);
    c.dP = dP;
    c.multiplicity = 1;
    // Bracket signs grade stability robustly even when dP is close to 1:
    // d > 0 below and d < 0 above means orbits converge onto the cycle.
    if (std::abs(dP - 1.0) > 1e-6)
        c.stability = dP < 1.0 ? Stability::Stable : Stability::Unstable;
    else
        c.stability = (d_lo > 0.0 && d_hi < 0.0) ? Stability::Stable : Stability::Unstable;
    return c;
}

std::optional<LimitCycle> refine_tangential(const AbelEquation& eq, double lo, double hi,
                                            const NumericsConfig& cfg) {
    auto abs_d = [&](double x) {
        const Node n = probe(eq, x, cfg);
        return n.escaped ? std::numeric_limits<double>::infinity() : std::abs(n.d);
    };
    auto [x_min, d_min] = detail::golden_min(abs_d, lo, hi, 1e-13 * std::max(1.0, hi));
    const double resid_tol =
        std::max(noise_floor(x_min, cfg), 1e-10 * std::max(1.0, std::abs(x_min)));
    if (d_min > resid_tol) return std::nullopt;

    const PoincareResult pr = poincare(eq, x_min, cfg, true);
    if (pr.outcome == FlowOutcome::BlowUp) return std::nullopt;
    if (std::abs(pr.ret.dP - 1.0) >= cfg.double_cycle_tol) return std::nullopt;

    // Local parabola fit d ~ a (x - x*)^2 must agree in sign with d2P.
    const double step = std::max(1e-7, 1e-4 * std::abs(x_min));
    const Node nl = probe(eq, x_min - step, cfg);
    const Node nr = probe(eq, x_min + step, cfg);
    if (!nl.escaped && !nr.escaped) {
        const double a = (nl.d + nr.d - 2.0 * (pr.ret.P - x_min)) / (step * step);
        if (pr.ret.d2P && *pr.ret.d2P != 0.0 && a * *pr.ret.d2P < 0.0 &&
            std::abs(a) * step * step > 4.0 * noise_floor(x_min, cfg))
            return std::nullopt;
    }

    LimitCycle c;
    c.x0 = x_min;
    c.residual = d_min;
    c.dP = pr.ret.dP;
    c.multiplicity = 2;
    c.d2P = pr.ret.d2P;
    c.stability = (pr.ret.d2P && *pr.ret.d2P < 0.0) ? Stability::SemistableLowerUnstable
                                                    : Stability::SemistableLowerStable;
    return c;
}

// Logarithmic grid on [a, b], 0 < a < b, ascending.
std::vector<double> log_grid(double a, double b, int n) {
    std::vector<double> xs(n);
    const double r = std::log(b / a);
    for (int i = 0; i < n; ++i) xs[i] = a * std::exp(r * i / (n - 1));
    xs.front() = a;
    xs.back() = b;
    return xs;
}

void scan_region(const AbelEquation& eq, double a, double b, bool negative,
                 const NumericsConfig& cfg, const std::vector<double>& seeds,
                 std::vector<LimitCycle>& out,
                 std::vector<std::pair<double, double>>& gaps) {
    const int n = std::max(cfg.grid_points, 16);
    std::vector<double> xs = log_grid(a, b, n);
    // Seeds arrive as magnitudes; the mirror below maps them to the region.
    for (double s : seeds)
        if (s > a && s < b) xs.push_back(s);
    std::sort(xs.begin(), xs.end());
    if (negative) {
        // Mirror to the negative side, keeping ascending order.
        std::vector<double> neg(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) neg[i] = -xs[xs.size() - 1 - i];
        xs = std::move(neg);
    }

    std::vector<Node> nodes;
    nodes.reserve(xs.size());
    for (double x : xs) nodes.push_back(probe(eq, x, cfg));

    // Record maximal escaped runs as census gaps.
    for (std::size_t i = 0; i < nodes.size();) {
        if (!nodes[i].escaped) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < nodes.size() && nodes[j + 1].escaped) ++j;
        gaps.emplace_back(nodes[i].x, nodes[j].x);
        i = j + 1;
    }

    auto emit = [&](LimitCycle c) {
        for (const LimitCycle& prev : out) {
            const double sep = 1e-7 * std::max(1.0, std::abs(c.x0));
            if (std::abs(prev.x0 - c.x0) < sep) return;
        }
        out.push_back(c);
    };

    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const Node& L = nodes[i];
        Node R = nodes[i + 1];
        if (L.escaped && R.escaped) continue;
        if (L.escaped != R.escaped) {
            // Completion boundary: shrink the escaped side onto the boundary
            // and look for a sign change against the completed edge.
            Node comp = L.escaped ? R : L;
            double esc_x = L.escaped ? L.x : R.x;
            for (int it = 0; it < 40; ++it) {
                const double mid = 0.5 * (comp.x + esc_x);
                const Node nm = probe(eq, mid, cfg);
                if (nm.escaped) {
                    esc_x = mid;
                    continue;
                }
                if ((nm.d < 0.0) != (comp.d < 0.0)) {
                    LimitCycle c = L.escaped
                                       ? refine_simple_root(eq, nm.x, comp.x, nm.d, comp.d, cfg)
                                       : refine_simple_root(eq, comp.x, nm.x, comp.d, nm.d, cfg);
                    emit(c);
                    break;
                }
                comp = nm;
                if (std::abs(esc_x - comp.x) < 1e-12 * std::max(1.0, std::abs(esc_x))) break;
            }
            continue;
        }
        if ((L.d < 0.0) != (R.d < 0.0)) {
            emit(refine_simple_root(eq, L.x, R.x, L.d, R.d, cfg));
            continue;
        }
        // Tangential candidate: interior local minimum of |d| close to a
        // unit multiplier.
        if (i > 0 && !nodes[i - 1].escaped) {
            const Node& P = nodes[i - 1];
            if ((P.d < 0.0) == (R.d < 0.0) && std::abs(L.d) < std::abs(P.d) &&
                std::abs(L.d) <= std::abs(R.d) && std::abs(L.dP - 1.0) < cfg.double_cycle_tol &&
                std::abs(L.d) < 1e-6 * std::max(1.0, std::abs(L.x))) {
                if (auto c = refine_tangential(eq, P.x, R.x, cfg)) emit(*c);
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const LimitCycle& u, const LimitCycle& v) { return u.x0 < v.x0; });
}

} // namespace

LyapunovReport lyapunov_constants(const AbelEquation& eq, const NumericsConfig& cfg) {
    (void)cfg;
    const Moments m = family_moments(eq.basis);
    LyapunovReport rep;
    rep.I = m.I;
    rep.Imat = m.Imat;

    double v2 = 0.0, v3 = 0.0, v4 = 0.0;
    for (int i = 0; i < 3; ++i) {
        v2 += eq.mu[i] * m.I[i];
        v3 += eq.lambda[i] * m.I[i];
        for (int j = 0; j < 3; ++j) v4 += eq.lambda[i] * eq.mu[j] * m.Imat[i][j];
    }
    rep.V2 = v2;

    const double imax = inf_norm(m.I);
    const double tol2 = kLyapZeroRel * std::max(1.0, inf_norm(eq.mu) * imax);
    const double tol3 = kLyapZeroRel * std::max(1.0, inf_norm(eq.lambda) * imax);
    double immax = 0.0;
    for (const auto& row : m.Imat)
        for (double v : row) immax = std::max(immax, std::abs(v));
    const double tol4 =
        kLyapZeroRel * std::max(1.0, inf_norm(eq.lambda) * inf_norm(eq.mu) * immax);

    const bool z2 = std::abs(v2) <= tol2;
    if (z2) rep.V3 = v3;
    const bool z3 = z2 && std::abs(v3) <= tol3;
    if (z3) rep.V4 = v4;
    const bool z4 = z3 && std::abs(v4) <= tol4;

    if (!z2) {
        rep.origin_multiplicity = OriginClass::Multiplicity2;
        rep.origin_stability = v2 > 0.0 ? Stability::SemistableLowerStable
                                        : Stability::SemistableLowerUnstable;
    } else if (!z3) {
        rep.origin_multiplicity = OriginClass::Multiplicity3;
        rep.origin_stability = v3 > 0.0 ? Stability::Unstable : Stability::Stable;
    } else if (!z4) {
        rep.origin_multiplicity = OriginClass::Multiplicity4;
        rep.origin_stability = v4 > 0.0 ? Stability::SemistableLowerStable
                                        : Stability::SemistableLowerUnstable;
    } else {
        rep.origin_multiplicity = OriginClass::CenterSuspect;
        rep.origin_stability = Stability::Stable;
    }
    return rep;
}

LyapunovDirect lyapunov_direct(const AbelEquation& eq, const NumericsConfig& cfg) {
    // State: (int B, int A, int_0^t B, int A * running int B).
    const double T = eq.period();
    auto rhs = [&](double t, const detail::State<4>& y, detail::State<4>& dy) {
        const AB ab = eval_AB(eq, std::min(t, T));
        dy[0] = ab.B;
        dy[1] = ab.A;
        dy[2] = ab.B;
        dy[3] = ab.A * y[2];
    };
    detail::RkOptions opt;
    opt.rel_tol = std::min(cfg.quad_tol, 1e-12);
    opt.abs_tol = std::min(cfg.quad_tol, 1e-12) * 0.01;
    const auto res = detail::rk45_integrate<4>(rhs, {0.0, 0.0, 0.0, 0.0}, 0.0, T, opt);
    if (res.stop != detail::RkStop::Done)
        throw step_failure("quadrature underflow in lyapunov_direct()");
    return {res.y[0], res.y[1], res.y[3]};
}

CycleCensus find_cycles_seeded(const AbelEquation& eq, double x_lo, double x_hi,
                               const NumericsConfig& cfg, const std::vector<double>& seeds) {
    if (!(x_hi > x_lo)) throw precondition_error("empty census window");
    CycleCensus census;
    census.origin = lyapunov_constants(eq, cfg);

    std::vector<double> seed_mag;
    for (double s : seeds) seed_mag.push_back(std::abs(s));

    if (x_hi > cfg.origin_exclusion)
        scan_region(eq, std::max(cfg.origin_exclusion, x_lo), x_hi, false, cfg, seed_mag,
                    census.positive, census.escape_gaps);
    if (x_lo < -cfg.origin_exclusion)
        scan_region(eq, cfg.origin_exclusion, -x_lo, true, cfg, seed_mag, census.negative,
                    census.escape_gaps);
    std::sort(census.escape_gaps.begin(), census.escape_gaps.end());

    // A displacement vanishing at spread-out probes signals a continuum of
    // closed solutions; suppress the census rather than emit spurious roots.
    if (census.origin.origin_multiplicity == OriginClass::CenterSuspect) {
        int tested = 0, flat = 0;
        for (int k = 0; k < 16; ++k) {
            const double frac = (k + 0.5) / 16.0;
            const double x = (k % 2 == 0 ? 1.0 : -1.0) *
                             (cfg.origin_exclusion +
                              frac * (std::min(x_hi, 1.0) - cfg.origin_exclusion));
            if (x < x_lo || x > x_hi) continue;
            const Node n = probe(eq, x, cfg);
            if (n.escaped) continue;
            ++tested;
            if (std::abs(n.d) < noise_floor(x, cfg)) ++flat;
        }
        if (tested >= 4 && flat == tested) {
            census.center_suspect = true;
            census.positive.clear();
            census.negative.clear();
        }
    }

    census.total_with_multiplicity = 0;
    for (const LimitCycle& c : census.positive) census.total_with_multiplicity += c.multiplicity;
    for (const LimitCycle& c : census.negative) census.total_with_multiplicity += c.multiplicity;
    census.bound_satisfied = census.total_with_multiplicity <= 2;
    return census;
}

CycleCensus find_cycles(const AbelEquation& eq, double x_lo, double x_hi,
                        const NumericsConfig& cfg) {
    return find_cycles_seeded(eq, x_lo, x_hi, cfg, {});
}

IsoclineDiagnostics isocline_diagnostics(const AbelEquation& eq, const LimitCycle& cycle,
                                         const NumericsConfig& cfg) {
    const double T = eq.period();
    IsoclineDiagnostics diag;

    // Simple zeros of A in (0, T).
    const int n = 4096;
    std::vector<double> av(n + 1);
    for (int i = 0; i <= n; ++i) av[i] = eval_A(eq, T * i / n);
    for (int i = 0; i < n; ++i) {
        if ((av[i] < 0.0) != (av[i + 1] < 0.0)) {
            const double z = detail::bisect([&](double t) { return eval_A(eq, t); }, T * i / n,
                                            T * (i + 1) / n, av[i], av[i + 1], T * 1e-13);
            if (z > 0.0 && z < T) diag.A_zeros.push_back(z);
        }
    }

    // Dense samples preferred; a grazing cycle may only complete under the
    // census stepping, so fall back to an uncapped pass.
    Trajectory traj = integrate(eq, cycle.x0, T, cfg, T / 2048.0);
    if (traj.outcome != FlowOutcome::Completed) traj = integrate(eq, cycle.x0, T, cfg);
    if (traj.outcome != FlowOutcome::Completed)
        throw precondition_error("cycle trajectory escaped; not a cycle");
    // A strongly repelling cycle (multiplier e.g. 1e10) cannot be re-traced
    // in double precision: the sampled orbit fails to close and its crossing
    // structure is meaningless. A mild peel-off still shadows the cycle well
    // enough to count transversal crossings, so only orbits that miss closure
    // by more than 1e-3 relative are refused.
    const double closure = std::abs(traj.x.back() - cycle.x0);
    if (closure > 1e-3 * std::max(1.0, std::abs(cycle.x0)))
        throw precondition_error("cycle is too repelling to re-trace; diagnostics refused");

    // Crossings of the isocline are the zeros of q = A x + B (= x'/x^2).
    std::vector<double> q(traj.t.size());
    for (std::size_t i = 0; i < traj.t.size(); ++i) {
        const AB ab = eval_AB(eq, std::min(traj.t[i], T));
        q[i] = ab.A * traj.x[i] + ab.B;
    }
    for (std::size_t i = 0; i + 1 < q.size(); ++i) {
        if (traj.t[i + 1] <= 0.0 || traj.t[i] >= T) continue;
        if ((q[i] < 0.0) != (q[i + 1] < 0.0)) {
            const double tz = traj.t[i] +
                              (traj.t[i + 1] - traj.t[i]) * (0.0 - q[i]) / (q[i + 1] - q[i]);
            if (tz > 0.0 && tz < T) diag.crossing_times.push_back(tz);
        }
    }
    diag.crossings = static_cast<int>(diag.crossing_times.size());

    // Extrema of the sampled cycle: slope sign changes.
    int extrema = 0;
    double prev_slope = 0.0;
    for (std::size_t i = 0; i + 1 < traj.x.size(); ++i) {
        const double slope = traj.x[i + 1] - traj.x[i];
        if (slope == 0.0) continue;
        if (prev_slope != 0.0 && (slope < 0.0) != (prev_slope < 0.0)) ++extrema;
        prev_slope = slope;
    }
    diag.extrema = extrema;

    // At most one crossing per connected component of {A != 0}.
    std::vector<int> per_component(diag.A_zeros.size() + 1, 0);
    for (double tc : diag.crossing_times) {
        std::size_t comp = 0;
        while (comp < diag.A_zeros.size() && tc > diag.A_zeros[comp]) ++comp;
        per_component[comp] += 1;
    }
    for (int c : per_component)
        if (c > 1) diag.per_component_ok = false;

    if (diag.crossings < 1 || diag.crossings > 2 || !diag.per_component_ok)
        throw diagnostic_failure("isocline crossing structure violates the one-per-component "
                                 "bound; numerics suspect");
    return diag;
}

BoundCheck verify_bound(const AbelEquation& eq, const NumericsConfig& cfg) {
    BoundCheck out;
    out.classification = classify(eq);
    out.census = find_cycles(eq, -cfg.window_hi, cfg.window_hi, cfg);
    out.consistent = true;

    const LyapunovReport& origin = out.census.origin;
    int pos = 0, neg = 0;
    for (const LimitCycle& c : out.census.positive) pos += c.multiplicity;
    for (const LimitCycle& c : out.census.negative) neg += c.multiplicity;
    const int total = pos + neg;

    auto fail = [&](const std::string& why) {
        out.consistent = false;
        if (!out.detail.empty()) out.detail += "; ";
        out.detail += why;
    };

    if (out.census.center_suspect) {
        if (!out.classification.in_L1)
            fail("continuum of closed solutions outside the one-signed-combination class");
        return out;
    }

    if (out.classification.in_L1) {
        if (total > 1) fail("more than one non-zero cycle under a one-signed combination");
        for (const LimitCycle& c : out.census.all())
            if (c.multiplicity != 1) fail("non-hyperbolic cycle under a one-signed combination");
        if (origin.origin_multiplicity == OriginClass::Multiplicity3 && total != 0)
            fail("x = 0 should be the unique limit cycle when V2 = 0, V3 != 0");
    } else if (out.classification.in_LH) {
        // Work in the orientation with A'B - AB' > 0; the x -> -x flip
        // negates V2 and V4 and swaps the sign regions.
        const bool flip = out.classification.flipped_for_H;
        const int pos_o = flip ? neg : pos;
        const int neg_o = flip ? pos : neg;
        switch (origin.origin_multiplicity) {
        case OriginClass::Multiplicity2: {
            const double v2o = flip ? -origin.V2 : origin.V2;
            if (v2o > 0.0) {
                if (pos_o > 2 || neg_o > 2) fail("per-region count exceeds two (V2 > 0 case)");
            } else {
                if (pos_o > 1 || neg_o > 1) fail("per-region count exceeds one (V2 < 0 case)");
            }
            break;
        }
        case OriginClass::Multiplicity3:
            if (pos_o > 1 || neg_o > 1) fail("per-region count exceeds one (V3 != 0 case)");
            break;
        case OriginClass::Multiplicity4: {
            if (total != 0) fail("non-zero cycles coexist with a multiplicity-four origin");
            const double v4o = flip ? -*origin.V4 : *origin.V4;
            if (v4o <= 0.0) fail("V4 must be positive in the oriented frame");
            break;
        }
        case OriginClass::CenterSuspect:
            fail("origin looks like a center under hypothesis (H)");
            break;
        }
        if (total > 2) fail("total non-zero multiplicity exceeds two");
    } else {
        fail("neither characterization holds; premise violated");
    }
    if (!out.census.bound_satisfied) fail("census bound flag cleared");
    return out;
}

} // namespace abel
