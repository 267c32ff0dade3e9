#include "abel/flow.hpp"

#include <cmath>

#include "abel/detail/rk45.hpp"

namespace abel {

namespace {

double safe_exp(double v) { return std::exp(std::min(v, 700.0)); }

// Error-controlled steps collapse like h ~ 1/x^2 along an escaping orbit,
// so the threshold may be unreachable. Once |x| is large and still moving
// outward, the remaining time to the pole of dx/dt ~ A x^3 is x / (2 x'),
// exact for the cubic term; the x^2 correction is O(B/(A x)).
struct EscapeTail {
    bool escaped;
    double t_blow;
};

EscapeTail escape_tail(const AbelEquation& eq, double t, double x, double t_end) {
    if (!(std::abs(x) >= 1e3)) return {false, 0.0};
    const AB ab = eval_AB(eq, std::min(t, eq.period()));
    const double S = (ab.A * x + ab.B) * x * x;
    if (!(x * S > 0.0)) return {false, 0.0};
    const double dt = x / (2.0 * S);
    return {true, std::min(t + dt, t_end)};
}

detail::RkOptions rk_options(const AbelEquation& eq, const NumericsConfig& cfg,
                             double h_max = 0.0) {
    detail::RkOptions opt;
    opt.rel_tol = cfg.ode_rel_tol;
    opt.abs_tol = cfg.ode_abs_tol;
    opt.h_max = h_max;
    opt.event_loc_rel = 1e-10;
    (void)eq;
    return opt;
}

} // namespace

Trajectory integrate(const AbelEquation& eq, double x0, double t_end,
                     const NumericsConfig& cfg, double h_max) {
    if (!(t_end > 0.0) || t_end > eq.period())
        throw precondition_error("t_end must lie in (0, T]");
    Trajectory traj;
    traj.x0 = x0;

    auto rhs = [&](double t, const detail::State<1>& y, detail::State<1>& dy) {
        const AB ab = eval_AB(eq, std::min(t, eq.period()));
        dy[0] = (ab.A * y[0] + ab.B) * y[0] * y[0];
    };
    auto event = [&](double, const detail::State<1>& y) {
        return std::abs(y[0]) > cfg.blowup_threshold || !std::isfinite(y[0]);
    };
    auto observer = [&](double t, const detail::State<1>& y) {
        traj.t.push_back(t);
        traj.x.push_back(y[0]);
    };

    const auto res = detail::rk45_integrate<1>(rhs, {x0}, 0.0, t_end,
                                               rk_options(eq, cfg, h_max), event, observer);
    switch (res.stop) {
    case detail::RkStop::Done:
        traj.outcome = FlowOutcome::Completed;
        break;
    case detail::RkStop::Event:
        traj.outcome = FlowOutcome::BlowUp;
        traj.t_blow = res.t;
        // The crossing sample exceeds the threshold; drop it from the
        // retained samples but keep its time as the blow-up time.
        traj.t.pop_back();
        traj.x.pop_back();
        break;
    case detail::RkStop::StepUnderflow: {
        const EscapeTail tail = escape_tail(eq, res.t, res.y[0], t_end);
        if (!tail.escaped) throw step_failure("step size underflow in integrate()");
        traj.outcome = FlowOutcome::BlowUp;
        traj.t_blow = tail.t_blow;
        break;
    }
    }
    return traj;
}

PoincareResult poincare(const AbelEquation& eq, double x0, const NumericsConfig& cfg,
                        bool want_d2p) {
    PoincareResult out;
    const double T = eq.period();

    if (x0 == 0.0) {
        // The trivial solution: P = 0 and dP = exp(0) = 1 exactly.
        out.ret.P = 0.0;
        out.ret.log_dP = 0.0;
        out.ret.dP = 1.0;
        out.ret.h_final = 0.0;
        if (want_d2p) {
            double v2 = 0.0; // integral of 2B = second Lyapunov quadrature
            auto rhs = [&](double t, const detail::State<1>&, detail::State<1>& dy) {
                dy[0] = 2.0 * eval_B(eq, std::min(t, T));
            };
            const auto res = detail::rk45_integrate<1>(rhs, {0.0}, 0.0, T, rk_options(eq, cfg));
            if (res.stop != detail::RkStop::Done)
                throw step_failure("quadrature underflow in poincare()");
            v2 = res.y[0];
            out.ret.d2P = v2;
        }
        return out;
    }

    if (!want_d2p) {
        // State: x, u = int dS/dx, h = int A x^2.
        auto rhs = [&](double t, const detail::State<3>& y, detail::State<3>& dy) {
            const AB ab = eval_AB(eq, std::min(t, T));
            const double x = y[0];
            dy[0] = (ab.A * x + ab.B) * x * x;
            dy[1] = (3.0 * ab.A * x + 2.0 * ab.B) * x;
            dy[2] = ab.A * x * x;
        };
        auto event = [&](double, const detail::State<3>& y) {
            return std::abs(y[0]) > cfg.blowup_threshold || !std::isfinite(y[0]);
        };
        const auto res =
            detail::rk45_integrate<3>(rhs, {x0, 0.0, 0.0}, 0.0, T, rk_options(eq, cfg), event,
                                      [](double, const detail::State<3>&) {});
        if (res.stop == detail::RkStop::StepUnderflow) {
            const EscapeTail tail = escape_tail(eq, res.t, res.y[0], T);
            if (!tail.escaped) throw step_failure("step size underflow in poincare()");
            out.outcome = FlowOutcome::BlowUp;
            out.t_blow = tail.t_blow;
            return out;
        }
        if (res.stop == detail::RkStop::Event) {
            out.outcome = FlowOutcome::BlowUp;
            out.t_blow = res.t;
            return out;
        }
        out.ret.P = res.y[0];
        out.ret.log_dP = res.y[1];
        out.ret.dP = safe_exp(res.y[1]);
        out.ret.h_final = res.y[2];
        return out;
    }

    // Augmented state: x, u, h, w = int d2S/dx2 exp(u), v = int exp(h) dx.
    auto rhs = [&](double t, const detail::State<5>& y, detail::State<5>& dy) {
        const AB ab = eval_AB(eq, std::min(t, T));
        const double x = y[0];
        const double S = (ab.A * x + ab.B) * x * x;
        dy[0] = S;
        dy[1] = (3.0 * ab.A * x + 2.0 * ab.B) * x;
        dy[2] = ab.A * x * x;
        dy[3] = (6.0 * ab.A * x + 2.0 * ab.B) * safe_exp(y[1]);
        dy[4] = safe_exp(y[2]) * S;
    };
    auto event = [&](double, const detail::State<5>& y) {
        return std::abs(y[0]) > cfg.blowup_threshold || !std::isfinite(y[0]);
    };
    const auto res = detail::rk45_integrate<5>(rhs, {x0, 0.0, 0.0, 0.0, 0.0}, 0.0, T,
                                               rk_options(eq, cfg), event,
                                               [](double, const detail::State<5>&) {});
    if (res.stop == detail::RkStop::StepUnderflow) {
        const EscapeTail tail = escape_tail(eq, res.t, res.y[0], T);
        if (!tail.escaped) throw step_failure("step size underflow in poincare()");
        out.outcome = FlowOutcome::BlowUp;
        out.t_blow = tail.t_blow;
        return out;
    }
    if (res.stop == detail::RkStop::Event) {
        out.outcome = FlowOutcome::BlowUp;
        out.t_blow = res.t;
        return out;
    }
    out.ret.P = res.y[0];
    out.ret.log_dP = res.y[1];
    out.ret.dP = safe_exp(res.y[1]);
    out.ret.h_final = res.y[2];
    out.ret.d2P = out.ret.dP * res.y[3];
    return out;
}

Displacement displacement(const AbelEquation& eq, double x0, const NumericsConfig& cfg) {
    const PoincareResult pr = poincare(eq, x0, cfg);
    Displacement d;
    if (pr.outcome == FlowOutcome::BlowUp) {
        d.escaped = true;
        d.t_blow = pr.t_blow;
        return d;
    }
    d.value = pr.ret.P - x0;
    return d;
}

ClosedCycleChecks closed_cycle_checks(const AbelEquation& eq, double cycle_x0,
                                      const NumericsConfig& cfg) {
    if (cycle_x0 == 0.0)
        throw precondition_error("closed_cycle_checks requires a non-zero cycle");
    const PoincareResult pr = poincare(eq, cycle_x0, cfg, true);
    if (pr.outcome == FlowOutcome::BlowUp)
        throw precondition_error("trajectory escapes; not a cycle");
    if (std::abs(pr.ret.dP - 1.0) >= cfg.double_cycle_tol)
        throw precondition_error("P'(x0) = 1 violated beyond double_cycle_tol");

    // v = int exp(h) dx was accumulated in the d2P pass; recover it from
    // d2P's sibling quadrature by one more focused integration.
    const double T = eq.period();
    auto rhs = [&](double t, const detail::State<3>& y, detail::State<3>& dy) {
        const AB ab = eval_AB(eq, std::min(t, T));
        const double x = y[0];
        const double S = (ab.A * x + ab.B) * x * x;
        dy[0] = S;
        dy[1] = ab.A * x * x;
        dy[2] = safe_exp(y[1]) * S;
    };
    const auto res = detail::rk45_integrate<3>(rhs, {cycle_x0, 0.0, 0.0}, 0.0, T,
                                               rk_options(eq, cfg));
    if (res.stop != detail::RkStop::Done)
        throw step_failure("step size underflow in closed_cycle_checks()");
    ClosedCycleChecks out{};
    out.h_T = res.y[1];
    out.d2p_closed = -2.0 / (cycle_x0 * cycle_x0) * res.y[2];
    return out;
}

} // namespace abel
