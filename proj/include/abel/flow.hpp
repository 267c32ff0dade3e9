#ifndef ABEL_FLOW_HPP
#define ABEL_FLOW_HPP

#include <optional>
#include <vector>

#include "abel/basis.hpp"
#include "abel/config.hpp"

namespace abel {

enum class FlowOutcome { Completed, BlowUp };

struct Trajectory {
    std::vector<double> t;
    std::vector<double> x;
    FlowOutcome outcome = FlowOutcome::Completed;
    double t_blow = 0.0; // valid when outcome == BlowUp
    double x0 = 0.0;
};

struct ReturnData {
    double P = 0.0;       // x(T, x0)
    double log_dP = 0.0;  // integral of dS/dx along the trajectory
    double dP = 1.0;      // exp(log_dP)
    std::optional<double> d2P; // log-derivative quadrature route, on request
    double h_final = 0.0; // integral of A x^2 over [0, T]
};

struct PoincareResult {
    FlowOutcome outcome = FlowOutcome::Completed;
    double t_blow = 0.0;
    ReturnData ret; // valid when Completed
};

struct Displacement {
    bool escaped = false;
    double value = 0.0; // P - x0, valid when !escaped
    double t_blow = 0.0;
};

struct ClosedCycleChecks {
    double h_T;         // should vanish on a closed cycle
    double d2p_closed;  // P'' via the Stieltjes form, valid when P'(x0) = 1
};

/// Adaptive solve of dx/dt = A x^3 + B x^2 with blow-up localized by step
/// halving. `h_max` caps the step when dense samples are wanted.
Trajectory integrate(const AbelEquation& eq, double x0, double t_end,
                     const NumericsConfig& cfg, double h_max = 0.0);

/// Poincare map value plus its first (and optionally second) derivative via
/// the log-derivative quadratures, integrated alongside the state.
PoincareResult poincare(const AbelEquation& eq, double x0, const NumericsConfig& cfg,
                        bool want_d2p = false);

Displacement displacement(const AbelEquation& eq, double x0, const NumericsConfig& cfg);

/// For a located non-zero cycle with P'(x0) = 1 (within double_cycle_tol):
/// reports h(T) and the closed-cycle P'' formula evaluated as
/// -2/x0^2 * integral of exp(h) dx along the trajectory.
/// Throws precondition_error when |dP - 1| >= double_cycle_tol.
ClosedCycleChecks closed_cycle_checks(const AbelEquation& eq, double cycle_x0,
                                      const NumericsConfig& cfg);

} // namespace abel

#endif
