#ifndef ABEL_CONTINUATION_HPP
#define ABEL_CONTINUATION_HPP

#include <optional>
#include <vector>

#include "abel/cycles.hpp"

namespace abel {

enum class SweepParam { Lambda0, Mu0 };

inline const char* to_string(SweepParam p) {
    return p == SweepParam::Lambda0 ? "lambda0" : "mu0";
}

enum class EventKind { Fold, HopfLikeAtOrigin, EscapeBoundary };

inline const char* to_string(EventKind k) {
    switch (k) {
    case EventKind::Fold: return "fold";
    case EventKind::HopfLikeAtOrigin: return "hopf-like-at-origin";
    case EventKind::EscapeBoundary: return "escape-boundary";
    }
    return "?";
}

struct BifurcationEvent {
    EventKind kind;
    double param_lo, param_hi; // bracketing interval
    double x0;                 // location estimate (0 for origin events)
};

struct BranchPoint {
    double param;
    double x0;
    Stability stability;
    int multiplicity;
    double dP;
};

struct Branch {
    int id = 0;
    std::vector<BranchPoint> points;
};

struct SweepSample {
    double param;
    CycleCensus census;
    double V2, V3; // assembly values at this parameter, ungated
};

struct SweepResult {
    SweepParam parameter = SweepParam::Lambda0;
    std::vector<SweepSample> samples; // ascending in param, refinements included
    std::vector<Branch> branches;
    std::vector<BifurcationEvent> events;
};

/// Assembly values of the first three Lyapunov constants without validity
/// gating; linear in (lambda0, mu0), which drives the origin-event detector.
struct LyapunovRaw {
    double V2, V3, V4;
};
LyapunovRaw lyapunov_raw(const AbelEquation& eq);

/// Census sweep in lambda0 or mu0 over [lo, hi] with `steps` uniform steps.
/// Cycles are linked into branches by nearest-initial-value within a
/// slope-scaled tolerance; a lost hyperbolic branch triggers parameter step
/// halving (up to 4 levels) before the loss is accepted as an event.
SweepResult sweep(const AbelEquation& eq, SweepParam param, double lo, double hi, int steps,
                  double x_lo, double x_hi, const NumericsConfig& cfg,
                  bool refine_unmatched = true);

struct SharpnessResult {
    std::array<double, 6> eta_star; // (lambda0..2, mu0..2) at the degenerate origin
    double V4_at_star = 0.0;
    double eps_lambda = 0.0, eps_mu = 0.0;
    AbelEquation star;
    AbelEquation perturbed;
    CycleCensus census;
};

/// Builds eta* = (I1, -I0, 0, I2, 0, -I0), checks the multiplicity-four
/// origin, then perturbs (lambda0, mu0) with alternating Lyapunov signs
/// until the census reports exactly two non-zero cycles.
/// Throws search_failure when no perturbation in [1e-8, 1e-1] works.
SharpnessResult sharpness_demo(const BasisFamily& family, const NumericsConfig& cfg);

struct FoldLocation {
    double param;
    double x0;
    AbelEquation equation;
};

/// Bisects the parameter between a two-cycle and a no-cycle configuration
/// (displacement minimum changing sign over [x_lo, x_hi]) onto the fold.
std::optional<FoldLocation> locate_fold(const AbelEquation& eq, SweepParam param, double p_lo,
                                        double p_hi, double x_lo, double x_hi,
                                        const NumericsConfig& cfg);

} // namespace abel

#endif
