#ifndef ABEL_CYCLES_HPP
#define ABEL_CYCLES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abel/basis.hpp"
#include "abel/classify.hpp"
#include "abel/config.hpp"
#include "abel/flow.hpp"

namespace abel {

enum class OriginClass { Multiplicity2, Multiplicity3, Multiplicity4, CenterSuspect };

enum class Stability { Stable, Unstable, SemistableLowerStable, SemistableLowerUnstable };

inline const char* to_string(Stability s) {
    switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::SemistableLowerStable: return "semistable-lower-stable";
    case Stability::SemistableLowerUnstable: return "semistable-lower-unstable";
    }
    return "?";
}

inline const char* to_string(OriginClass c) {
    switch (c) {
    case OriginClass::Multiplicity2: return "2";
    case OriginClass::Multiplicity3: return "3";
    case OriginClass::Multiplicity4: return "4";
    case OriginClass::CenterSuspect: return "center-suspect";
    }
    return "?";
}

struct LyapunovReport {
    Vec3 I{};                                  // integrals of f_i
    std::array<std::array<double, 3>, 3> Imat{}; // I[i][j] = int f_i(t) int_0^t f_j
    double V2 = 0.0;
    std::optional<double> V3; // valid iff V2 vanishes within tolerance
    std::optional<double> V4; // valid iff V2 and V3 both vanish
    OriginClass origin_multiplicity = OriginClass::Multiplicity2;
    Stability origin_stability = Stability::Stable;
};

/// Direct quadrature of the defining integrals: V2 = int B, V3 = int A,
/// V4 = int A(t) int_0^t B. Values are reported unconditionally; the gating
/// semantics live in LyapunovReport.
struct LyapunovDirect {
    double V2, V3, V4;
};

struct LimitCycle {
    double x0 = 0.0;
    double residual = 0.0; // |d(x0)| after refinement
    double dP = 1.0;
    Stability stability = Stability::Stable;
    int multiplicity = 1;
    std::optional<double> d2P; // populated for multiplicity 2
};

struct CycleCensus {
    std::vector<LimitCycle> positive;
    std::vector<LimitCycle> negative;
    LyapunovReport origin;
    int total_with_multiplicity = 0;
    bool bound_satisfied = true;
    bool center_suspect = false;
    std::vector<std::pair<double, double>> escape_gaps;

    std::vector<LimitCycle> all() const {
        std::vector<LimitCycle> v = negative;
        v.insert(v.end(), positive.begin(), positive.end());
        return v;
    }
};

LyapunovReport lyapunov_constants(const AbelEquation& eq, const NumericsConfig& cfg);
LyapunovDirect lyapunov_direct(const AbelEquation& eq, const NumericsConfig& cfg);

/// Limit-cycle census on [x_lo, x_hi] outside the origin dead-zone: grid
/// scan of the displacement function, safeguarded Newton on sign changes,
/// tangential refinement for double cycles, escape gaps recorded.
CycleCensus find_cycles(const AbelEquation& eq, double x_lo, double x_hi,
                        const NumericsConfig& cfg);

/// find_cycles with warm-start seeds (previous roots) merged into the scan.
CycleCensus find_cycles_seeded(const AbelEquation& eq, double x_lo, double x_hi,
                               const NumericsConfig& cfg, const std::vector<double>& seeds);

struct IsoclineDiagnostics {
    int crossings = 0;                  // transversal hits of x(t) on -B/A
    int extrema = 0;                    // stationary points of the cycle
    std::vector<double> A_zeros;        // simple zeros of A in (0, T)
    std::vector<double> crossing_times;
    bool per_component_ok = true;       // at most one crossing per component
};

struct diagnostic_failure : error {
    using error::error;
};

IsoclineDiagnostics isocline_diagnostics(const AbelEquation& eq, const LimitCycle& cycle,
                                         const NumericsConfig& cfg);

struct BoundCheck {
    ClassificationResult classification;
    CycleCensus census;
    bool consistent = true;
    std::string detail;
};

/// Classification + Lyapunov report + census, checked against the
/// case-by-case cycle-count table and the global two-cycle bound.
BoundCheck verify_bound(const AbelEquation& eq, const NumericsConfig& cfg);

} // namespace abel

#endif
