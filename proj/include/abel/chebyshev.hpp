#ifndef ABEL_CHEBYSHEV_HPP
#define ABEL_CHEBYSHEV_HPP

#include <array>
#include <optional>
#include <vector>

#include "abel/basis.hpp"

namespace abel {

enum class CertStrategy {
    WronskianScan,        // quadratic: non-vanishing Wronskians on a grid
    AnalyticTrig,         // {1, sin, cos}: phase-amplitude zero bound
    AnalyticShiftedPower, // closed-form Wronskians, non-vanishing on [0, 1)
    AnalyticMonomial      // Vandermonde-factor Wronskians, non-vanishing on (0, 1]
};

struct EctCertificate {
    bool ok = false;
    std::array<double, 3> min_abs_wronskian{0.0, 0.0, 0.0};
    std::optional<double> failure_point;
    CertStrategy strategy = CertStrategy::WronskianScan;
};

/// Continuous Wronskian W_{f0..fk}(t), k in 0..2, from analytic derivatives.
double wronskian(const BasisFamily& basis, double t, int k);

/// Per-family Chebyshev certificate. Wronskian grid scan where the minima
/// are bounded away from zero, analytic arguments where they are not (the
/// trig family in this order is ET but not ECT, and the shifted-power W2
/// decays to zero at the right endpoint when alpha+beta > 3).
EctCertificate ect_certificate(const BasisFamily& basis, int grid = 4096);

struct ZeroInfo {
    double t;
    int multiplicity; // 1 or 2
};

struct ZeroCountResult {
    int count = 0; // with multiplicity
    std::vector<ZeroInfo> zeros;
};

/// Zeros (with multiplicity) of g = sum c_i f_i on [lo, hi) inside the
/// family's domain. Tangential zeros count twice. Throws unresolved_zero
/// when refinement cannot classify a near-zero cell.
ZeroCountResult zero_count_detailed(const BasisFamily& basis, const Vec3& c, double lo,
                                    double hi, int grid = 4096);
int zero_count(const BasisFamily& basis, const Vec3& c, double lo, double hi, int grid = 4096);

struct EtCounterexample {
    double lambda, mu;
    int zeros;
};

/// Samples unit directions (lambda, mu) and returns the first combination
/// lambda*A + mu*B with more than two zeros on [0, T), if any. A `nullopt`
/// is evidence for the accuracy-one property, not a proof.
std::optional<EtCounterexample> et_accuracy_falsifier(const AbelEquation& eq, int samples = 256);

} // namespace abel

#endif
