#ifndef ABEL_BASIS_HPP
#define ABEL_BASIS_HPP

#include <array>
#include <string>

#include "abel/errors.hpp"

namespace abel {

using Vec3 = std::array<double, 3>;

enum class BasisKind {
    Trigonometric,      // (1, sin t, cos t) on [0, 2pi]
    QuadraticPolynomial,// (1, t, t^2) on [0, 1]
    MonomialTrinomial,  // (t^m0, t^m1, t^m2) on [0, 1], 0 <= m0 < m1 < m2
    ShiftedPower        // (1, (1-t)^alpha, (1-t)^beta) on [0, 1], 0 < alpha < beta
};

/// One of the four coefficient-space families. Immutable value type;
/// evaluation of (f0, f1, f2) and derivatives up to order 2 is analytic.
class BasisFamily {
public:
    BasisFamily() = default; // trigonometric
    static BasisFamily trigonometric();
    static BasisFamily quadratic();
    static BasisFamily trinomial(int m0, int m1, int m2);
    static BasisFamily shifted_power(double alpha, double beta);

    BasisKind kind() const { return kind_; }
    double period() const { return period_; }

    int m0() const { return m_[0]; }
    int m1() const { return m_[1]; }
    int m2() const { return m_[2]; }
    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

    /// f_i^(order)(t) for order in 0..2. Throws outside [0, T] and at the
    /// shifted-power right endpoint when a derivative is unbounded there.
    Vec3 eval(double t, int order) const;

    /// Interval on which the family's Chebyshev certificate is scanned.
    /// Open endpoints are kept at distance `margin`.
    double cert_lo(double margin) const;
    double cert_hi(double margin) const;

    std::string name() const;

    friend bool operator==(const BasisFamily&, const BasisFamily&) = default;

private:
    BasisKind kind_ = BasisKind::Trigonometric;
    double period_ = 6.283185307179586476925286766559;
    std::array<int, 3> m_ = {0, 0, 0};
    double alpha_ = 0.0, beta_ = 0.0;
};

/// An Abel equation dx/dt = A(t)x^3 + B(t)x^2 with A, B in the span of a
/// basis family: A = sum lambda_i f_i, B = sum mu_i f_i.
struct AbelEquation {
    BasisFamily basis;
    Vec3 lambda{0.0, 0.0, 0.0};
    Vec3 mu{0.0, 0.0, 0.0};

    double period() const { return basis.period(); }
};

struct Coeffs {
    double A, B, dA, dB;
};

struct AB {
    double A, B;
};

Vec3 eval_basis(const BasisFamily& basis, double t, int order);
Coeffs eval_coeffs(const AbelEquation& eq, double t);

/// A and B together from a single order-0 basis evaluation.
AB eval_AB(const AbelEquation& eq, double t);

/// Value of A (resp. B when `use_mu`) alone; avoids the derivative path.
double eval_A(const AbelEquation& eq, double t);
double eval_B(const AbelEquation& eq, double t);

/// Rewrites a monomial-trinomial equation over the shifted-power basis
/// (1, (1-t)^alpha, (1-t)^beta), alpha = (m1-m0)/(m0+1), beta = (m2-m0)/(m0+1).
/// Time is rescaled then reversed, so the coefficient vectors pick up the
/// factor -1/(m0+1). The set of closed solutions and their initial values
/// are unchanged.
AbelEquation normalize_trinomial(const AbelEquation& eq);

} // namespace abel

#endif
