#include "abel/basis.hpp"

#include <cmath>

namespace abel {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kEndpointGuard = 1e-9;

// d^order/dt^order of (1-t)^p, with the vanishing-prefactor case (p integer
// below order) returned as exact zero instead of 0 * inf.
double shifted_power_term(double p, double t, int order) {
    double prefactor = 1.0;
    for (int k = 0; k < order; ++k) prefactor *= -(p - k);
    if (prefactor == 0.0) return 0.0;
    const double base = 1.0 - t;
    const double expo = p - order;
    if (base <= 0.0) {
        if (expo > 0.0) return 0.0;
        if (expo == 0.0) return prefactor;
        throw singularity_error("shifted-power derivative is singular at t = 1");
    }
    return prefactor * std::pow(base, expo);
}

double monomial_term(int m, double t, int order) {
    double prefactor = 1.0;
    for (int k = 0; k < order; ++k) prefactor *= static_cast<double>(m - k);
    if (prefactor == 0.0) return 0.0;
    return prefactor * std::pow(t, m - order);
}

} // namespace

BasisFamily BasisFamily::trigonometric() {
    BasisFamily b;
    b.kind_ = BasisKind::Trigonometric;
    b.period_ = kTwoPi;
    return b;
}

BasisFamily BasisFamily::quadratic() {
    BasisFamily b;
    b.kind_ = BasisKind::QuadraticPolynomial;
    b.period_ = 1.0;
    return b;
}

BasisFamily BasisFamily::trinomial(int m0, int m1, int m2) {
    if (m0 < 0 || !(m0 < m1 && m1 < m2))
        throw validation_error("require 0 <= m0 < m1 < m2", "m");
    BasisFamily b;
    b.kind_ = BasisKind::MonomialTrinomial;
    b.period_ = 1.0;
    b.m_ = {m0, m1, m2};
    return b;
}

BasisFamily BasisFamily::shifted_power(double alpha, double beta) {
    if (!(alpha > 0.0) || !(beta > alpha))
        throw validation_error("require 0 < alpha < beta", "alpha/beta");
    BasisFamily b;
    b.kind_ = BasisKind::ShiftedPower;
    b.period_ = 1.0;
    b.alpha_ = alpha;
    b.beta_ = beta;
    return b;
}

Vec3 BasisFamily::eval(double t, int order) const {
    if (order < 0 || order > 2)
        throw std::invalid_argument("derivative order must be 0, 1 or 2");
    if (t < 0.0 || t > period_)
        throw std::domain_error("t outside [0, T]");
    switch (kind_) {
    case BasisKind::Trigonometric: {
        const double s = std::sin(t), c = std::cos(t);
        switch (order) {
        case 0: return {1.0, s, c};
        case 1: return {0.0, c, -s};
        default: return {0.0, -s, -c};
        }
    }
    case BasisKind::QuadraticPolynomial:
        switch (order) {
        case 0: return {1.0, t, t * t};
        case 1: return {0.0, 1.0, 2.0 * t};
        default: return {0.0, 0.0, 2.0};
        }
    case BasisKind::MonomialTrinomial:
        return {monomial_term(m_[0], t, order), monomial_term(m_[1], t, order),
                monomial_term(m_[2], t, order)};
    case BasisKind::ShiftedPower:
        return {order == 0 ? 1.0 : 0.0, shifted_power_term(alpha_, t, order),
                shifted_power_term(beta_, t, order)};
    }
    throw std::logic_error("unreachable basis kind");
}

double BasisFamily::cert_lo(double margin) const {
    // Monomial families with m0 > 0 are certified on (0, 1]; the left
    // endpoint is kept at `margin`.
    if (kind_ == BasisKind::MonomialTrinomial && m_[0] > 0) return margin;
    return 0.0;
}

double BasisFamily::cert_hi(double margin) const {
    switch (kind_) {
    case BasisKind::Trigonometric: return period_ - margin;
    case BasisKind::QuadraticPolynomial: return period_ - margin;
    case BasisKind::ShiftedPower: return period_ - margin;
    case BasisKind::MonomialTrinomial: return period_;
    }
    return period_;
}

std::string BasisFamily::name() const {
    switch (kind_) {
    case BasisKind::Trigonometric: return "trig";
    case BasisKind::QuadraticPolynomial: return "quadratic";
    case BasisKind::MonomialTrinomial:
        return "trinomial(" + std::to_string(m_[0]) + "," + std::to_string(m_[1]) + "," +
               std::to_string(m_[2]) + ")";
    case BasisKind::ShiftedPower:
        return "shifted(" + std::to_string(alpha_) + "," + std::to_string(beta_) + ")";
    }
    return "?";
}

Vec3 eval_basis(const BasisFamily& basis, double t, int order) {
    return basis.eval(t, order);
}

Coeffs eval_coeffs(const AbelEquation& eq, double t) {
    const Vec3 f = eq.basis.eval(t, 0);
    // Close to a singular right endpoint, derivative values are sampled at
    // the guarded abscissa instead of throwing; integration itself only
    // consumes order-0 values.
    Vec3 df;
    if (eq.basis.kind() == BasisKind::ShiftedPower && t > 1.0 - kEndpointGuard &&
        eq.basis.alpha() < 1.0) {
        df = eq.basis.eval(1.0 - kEndpointGuard, 1);
    } else {
        df = eq.basis.eval(t, 1);
    }
    Coeffs c{0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i) {
        c.A += eq.lambda[i] * f[i];
        c.B += eq.mu[i] * f[i];
        c.dA += eq.lambda[i] * df[i];
        c.dB += eq.mu[i] * df[i];
    }
    return c;
}

AB eval_AB(const AbelEquation& eq, double t) {
    const Vec3 f = eq.basis.eval(t, 0);
    return {eq.lambda[0] * f[0] + eq.lambda[1] * f[1] + eq.lambda[2] * f[2],
            eq.mu[0] * f[0] + eq.mu[1] * f[1] + eq.mu[2] * f[2]};
}

double eval_A(const AbelEquation& eq, double t) {
    const Vec3 f = eq.basis.eval(t, 0);
    return eq.lambda[0] * f[0] + eq.lambda[1] * f[1] + eq.lambda[2] * f[2];
}

double eval_B(const AbelEquation& eq, double t) {
    const Vec3 f = eq.basis.eval(t, 0);
    return eq.mu[0] * f[0] + eq.mu[1] * f[1] + eq.mu[2] * f[2];
}

AbelEquation normalize_trinomial(const AbelEquation& eq) {
    if (eq.basis.kind() != BasisKind::MonomialTrinomial)
        throw precondition_error("normalize_trinomial requires a monomial-trinomial basis");
    const double m0 = eq.basis.m0(), m1 = eq.basis.m1(), m2 = eq.basis.m2();
    const double scale = -1.0 / (m0 + 1.0);
    AbelEquation out;
    out.basis = BasisFamily::shifted_power((m1 - m0) / (m0 + 1.0), (m2 - m0) / (m0 + 1.0));
    for (int i = 0; i < 3; ++i) {
        out.lambda[i] = scale * eq.lambda[i];
        out.mu[i] = scale * eq.mu[i];
    }
    return out;
}

} // namespace abel
