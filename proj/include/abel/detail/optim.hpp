#ifndef ABEL_DETAIL_OPTIM_HPP
#define ABEL_DETAIL_OPTIM_HPP

#include <cmath>
#include <utility>

namespace abel::detail {

/// Golden-section minimum of f on [a, b] down to interval width `tol`.
/// Returns (argmin, min).
template <class F>
std::pair<double, double> golden_min(F&& f, double a, double b, double tol, int max_iter = 200) {
    constexpr double inv_phi = 0.6180339887498948482;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 < f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

template <class F>
std::pair<double, double> golden_max(F&& f, double a, double b, double tol, int max_iter = 200) {
    auto [x, v] = golden_min([&](double t) { return -f(t); }, a, b, tol, max_iter);
    return {x, -v};
}

/// Bisection on a bracketing interval: f(a) and f(b) have opposite signs.
template <class F>
double bisect(F&& f, double a, double b, double fa, double fb, double xtol, int max_iter = 200) {
    for (int i = 0; i < max_iter && (b - a) > xtol; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    (void)fb;
    return 0.5 * (a + b);
}

} // namespace abel::detail

#endif
