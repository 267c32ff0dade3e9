#ifndef ABEL_DETAIL_RK45_HPP
#define ABEL_DETAIL_RK45_HPP

#include <array>
#include <cmath>
#include <cstddef>

#include "abel/errors.hpp"

namespace abel::detail {

template <std::size_t N>
using State = std::array<double, N>;

enum class RkStop { Done, Event, StepUnderflow };

struct RkOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double h_max = 0.0;        // 0 = no cap
    double h_min_rel = 1e-14;  // underflow threshold relative to |t1 - t0|
    double event_loc_rel = 1e-10; // event time localization relative to span
    long max_steps = 50'000'000;
};

template <std::size_t N>
struct RkResult {
    RkStop stop = RkStop::Done;
    double t = 0.0;
    State<N> y{};
    long n_steps = 0;
};

/// Embedded Dormand-Prince 5(4) pair with standard step-size control.
/// `rhs(t, y, dydt)`; `event(t, y)` rejects a step when true and halves it,
/// so the event time is localized to event_loc_rel * span without dense
/// output; `observer(t, y)` sees every accepted state including the initial
/// one. Either callback can be a no-capture lambda returning false / void.
template <std::size_t N, class Rhs, class Event, class Observer>
RkResult<N> rk45_integrate(Rhs&& rhs, const State<N>& y0, double t0, double t1,
                           const RkOptions& opt, Event&& event, Observer&& observer) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

    const double span = t1 - t0;
    RkResult<N> res;
    res.t = t0;
    res.y = y0;
    observer(res.t, res.y);

    State<N> k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
    rhs(res.t, res.y, k1);

    double h = span / 100.0;
    if (opt.h_max > 0.0 && h > opt.h_max) h = opt.h_max;
    const double h_min = opt.h_min_rel * span;
    const double h_event = std::max(opt.event_loc_rel * span, 4.0 * h_min);

    while (res.t < t1) {
        if (res.n_steps++ > opt.max_steps)
            throw step_failure("step budget exhausted");
        if (res.t + h > t1) {
            h = t1 - res.t;
            if (h <= h_min) {
                // Within round-off of the endpoint.
                res.t = t1;
                break;
            }
        }

        auto stage = [&](double frac, const State<N>& y, State<N>& k) {
            rhs(res.t + frac * h, y, k);
        };
        for (std::size_t i = 0; i < N; ++i) ytmp[i] = res.y[i] + h * a21 * k1[i];
        stage(c2, ytmp, k2);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        stage(c3, ytmp, k3);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        stage(c4, ytmp, k4);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        stage(c5, ytmp, k5);
        for (std::size_t i = 0; i < N; ++i)
            ytmp[i] = res.y[i] +
                      h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        stage(1.0, ytmp, k6);
        for (std::size_t i = 0; i < N; ++i)
            ynew[i] = res.y[i] +
                      h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        stage(1.0, ynew, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(res.y[i]), std::abs(ynew[i]));
            const double r = ei / sc;
            err += r * r;
        }
        err = std::sqrt(err / static_cast<double>(N));

        const bool accept = std::isfinite(err) && err <= 1.0;
        if (accept && event(res.t + h, ynew)) {
            // Shrink onto the event instead of accepting across it.
            if (h <= h_event) {
                res.t += h;
                res.y = ynew;
                res.stop = RkStop::Event;
                observer(res.t, res.y);
                return res;
            }
            h *= 0.5;
            continue;
        }
        if (accept) {
            res.t += h;
            res.y = ynew;
            k1 = k7; // FSAL
            observer(res.t, res.y);
            double fac = std::isfinite(err) && err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            fac = std::min(5.0, std::max(0.2, fac));
            h *= fac;
        } else {
            double fac = std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1;
            h *= fac;
        }
        if (opt.h_max > 0.0 && h > opt.h_max) h = opt.h_max;
        if (h < h_min) {
            res.stop = RkStop::StepUnderflow;
            return res;
        }
    }
    res.stop = RkStop::Done;
    return res;
}

template <std::size_t N, class Rhs>
RkResult<N> rk45_integrate(Rhs&& rhs, const State<N>& y0, double t0, double t1,
                           const RkOptions& opt) {
    return rk45_integrate<N>(std::forward<Rhs>(rhs), y0, t0, t1, opt,
                             [](double, const State<N>&) { return false; },
                             [](double, const State<N>&) {});
}

} // namespace abel::detail

#endif
