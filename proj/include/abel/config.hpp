#ifndef ABEL_CONFIG_HPP
#define ABEL_CONFIG_HPP

#include "abel/errors.hpp"

namespace abel {

/// Shared numerical-policy knobs. Every report embeds the instance it was
/// produced with, so results are reproducible from the artifact alone.
struct NumericsConfig {
    double ode_rel_tol = 1e-10;
    double ode_abs_tol = 1e-12;
    double blowup_threshold = 1e6;
    double quad_tol = 1e-12;
    int grid_points = 400;         // displacement grid per sign region
    double newton_tol = 1e-12;
    int newton_max_iter = 60;
    double double_cycle_tol = 1e-6;
    double boundary_margin = 1e-9; // delta kept from singular basis endpoints
    double origin_exclusion = 1e-4;
    double window_hi = 10.0;       // default census half-window

    void validate() const {
        auto pos = [](double v, const char* f) {
            if (!(v > 0.0)) throw validation_error("must be positive", f);
        };
        pos(ode_rel_tol, "ode_rel_tol");
        pos(ode_abs_tol, "ode_abs_tol");
        pos(blowup_threshold, "blowup_threshold");
        pos(quad_tol, "quad_tol");
        if (grid_points < 8) throw validation_error("must be >= 8", "grid_points");
        pos(newton_tol, "newton_tol");
        if (newton_max_iter < 1) throw validation_error("must be >= 1", "newton_max_iter");
        pos(double_cycle_tol, "double_cycle_tol");
        pos(boundary_margin, "boundary_margin");
        pos(origin_exclusion, "origin_exclusion");
        pos(window_hi, "window_hi");
    }
};

} // namespace abel

#endif
