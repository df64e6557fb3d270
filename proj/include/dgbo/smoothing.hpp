#pragma once

#include <string>
#include <vector>

#include "dgbo/propagator.hpp"
#include "dgbo/trajectory.hpp"

namespace dgbo {

// min{3s + a - 3/2, s + 1/2, a - 1}
double smoothing_eps_pred(double s, double alpha);

struct SmoothingOptions {
    double xi_lo = 4.0;        // lower edge of the fit window
    double xi_hi = 0.0;        // 0: half the highest wavenumber excited in u(0)
    int shells = 9;            // geometric shells inside the window
    double late_fraction = 0.5;  // snapshots with t >= late_fraction * T are averaged
    bool gauge = true;         // remove the mean transport drift before comparing
};

struct SmoothingReport {
    double eps_pred = 0.0;
    double eps_hat = 0.0;
    double linear_slope = 0.0;    // mean over late snapshots
    double duhamel_slope = 0.0;
    std::vector<double> times;    // late snapshots used
    std::vector<double> eps_per_time;
    std::vector<double> shell_centers;
    std::vector<double> duhamel_shells;  // shell means of |w|^2 at the last snapshot
    std::vector<double> linear_shells;
    double gauge_shift = 0.0;     // at the last snapshot
    bool unresolved = false;
    std::string note;
};

// Compares high-frequency decay of the Duhamel part w = v(t) - V(t)u0 with that of V(t)u0,
// where v(t, x) = u(t, x + mu int_0^t mean(u^k)) when the gauge is on. Slopes are those of
// the amplitude |c(xi)|, i.e. half the fitted slope of the shell-averaged power.
SmoothingReport smoothing_gain(const Trajectory& tr, double s, const SmoothingOptions& opt = {});

}  // namespace dgbo
