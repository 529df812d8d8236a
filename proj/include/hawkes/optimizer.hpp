#pragma once

#include <functional>
#include <span>
#include <vector>

namespace hawkes {

struct MinimizeOptions {
    int max_iterations = 500;
    // Stop when the projected-gradient inf-norm falls below
    // grad_tol * (1 + |f|): finite-difference noise scales with |f|.
    double grad_tol = 1e-5;
    // Stop after two consecutive improvements below f_tol * (1 + |f|).
    double f_tol = 1e-10;
    // Relative central-difference step.
    double fd_step_rel = 1e-6;
    double armijo_c1 = 1e-4;
    int max_line_search = 40;
};

struct BoxMinResult {
    std::vector<double> x;
    double f = 0.0;
    int iterations = 0;
    long evals = 0;
    bool converged = false;
};

/// Minimizes f over a box by dense BFGS with gradient projection: central
/// finite-difference gradients, active bounds masked out of the search
/// direction, backtracking line search along the projected path.
BoxMinResult minimize_box(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> x0,
                          std::span<const double> lo, std::span<const double> hi,
                          const MinimizeOptions& opt = {});

} // namespace hawkes
