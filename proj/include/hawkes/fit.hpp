#pragma once

#include "hawkes/core.hpp"
#include "hawkes/model.hpp"

#include <cstdint>
#include <vector>

namespace hawkes {

/// Box constraints for one dimension's parameter block. A nonpositive mu_hi
/// means "derive from the data" as mu_hi_factor * max_i N^i / T.
struct FitBounds {
    double mu_lo = 1e-8;
    double mu_hi = -1.0;
    double mu_hi_factor = 10.0;
    double alpha_abs = 20.0;
    double beta_lo = 1e-8;
    double beta_hi = 50.0;
};

struct FitConfig {
    Objective objective = Objective::exact;
    int restarts = 5;
    FitBounds bounds;
    double grad_tol = 1e-5;
    double f_tol = 1e-10;
    double fd_step_rel = 1e-6;
    int max_iterations = 500;
    std::uint64_t seed = 0;
};

struct FitResult {
    HawkesModel model;
    double loglik = 0.0;
    bool converged = false;
    long n_evals = 0;
    std::vector<double> per_dimension_loglik;
};

/// Sum of per-dimension log-likelihoods of `model` over all sequences.
LogLik pooled_log_likelihood(const HawkesModel& model,
                             const std::vector<EventSequence>& seqs,
                             Objective objective = Objective::exact);

/// Maximum-likelihood fit. Each dimension's block (mu_i, alpha_i., beta_i)
/// is estimated independently (the log-likelihood separates across
/// dimensions) by bound-constrained quasi-Newton with central
/// finite-difference gradients and `restarts` random initializations,
/// keeping the best. Throws std::runtime_error when every restart of some
/// dimension stays infeasible.
FitResult fit(const std::vector<EventSequence>& seqs, std::size_t d,
              const FitConfig& config);

/// Same, with alpha entries outside `support` (d*d, row-major, nonzero =
/// free) frozen at zero. `warm` seeds the first restart when provided.
FitResult fit_with_support(const std::vector<EventSequence>& seqs, std::size_t d,
                           const FitConfig& config,
                           const std::vector<std::uint8_t>& support,
                           const HawkesModel* warm = nullptr);

} // namespace hawkes
