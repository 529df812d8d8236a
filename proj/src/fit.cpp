#include "hawkes/fit.hpp"

#include "hawkes/optimizer.hpp"
#include "hawkes/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hawkes {

LogLik pooled_log_likelihood(const HawkesModel& model,
                             const std::vector<EventSequence>& seqs,
                             Objective objective) {
    const std::size_t d = model.dim();
    LogLik out;
    out.per_dimension.assign(d, 0.0);
    for (const auto& seq : seqs) {
        const LogLik one = objective == Objective::exact ? log_likelihood(model, seq)
                                                         : approx_log_likelihood(model, seq);
        for (std::size_t i = 0; i < d; ++i) out.per_dimension[i] += one.per_dimension[i];
        out.infeasible_terms += one.infeasible_terms;
    }
    for (std::size_t i = 0; i < d; ++i) out.value += out.per_dimension[i];
    return out;
}

namespace {

struct DimTaskResult {
    double f = 1e300;
    std::vector<double> x;
    bool converged = false;
    long evals = 0;
};

// One dimension's fit problem: pack/unpack (mu, free alphas, beta) and
// evaluate the pooled negative log-likelihood.
struct DimProblem {
    std::size_t d;
    int self_mark;
    Objective objective;
    const std::vector<EventSequence>* seqs;
    std::vector<std::size_t> free_alpha; // column indices of free entries
    std::vector<double> lo, hi;
    double rate; // events of this dimension per unit time, floored away from 0

    std::size_t n_params() const { return 2 + free_alpha.size(); }

    double operator()(std::span<const double> x, std::vector<double>& alpha_buf) const {
        const double mu = x.front();
        const double beta = x.back();
        std::fill(alpha_buf.begin(), alpha_buf.end(), 0.0);
        for (std::size_t a = 0; a < free_alpha.size(); ++a) {
            alpha_buf[free_alpha[a]] = x[1 + a];
        }
        double neg = 0.0;
        for (const auto& seq : *seqs) {
            neg -= dim_log_likelihood(mu, alpha_buf, beta, self_mark, seq, objective);
        }
        return neg;
    }
};

std::vector<double> random_start(const DimProblem& prob, SplitMix64& rng) {
    std::vector<double> x(prob.n_params());
    // Inhibition pushes the baseline above the realized event rate and the
    // benchmark decays reach below 0.5, so the start boxes are generous:
    // mu up to 4x the rate, beta log-uniform over [0.1, 5].
    x.front() = rng.uniform(0.5 * prob.rate, 4.0 * prob.rate);
    for (std::size_t a = 0; a < prob.free_alpha.size(); ++a) {
        x[1 + a] = rng.uniform(-1.0, 1.0);
    }
    x.back() = std::exp(rng.uniform(std::log(0.1), std::log(5.0)));
    for (std::size_t j = 0; j < x.size(); ++j) {
        x[j] = std::min(std::max(x[j], prob.lo[j]), prob.hi[j]);
    }
    return x;
}

FitResult fit_impl(const std::vector<EventSequence>& seqs, std::size_t d,
                   const FitConfig& config, const std::vector<std::uint8_t>* support,
                   const HawkesModel* warm) {
    if (seqs.empty()) {
        throw std::invalid_argument("fit: at least one sequence required");
    }
    if (d == 0) {
        throw std::invalid_argument("fit: dimension must be positive");
    }
    if (config.restarts < 1) {
        throw std::invalid_argument("fit: restarts must be >= 1");
    }
    for (const auto& seq : seqs) seq.validate(d);
    if (support && support->size() != d * d) {
        throw std::invalid_argument("fit: support mask must be d*d");
    }
    if (warm && warm->dim() != d) {
        throw std::invalid_argument("fit: warm model dimension mismatch");
    }

    double total_horizon = 0.0;
    std::vector<double> counts(d, 0.0);
    for (const auto& seq : seqs) {
        total_horizon += seq.horizon;
        for (int m : seq.marks) counts[m] += 1.0;
    }
    double max_rate = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        max_rate = std::max(max_rate, counts[i] / total_horizon);
    }
    const double mu_hi = config.bounds.mu_hi > 0.0
                             ? config.bounds.mu_hi
                             : std::max(config.bounds.mu_hi_factor * max_rate, 1.0);

    std::vector<DimProblem> problems(d);
    for (std::size_t i = 0; i < d; ++i) {
        DimProblem& prob = problems[i];
        prob.d = d;
        prob.self_mark = static_cast<int>(i);
        prob.objective = config.objective;
        prob.seqs = &seqs;
        for (std::size_t j = 0; j < d; ++j) {
            if (!support || (*support)[i * d + j]) prob.free_alpha.push_back(j);
        }
        const std::size_t p = prob.n_params();
        prob.lo.assign(p, -config.bounds.alpha_abs);
        prob.hi.assign(p, config.bounds.alpha_abs);
        prob.lo.front() = config.bounds.mu_lo;
        prob.hi.front() = mu_hi;
        prob.lo.back() = config.bounds.beta_lo;
        prob.hi.back() = config.bounds.beta_hi;
        prob.rate = std::max(counts[i] / total_horizon, 1e-6);
    }

    MinimizeOptions mopt;
    mopt.max_iterations = config.max_iterations;
    mopt.grad_tol = config.grad_tol;
    mopt.f_tol = config.f_tol;
    mopt.fd_step_rel = config.fd_step_rel;

    const int restarts = config.restarts;
    const long n_tasks = static_cast<long>(d) * restarts;
    std::vector<DimTaskResult> tasks(n_tasks);

#pragma omp parallel for schedule(dynamic) if (n_tasks > 1)
    for (long task = 0; task < n_tasks; ++task) {
        const std::size_t i = static_cast<std::size_t>(task) / restarts;
        const int r = static_cast<int>(task % restarts);
        const DimProblem& prob = problems[i];
        std::vector<double> alpha_buf(d, 0.0);
        const auto objective = [&](std::span<const double> x) { return prob(x, alpha_buf); };

        SplitMix64 rng(config.seed + 0x9E3779B9ULL * i + static_cast<std::uint64_t>(r) + 1);
        std::vector<double> x0;
        long extra_evals = 0;
        double best_f = 1e300;
        if (r == 0 && warm) {
            x0.assign(prob.n_params(), 0.0);
            x0.front() = warm->mu[i];
            for (std::size_t a = 0; a < prob.free_alpha.size(); ++a) {
                x0[1 + a] = warm->alpha(i, prob.free_alpha[a]);
            }
            x0.back() = warm->beta[i];
            for (std::size_t j = 0; j < x0.size(); ++j) {
                x0[j] = std::min(std::max(x0[j], prob.lo[j]), prob.hi[j]);
            }
            best_f = objective(x0);
            ++extra_evals;
        } else if (r == 0 || (r == 1 && !warm)) {
            // Deterministic alpha = 0 starts, feasible on any data, so some
            // restarts always escape the sentinel region: a homogeneous
            // Poisson point at the realized rate, and an inhibition-regime
            // point (baseline above the rate, slow decay) whose descent
            // trades the excess baseline against negative interactions.
            const bool poisson = r == 0;
            x0.assign(prob.n_params(), 0.0);
            x0.front() = std::min(std::max((poisson ? 1.0 : 2.0) * prob.rate,
                                           prob.lo.front()),
                                  prob.hi.front());
            x0.back() = std::min(std::max(poisson ? 1.0 : 0.5, prob.lo.back()),
                                 prob.hi.back());
            best_f = objective(x0);
            ++extra_evals;
        } else {
            x0 = random_start(prob, rng);
            best_f = objective(x0);
            ++extra_evals;
        }
        // Rejection-sample a feasible start: within the sentinel region
        // finite differences carry no useful slope.
        for (int attempt = 0; attempt < 50 && best_f >= 1e17; ++attempt) {
            auto trial = random_start(prob, rng);
            const double f_trial = objective(trial);
            ++extra_evals;
            if (f_trial < best_f) {
                best_f = f_trial;
                x0 = std::move(trial);
            }
        }

        BoxMinResult min_res = minimize_box(objective, std::move(x0), prob.lo, prob.hi, mopt);
        // Polish with a fresh quasi-Newton state; stalls near infeasibility
        // walls often release after a restart from the same point.
        BoxMinResult polished =
            minimize_box(objective, min_res.x, prob.lo, prob.hi, mopt);
        polished.evals += min_res.evals;
        if (polished.f > min_res.f) {
            polished.x = std::move(min_res.x);
            polished.f = min_res.f;
        }
        DimTaskResult& out = tasks[task];
        out.f = polished.f;
        out.x = std::move(polished.x);
        out.converged = min_res.converged || polished.converged;
        out.evals = polished.evals + extra_evals;
    }

    FitResult result;
    result.model.mu.assign(d, 0.0);
    result.model.beta.assign(d, 0.0);
    result.model.alpha = Matrix(d, d, 0.0);
    result.converged = true;
    for (std::size_t i = 0; i < d; ++i) {
        const DimTaskResult* best = nullptr;
        for (int r = 0; r < restarts; ++r) {
            const DimTaskResult& cand = tasks[static_cast<long>(i) * restarts + r];
            result.n_evals += cand.evals;
            if (!best || cand.f < best->f) best = &cand;
        }
        if (best->f >= 1e17) {
            throw std::runtime_error(
                "fit: all restarts infeasible for dimension " + std::to_string(i + 1) +
                " (every start left some event with nonpositive intensity); "
                "widen bounds or increase restarts");
        }
        result.model.mu[i] = best->x.front();
        result.model.beta[i] = best->x.back();
        const DimProblem& prob = problems[i];
        for (std::size_t a = 0; a < prob.free_alpha.size(); ++a) {
            result.model.alpha(i, prob.free_alpha[a]) = best->x[1 + a];
        }
        result.converged = result.converged && best->converged;
    }

    const LogLik ll = pooled_log_likelihood(result.model, seqs, config.objective);
    result.per_dimension_loglik = ll.per_dimension;
    result.loglik = ll.value;
    return result;
}

} // namespace

FitResult fit(const std::vector<EventSequence>& seqs, std::size_t d,
              const FitConfig& config) {
    return fit_impl(seqs, d, config, nullptr, nullptr);
}

FitResult fit_with_support(const std::vector<EventSequence>& seqs, std::size_t d,
                           const FitConfig& config,
                           const std::vector<std::uint8_t>& support,
                           const HawkesModel* warm) {
    return fit_impl(seqs, d, config, &support, warm);
}

} // namespace hawkes
