#include "hawkes/core.hpp"

#include "hawkes/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hawkes {

namespace {

// Guard for the restart-time log argument: (mu - lam)/mu > 1 holds exactly
// when lam < 0, but round-off near lam = 0- can push the ratio below 1.
constexpr double kRatioFloor = 1.0 + 1e-15;

void check_dim(const HawkesModel& model, std::size_t i) {
    if (i >= model.dim()) {
        throw std::out_of_range("dimension index out of range");
    }
}

} // namespace

IntervalStep advance_interval(double mu, double beta, double lam_star,
                              double t0, double t1, Objective obj) {
    const double dt = t1 - t0;
    const double decay = std::exp(-beta * dt);
    IntervalStep step;
    step.left = mu + (lam_star - mu) * decay;

    if (obj == Objective::approx || lam_star >= 0.0) {
        // Intensity nonnegative on the whole interval (or signed integral
        // requested): integrate from t0.
        step.restart = t0;
        step.J = mu * dt + (lam_star - mu) / beta * (1.0 - decay);
        return step;
    }

    // lam_star < 0: lambda* increases toward mu and crosses zero at the
    // root of mu + (lam_star - mu) e^{-beta (t - t0)} = 0.
    const double ratio = std::max((mu - lam_star) / mu, kRatioFloor);
    const double root = t0 + std::log(ratio) / beta;
    if (root >= t1) {
        step.restart = t1;
        step.J = 0.0;
        return step;
    }
    step.restart = root;
    const double decay_at_root = 1.0 / ratio; // e^{-beta (root - t0)}, exact from the root equation
    step.J = mu * (t1 - root) + (lam_star - mu) / beta * (decay_at_root - decay);
    if (step.J < 0.0) step.J = 0.0; // round-off guard; the integrand is >= 0
    return step;
}

double restart_time(const HawkesModel& model, double lambda_star_at_Tk,
                    std::size_t i, double T_k, double T_next) {
    check_dim(model, i);
    if (!(T_k < T_next)) {
        throw std::invalid_argument("restart_time: requires T_k < T_next");
    }
    if (lambda_star_at_Tk >= 0.0) {
        return T_k;
    }
    const double mu = model.mu[i];
    const double ratio = std::max((mu - lambda_star_at_Tk) / mu, kRatioFloor);
    const double root = T_k + std::log(ratio) / model.beta[i];
    return std::min(root, T_next);
}

double underlying_intensity(const HawkesModel& model, const EventSequence& seq,
                            std::size_t i, double t) {
    check_dim(model, i);
    if (t < 0.0) {
        throw std::invalid_argument("underlying_intensity: t must be >= 0");
    }
    const double mu = model.mu[i];
    const double beta = model.beta[i];
    const double* alpha_row = model.alpha.row(i);

    double lam = mu;
    double prev = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < seq.size() && seq.times[k] <= t; ++k) {
        const double tk = seq.times[k];
        lam = any ? mu + (lam - mu) * std::exp(-beta * (tk - prev)) : mu;
        lam += alpha_row[seq.marks[k]];
        prev = tk;
        any = true;
    }
    if (!any) return mu;
    return mu + (lam - mu) * std::exp(-beta * (t - prev));
}

double conditional_intensity(const HawkesModel& model, const EventSequence& seq,
                             std::size_t i, double t) {
    check_dim(model, i);
    const double mu = model.mu[i];
    const double beta = model.beta[i];
    const double* alpha_row = model.alpha.row(i);

    double lam = mu;
    double prev = 0.0;
    bool any = false;
    for (std::size_t k = 0; k < seq.size() && seq.times[k] <= t; ++k) {
        const double tk = seq.times[k];
        lam = any ? mu + (lam - mu) * std::exp(-beta * (tk - prev)) : mu;
        lam += alpha_row[seq.marks[k]];
        prev = tk;
        any = true;
    }
    if (!any) return mu;
    if (lam < 0.0) {
        const double root = prev + std::log(std::max((mu - lam) / mu, kRatioFloor)) / beta;
        if (t <= root) return 0.0;
    }
    return mu + (lam - mu) * std::exp(-beta * (t - prev));
}

double compensator(const HawkesModel& model, const EventSequence& seq,
                   std::size_t i, double t) {
    check_dim(model, i);
    if (t < 0.0) {
        throw std::invalid_argument("compensator: t must be >= 0");
    }
    const double mu = model.mu[i];
    const double beta = model.beta[i];
    const double* alpha_row = model.alpha.row(i);

    if (seq.empty() || t < seq.times.front()) {
        return mu * t;
    }
    double acc = mu * seq.times.front();
    double lam = mu + alpha_row[seq.marks.front()];
    std::size_t k = 0;
    while (k + 1 < seq.size() && seq.times[k + 1] <= t) {
        const IntervalStep step =
            advance_interval(mu, beta, lam, seq.times[k], seq.times[k + 1]);
        acc += step.J;
        lam = step.left + alpha_row[seq.marks[k + 1]];
        ++k;
    }
    if (t > seq.times[k]) {
        acc += advance_interval(mu, beta, lam, seq.times[k], t).J;
    }
    return acc;
}

LikelihoodAccumulator::LikelihoodAccumulator(const HawkesModel& model, Objective objective)
    : model_(model), objective_(objective) {
    const std::size_t d = model.dim();
    state_.lambda_star_at_event.assign(d, 0.0);
    state_.restart.assign(d, 0.0);
    state_.partial_compensator.assign(d, 0.0);
    event_terms_.assign(d, 0.0);
    violations_.assign(d, 0);
}

void LikelihoodAccumulator::add_event(double t, int mark) {
    if (finished_) {
        throw std::logic_error("LikelihoodAccumulator: add_event after finish");
    }
    const std::size_t d = model_.dim();
    if (mark < 0 || static_cast<std::size_t>(mark) >= d) {
        throw std::invalid_argument("LikelihoodAccumulator: mark out of range");
    }
    if (state_.n_events == 0) {
        if (t <= 0.0) throw std::invalid_argument("LikelihoodAccumulator: first event must have t > 0");
        for (std::size_t i = 0; i < d; ++i) {
            state_.partial_compensator[i] = model_.mu[i] * t;
            state_.restart[i] = 0.0;
            state_.lambda_star_at_event[i] = model_.mu[i] + model_.alpha(i, mark);
        }
        // Left limit at the first event is the baseline.
        event_terms_[mark] += std::log(model_.mu[mark]);
    } else {
        if (t <= state_.last_time) {
            throw std::invalid_argument("LikelihoodAccumulator: events must be strictly increasing");
        }
        for (std::size_t i = 0; i < d; ++i) {
            const IntervalStep step =
                advance_interval(model_.mu[i], model_.beta[i], state_.lambda_star_at_event[i],
                                 state_.last_time, t, objective_);
            state_.partial_compensator[i] += step.J;
            state_.restart[i] = step.restart;
            if (static_cast<int>(i) == mark) {
                if (step.left > 0.0) {
                    event_terms_[i] += std::log(step.left);
                } else {
                    ++violations_[i];
                }
            }
            state_.lambda_star_at_event[i] = step.left + model_.alpha(i, mark);
        }
    }
    state_.last_time = t;
    ++state_.n_events;
}

void LikelihoodAccumulator::finish(double horizon) {
    if (finished_) {
        throw std::logic_error("LikelihoodAccumulator: finish called twice");
    }
    if (horizon < state_.last_time) {
        throw std::invalid_argument("LikelihoodAccumulator: horizon precedes last event");
    }
    const std::size_t d = model_.dim();
    if (state_.n_events == 0) {
        for (std::size_t i = 0; i < d; ++i) {
            state_.partial_compensator[i] = model_.mu[i] * horizon;
        }
    } else if (horizon > state_.last_time) {
        for (std::size_t i = 0; i < d; ++i) {
            const IntervalStep step =
                advance_interval(model_.mu[i], model_.beta[i], state_.lambda_star_at_event[i],
                                 state_.last_time, horizon, objective_);
            state_.partial_compensator[i] += step.J;
            state_.restart[i] = step.restart;
        }
    }
    state_.last_time = horizon;
    finished_ = true;
}

double LikelihoodAccumulator::per_dimension(std::size_t i) const {
    if (violations_[i] > 0) {
        return infeasible_value(violations_[i]);
    }
    return event_terms_[i] - state_.partial_compensator[i];
}

double LikelihoodAccumulator::total() const {
    double sum = 0.0;
    for (std::size_t i = 0; i < model_.dim(); ++i) {
        sum += per_dimension(i);
    }
    return sum;
}

double dim_log_likelihood(double mu, std::span<const double> alpha_row, double beta,
                          int self_mark, const EventSequence& seq, Objective objective) {
    if (!(mu > 0.0) || !(beta > 0.0)) {
        return infeasible_value(seq.size() + 1);
    }
    const std::size_t n = seq.size();
    if (n == 0) {
        return -mu * seq.horizon;
    }
    double event_terms = 0.0;
    std::size_t violations = 0;

    double compensator_acc = mu * seq.times.front();
    if (seq.marks.front() == self_mark) {
        event_terms += std::log(mu);
    }
    double lam = mu + alpha_row[seq.marks.front()];
    for (std::size_t k = 1; k < n; ++k) {
        const IntervalStep step =
            advance_interval(mu, beta, lam, seq.times[k - 1], seq.times[k], objective);
        compensator_acc += step.J;
        if (seq.marks[k] == self_mark) {
            if (step.left > 0.0) {
                event_terms += std::log(step.left);
            } else {
                ++violations;
            }
        }
        lam = step.left + alpha_row[seq.marks[k]];
    }
    if (seq.horizon > seq.times.back()) {
        compensator_acc +=
            advance_interval(mu, beta, lam, seq.times.back(), seq.horizon, objective).J;
    }
    if (violations > 0) {
        return infeasible_value(violations);
    }
    return event_terms - compensator_acc;
}

namespace {

LogLik log_likelihood_impl(const HawkesModel& model, const EventSequence& seq,
                           Objective objective) {
    const std::size_t d = model.dim();
    LogLik out;
    out.per_dimension.assign(d, 0.0);
    std::vector<std::size_t> violations(d, 0);

#pragma omp parallel for schedule(static) if (d >= 4)
    for (std::size_t i = 0; i < d; ++i) {
        const double value = dim_log_likelihood(model.mu[i],
                                                {model.alpha.row(i), d},
                                                model.beta[i],
                                                static_cast<int>(i), seq, objective);
        out.per_dimension[i] = value;
        if (value <= kInfeasibleLogLik) {
            violations[i] = static_cast<std::size_t>(
                (kInfeasibleLogLik - value) / kInfeasiblePenaltyPerTerm + 0.5);
        }
    }
    // Deterministic, dimension-ordered sum.
    for (std::size_t i = 0; i < d; ++i) {
        out.value += out.per_dimension[i];
        out.infeasible_terms += violations[i];
    }
    return out;
}

} // namespace

LogLik log_likelihood(const HawkesModel& model, const EventSequence& seq) {
    return log_likelihood_impl(model, seq, Objective::exact);
}

LogLik approx_log_likelihood(const HawkesModel& model, const EventSequence& seq) {
    return log_likelihood_impl(model, seq, Objective::approx);
}

CompensatorPath compensator_path(const HawkesModel& model, const EventSequence& seq) {
    const std::size_t d = model.dim();
    const std::size_t n = seq.size();
    CompensatorPath path;
    path.at_events = Matrix(n, d);
    path.at_horizon.assign(d, 0.0);

#pragma omp parallel for schedule(static) if (d >= 4)
    for (std::size_t i = 0; i < d; ++i) {
        const double mu = model.mu[i];
        const double beta = model.beta[i];
        const double* alpha_row = model.alpha.row(i);
        if (n == 0) {
            path.at_horizon[i] = mu * seq.horizon;
            continue;
        }
        double acc = mu * seq.times.front();
        path.at_events(0, i) = acc;
        double lam = mu + alpha_row[seq.marks.front()];
        for (std::size_t k = 1; k < n; ++k) {
            const IntervalStep step =
                advance_interval(mu, beta, lam, seq.times[k - 1], seq.times[k]);
            acc += step.J;
            path.at_events(k, i) = acc;
            lam = step.left + alpha_row[seq.marks[k]];
        }
        if (seq.horizon > seq.times.back()) {
            acc += advance_interval(mu, beta, lam, seq.times.back(), seq.horizon).J;
        }
        path.at_horizon[i] = acc;
    }
    return path;
}

SpectralReport spectral_radius(const HawkesModel& model) {
    const std::size_t d = model.dim();
    // Power iteration on S+ + I: the shift breaks periodicity and moves the
    // Perron root to rho(S+) + 1 without changing eigenvectors.
    Matrix s(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            s(i, j) = std::max(0.0, model.alpha(i, j)) / model.beta[i];
        }
        s(i, i) += 1.0;
    }
    SplitMix64 rng(0x5eedULL);
    std::vector<double> x(d), y(d);
    for (auto& v : x) v = rng.uniform(0.5, 1.5);

    double lambda = 1.0;
    for (int iter = 0; iter < 10000; ++iter) {
        double norm = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j) acc += s(i, j) * x[j];
            y[i] = acc;
            norm = std::max(norm, std::abs(acc));
        }
        if (norm == 0.0) {
            lambda = 0.0;
            break;
        }
        for (std::size_t i = 0; i < d; ++i) y[i] /= norm;
        const double prev = lambda;
        lambda = norm;
        x.swap(y);
        if (std::abs(lambda - prev) <= 1e-10 * std::abs(lambda) && iter > 1) {
            break;
        }
    }
    SpectralReport report;
    report.radius = std::max(0.0, lambda - 1.0);
    report.stable = report.radius < 1.0;
    return report;
}

std::vector<std::uint8_t> identifiability_diagnostic(const EventSequence& seq, std::size_t d) {
    std::vector<std::uint8_t> ok(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) ok[i * d + i] = 1;
    for (std::size_t k = 1; k < seq.size(); ++k) {
        const int j = seq.marks[k - 1];
        const int i = seq.marks[k];
        if (i != j) ok[static_cast<std::size_t>(i) * d + j] = 1;
    }
    return ok;
}

std::vector<std::uint8_t> identifiability_diagnostic(const EventSequence& seq,
                                                     const HawkesModel& model) {
    const std::size_t d = model.dim();
    std::vector<std::uint8_t> ok(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) ok[i * d + i] = 1;
    if (seq.size() < 2) return ok;

    // Left limits of every dimension at every event, one streaming pass.
    Matrix left(seq.size(), d);
    for (std::size_t i = 0; i < d; ++i) {
        const double mu = model.mu[i];
        const double beta = model.beta[i];
        const double* alpha_row = model.alpha.row(i);
        double lam = mu + alpha_row[seq.marks.front()];
        left(0, i) = mu;
        for (std::size_t k = 1; k < seq.size(); ++k) {
            const double l = mu + (lam - mu) * std::exp(-beta * (seq.times[k] - seq.times[k - 1]));
            left(k, i) = l;
            lam = l + alpha_row[seq.marks[k]];
        }
    }
    for (std::size_t k = 1; k < seq.size(); ++k) {
        const int j = seq.marks[k - 1];
        const int i = seq.marks[k];
        if (i == j) continue;
        // Condition i) of the identifiability theorem: the candidate
        // intensity of subprocess i must be positive just before tau.
        if (left(k - 1, i) > 0.0) {
            ok[static_cast<std::size_t>(i) * d + j] = 1;
        }
    }
    return ok;
}

} // namespace hawkes
