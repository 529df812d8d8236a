#pragma once

#include "hawkes/core.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"

#include <cmath>
#include <vector>

namespace testutil {

struct Instance {
    hawkes::HawkesModel model;
    hawkes::EventSequence seq;
};

inline hawkes::HawkesModel random_model(hawkes::SplitMix64& rng, std::size_t d,
                                        double alpha_scale = 1.5) {
    hawkes::HawkesModel m;
    m.mu.resize(d);
    m.beta.resize(d);
    m.alpha = hawkes::Matrix(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        m.mu[i] = rng.uniform(0.5, 2.0);
        m.beta[i] = rng.uniform(0.5, 6.0);
        for (std::size_t j = 0; j < d; ++j) {
            m.alpha(i, j) = rng.uniform(-alpha_scale, alpha_scale);
        }
    }
    return m;
}

inline hawkes::EventSequence random_sequence(hawkes::SplitMix64& rng, std::size_t d,
                                             std::size_t n, double horizon) {
    hawkes::EventSequence seq;
    seq.horizon = horizon;
    std::vector<double> times(n);
    for (auto& t : times) t = rng.uniform(1e-3, horizon);
    std::sort(times.begin(), times.end());
    for (std::size_t k = 1; k < n; ++k) {
        if (times[k] <= times[k - 1]) times[k] = std::nextafter(times[k - 1], horizon);
    }
    seq.times = std::move(times);
    seq.marks.resize(n);
    for (auto& m : seq.marks) m = static_cast<int>(rng.next_below(d));
    return seq;
}

/// Smallest left-limit underlying intensity over own-event terms; the
/// likelihood is feasible and smooth in a neighbourhood when this is
/// comfortably positive.
inline double min_event_margin(const hawkes::HawkesModel& model,
                               const hawkes::EventSequence& seq) {
    const std::size_t d = model.dim();
    double margin = 1e300;
    for (std::size_t i = 0; i < d; ++i) {
        const double mu = model.mu[i];
        const double beta = model.beta[i];
        const double* row = model.alpha.row(i);
        double lam = mu + row[seq.marks.empty() ? 0 : seq.marks.front()];
        for (std::size_t k = 1; k < seq.size(); ++k) {
            const double left =
                mu + (lam - mu) * std::exp(-beta * (seq.times[k] - seq.times[k - 1]));
            if (seq.marks[k] == static_cast<int>(i)) margin = std::min(margin, left);
            lam = left + row[seq.marks[k]];
        }
    }
    return margin;
}

/// Random (model, sequence) pair with mixed-sign interactions; when
/// `feasible_margin` > 0 the pair is redrawn until every own-event left
/// limit exceeds the margin.
inline Instance random_instance(hawkes::SplitMix64& rng, std::size_t d_max,
                                std::size_t n_max, double feasible_margin = 0.0) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const std::size_t d = 1 + rng.next_below(d_max);
        const std::size_t n = 2 + rng.next_below(n_max - 1);
        Instance inst;
        inst.model = random_model(rng, d);
        const double mu_total = [&] {
            double s = 0.0;
            for (double m : inst.model.mu) s += m;
            return s;
        }();
        const double horizon = static_cast<double>(n) / mu_total;
        inst.seq = random_sequence(rng, d, n, horizon);
        if (feasible_margin <= 0.0 ||
            min_event_margin(inst.model, inst.seq) > feasible_margin) {
            return inst;
        }
    }
    // Fall back to a calm model that is always feasible.
    Instance inst;
    inst.model = random_model(rng, 1, 0.0);
    inst.seq = random_sequence(rng, 1, 2, 10.0);
    return inst;
}

/// Analytic gradient of the exact per-dimension log-likelihood with respect
/// to (mu_i, alpha_i1..alpha_id), beta held fixed. Valid at feasible points
/// where no restart time coincides with an event (there the compensator's
/// dependence on the restart time vanishes: the integrand is zero at the
/// moving boundary). Independent check for the finite-difference gradients.
inline std::vector<double> dim_grad_mu_alpha(double mu, const std::vector<double>& alpha_row,
                                             double beta, int self_mark,
                                             const hawkes::EventSequence& seq) {
    const std::size_t d = alpha_row.size();
    std::vector<double> grad(1 + d, 0.0);   // event-term part minus compensator part
    std::vector<double> dlam(1 + d, 0.0);   // d lambda*(T_k) / d theta
    if (seq.empty()) {
        grad[0] = -seq.horizon;
        return grad;
    }
    // First event: compensator mu * t1, event term log(mu) when it is ours.
    grad[0] -= seq.times.front();
    if (seq.marks.front() == self_mark) grad[0] += 1.0 / mu;
    dlam[0] = 1.0;
    dlam[1 + seq.marks.front()] = 1.0;
    double lam = mu + alpha_row[seq.marks.front()];

    const auto interval = [&](double t0, double t1, bool event_at_t1, int mark_at_t1) {
        const double dt = t1 - t0;
        const double expd = std::exp(-beta * dt);
        const double left = mu + (lam - mu) * expd;

        // Compensator increment derivative.
        if (lam >= 0.0) {
            grad[0] -= dt + (dlam[0] - 1.0) * (1.0 - expd) / beta;
            for (std::size_t j = 0; j < d; ++j) {
                grad[1 + j] -= dlam[1 + j] * (1.0 - expd) / beta;
            }
        } else {
            const double ratio = (mu - lam) / mu;
            const double root = t0 + std::log(ratio) / beta;
            if (root < t1) {
                const double expr = 1.0 / ratio;
                grad[0] -= (t1 - root) + (dlam[0] - 1.0) * (expr - expd) / beta;
                for (std::size_t j = 0; j < d; ++j) {
                    grad[1 + j] -= dlam[1 + j] * (expr - expd) / beta;
                }
            }
            // root >= t1: increment identically zero nearby
        }

        // Left-limit derivative, event term, then jump.
        std::vector<double> dleft(1 + d);
        dleft[0] = 1.0 + (dlam[0] - 1.0) * expd;
        for (std::size_t j = 0; j < d; ++j) dleft[1 + j] = dlam[1 + j] * expd;
        if (event_at_t1) {
            if (mark_at_t1 == self_mark) {
                for (std::size_t c = 0; c <= d; ++c) grad[c] += dleft[c] / left;
            }
            dlam = dleft;
            dlam[1 + mark_at_t1] += 1.0;
            lam = left + alpha_row[mark_at_t1];
        }
    };

    for (std::size_t k = 1; k < seq.size(); ++k) {
        interval(seq.times[k - 1], seq.times[k], true, seq.marks[k]);
    }
    if (seq.horizon > seq.times.back()) {
        interval(seq.times.back(), seq.horizon, false, 0);
    }
    return grad;
}

} // namespace testutil
