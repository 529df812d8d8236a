#include "hawkes/sim.hpp"

#include "hawkes/io.hpp"
#include "hawkes/rng.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hawkes {

void SimConfig::validate() const {
    model.validate();
    if (target_events.has_value() == horizon.has_value()) {
        throw std::invalid_argument("SimConfig: set exactly one of target_events / horizon");
    }
    if (target_events && *target_events < 1) {
        throw std::invalid_argument("SimConfig: target_events must be >= 1");
    }
    if (horizon && !(*horizon > 0.0)) {
        throw std::invalid_argument("SimConfig: horizon must be > 0");
    }
}

EventSequence simulate(const SimConfig& config) {
    config.validate();
    const HawkesModel& model = config.model;
    const std::size_t d = model.dim();
    SplitMix64 rng(config.seed);

    // Signed and positive-part excitation aggregates per receiving
    // dimension; both decay at rate beta_i, so one exponential per
    // dimension advances the whole state.
    std::vector<double> excitation(d, 0.0);
    std::vector<double> positive_excitation(d, 0.0);
    std::vector<double> lambda(d, 0.0);

    EventSequence seq;
    if (config.target_events) seq.times.reserve(*config.target_events);

    double now = 0.0;
    std::uint64_t draws = 0;
    while (true) {
        double lambda_plus = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            lambda_plus += model.mu[i] + positive_excitation[i];
        }
        const double wait = rng.exponential(lambda_plus);
        const double candidate = now + wait;
        if (++draws > config.max_candidates) {
            throw std::runtime_error("simulate: candidate budget exhausted (unstable model?)");
        }
        if (config.horizon && candidate > *config.horizon) {
            seq.horizon = *config.horizon;
            break;
        }

        double lambda_total = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            const double decay = std::exp(-model.beta[i] * wait);
            excitation[i] *= decay;
            positive_excitation[i] *= decay;
            lambda[i] = std::max(0.0, model.mu[i] + excitation[i]);
            lambda_total += lambda[i];
        }
        assert(lambda_total <= lambda_plus * (1.0 + 1e-9) && "thinning bound violated");
        if (config.check_dominating && lambda_total > lambda_plus * (1.0 + 1e-9)) {
            throw std::logic_error("simulate: dominating rate violated");
        }
        now = candidate;

        if (rng.next_double() * lambda_plus <= lambda_total) {
            // Accepted: draw the mark proportionally to the conditional
            // intensities at the accepted time.
            double u = rng.next_double() * lambda_total;
            std::size_t mark = d - 1;
            for (std::size_t i = 0; i < d; ++i) {
                if (u <= lambda[i]) {
                    mark = i;
                    break;
                }
                u -= lambda[i];
            }
            seq.times.push_back(now);
            seq.marks.push_back(static_cast<int>(mark));
            for (std::size_t i = 0; i < d; ++i) {
                const double a = model.alpha(i, mark);
                excitation[i] += a;
                if (a > 0.0) positive_excitation[i] += a;
            }
            if (config.target_events && seq.size() == *config.target_events) {
                seq.horizon = now;
                break;
            }
        }
    }
    return seq;
}

HawkesModel scenario(const std::string& name_or_path) {
    HawkesModel m;
    if (name_or_path == "S1") {
        m.mu = {0.5, 1.0};
        m.alpha = Matrix::from_rows({{-1.9, 3.0}, {1.2, 1.5}});
        m.beta = {5.0, 8.0};
    } else if (name_or_path == "S2") {
        m.mu = {0.7, 1.0};
        m.alpha = Matrix::from_rows({{0.2, 0.0}, {-0.6, 1.2}});
        m.beta = {3.0, 2.0};
    } else if (name_or_path == "S3") {
        m.mu = {1.2, 1.0};
        m.alpha = Matrix::from_rows({{-1.0, 0.1}, {0.0, -0.8}});
        m.beta = {0.3, 0.5};
    } else {
        m = read_model(name_or_path).model;
    }
    m.validate();
    return m;
}

} // namespace hawkes
