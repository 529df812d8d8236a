#pragma once

#include "hawkes/model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hawkes {

/// Objective flavour: `exact` integrates the conditional intensity
/// max(0, lambda*) via restart times; `approx` integrates the signed
/// underlying intensity lambda* itself (the Lemonnier-style baseline).
enum class Objective { exact, approx };

/// Log-likelihood sentinel. A nonpositive intensity at an event time makes
/// the log-likelihood -inf; optimizers handle a large finite value with a
/// slope in the violation count much better, so the convention is
/// -1e18 - 1e15 * (#violated event terms).
inline constexpr double kInfeasibleLogLik = -1e18;
inline constexpr double kInfeasiblePenaltyPerTerm = 1e15;

inline double infeasible_value(std::size_t violations) {
    return kInfeasibleLogLik - kInfeasiblePenaltyPerTerm * static_cast<double>(violations);
}

/// One inter-event step of the per-dimension recursion on [t0, t1]:
/// lambda* decays from `lam_star` (jump at t0 included) toward mu.
struct IntervalStep {
    double left;    // lambda*(t1-), the left limit at the interval end
    double restart; // restart time in [t0, t1]
    double J;       // compensator increment over [t0, t1], >= 0 for `exact`
};

/// Advances one dimension across [t0, t1]. For the exact objective the
/// increment integrates max(0, lambda*) using the closed-form restart time;
/// for approx it integrates lambda* itself and the restart is pinned at t0.
IntervalStep advance_interval(double mu, double beta, double lam_star,
                              double t0, double t1, Objective obj = Objective::exact);

/// Restart time of dimension i on [T_k, T_next]: the first instant at which
/// the underlying intensity, starting from lambda*(T_k) = `lambda_star_at_Tk`,
/// becomes nonnegative, clamped to T_next. If the result is strictly interior
/// the underlying intensity vanishes there.
double restart_time(const HawkesModel& model, double lambda_star_at_Tk,
                    std::size_t i, double T_k, double T_next);

/// Underlying (signed) intensity lambda*_i(t); jump included at event times.
double underlying_intensity(const HawkesModel& model, const EventSequence& seq,
                            std::size_t i, double t);

/// Conditional intensity max(0, lambda*_i(t)), computed through the
/// restart-time route used by the compensator/likelihood paths.
double conditional_intensity(const HawkesModel& model, const EventSequence& seq,
                             std::size_t i, double t);

/// Compensator of subprocess i at time t (integral of the conditional
/// intensity), in closed form.
double compensator(const HawkesModel& model, const EventSequence& seq,
                   std::size_t i, double t);

/// Streaming recursion state across global events.
struct IntervalState {
    std::vector<double> lambda_star_at_event; // lambda*_i at the last event, jump included
    std::vector<double> restart;              // restart times of the last closed interval
    std::vector<double> partial_compensator;  // Lambda^i accumulated up to last_time
    double last_time = 0.0;
    std::size_t n_events = 0;
};

/// Incremental evaluator of the log-likelihood: feed events in time order,
/// then close the window with finish(horizon). Event terms use the left
/// limit of the underlying intensity; compensators accumulate per interval.
class LikelihoodAccumulator {
public:
    explicit LikelihoodAccumulator(const HawkesModel& model,
                                   Objective objective = Objective::exact);

    void add_event(double t, int mark);
    void finish(double horizon);

    const IntervalState& state() const { return state_; }

    double event_terms(std::size_t i) const { return event_terms_[i]; }
    double compensator(std::size_t i) const { return state_.partial_compensator[i]; }
    std::size_t violations(std::size_t i) const { return violations_[i]; }

    /// Per-dimension log-likelihood contribution (sentinel when violated).
    double per_dimension(std::size_t i) const;
    /// Total log-likelihood, the sum over dimensions.
    double total() const;

private:
    const HawkesModel& model_;
    Objective objective_;
    IntervalState state_;
    std::vector<double> event_terms_;
    std::vector<std::size_t> violations_;
    bool finished_ = false;
};

struct LogLik {
    double value = 0.0;
    std::vector<double> per_dimension;
    std::size_t infeasible_terms = 0;

    bool feasible() const { return infeasible_terms == 0; }
};

/// Exact log-likelihood, streamed in O(N d). Dimensions are independent and
/// evaluated in parallel when d is large; the reported total is the ordered
/// sum of the per-dimension values.
LogLik log_likelihood(const HawkesModel& model, const EventSequence& seq);

/// Baseline likelihood that approximates the compensator by the integral of
/// the signed underlying intensity (no positive part).
LogLik approx_log_likelihood(const HawkesModel& model, const EventSequence& seq);

/// Log-likelihood of one dimension given its parameter block only. The row
/// view holds (mu_i, alpha_i., beta_i); `self_mark` identifies which events
/// belong to subprocess i. Returns the sentinel on nonpositive event terms.
double dim_log_likelihood(double mu, std::span<const double> alpha_row, double beta,
                          int self_mark, const EventSequence& seq, Objective objective);

/// Compensator values of every dimension at each event time and at the
/// horizon, from a single streaming pass.
struct CompensatorPath {
    Matrix at_events;                 // size() x d, entry (k, i) = Lambda^i(T_(k))
    std::vector<double> at_horizon;   // Lambda^i(horizon)
};
CompensatorPath compensator_path(const HawkesModel& model, const EventSequence& seq);

/// Spectral radius of (max(0, alpha_ij) / beta_i) by power iteration.
SpectralReport spectral_radius(const HawkesModel& model);

/// Support condition for pairwise identifiability: entry (i, j), i != j, is
/// true when some event of subprocess j is followed by an event of subprocess
/// i with only subprocess-j events in between (equivalently, some event of i
/// directly follows an event of j). Diagonal entries are reported true: the
/// condition constrains distinct pairs only.
std::vector<std::uint8_t> identifiability_diagnostic(const EventSequence& seq, std::size_t d);

/// Same check, additionally requiring the candidate model's intensity to be
/// positive at the left limit of the qualifying subprocess-j event.
std::vector<std::uint8_t> identifiability_diagnostic(const EventSequence& seq,
                                                     const HawkesModel& model);

} // namespace hawkes
