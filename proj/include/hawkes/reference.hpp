#pragma once

#include "hawkes/model.hpp"

#include <cstddef>

namespace hawkes::reference {

/// Serial reference path. Everything here recomputes from the definitions:
/// intensities by direct double summation over the history, compensators by
/// adaptive quadrature of the clamped intensity, the restart time by
/// bisection. It is O(N^2) and exists to check the streaming kernels (and to
/// serve as the baseline in the benchmark); keep it independent of the
/// recursions in core.

/// lambda*_i(t) = mu_i + sum_j sum_{T_k^j <= t} alpha_ij e^{-beta_i (t - T_k^j)}.
double underlying_intensity_direct(const HawkesModel& model, const EventSequence& seq,
                                   std::size_t i, double t);

/// Left limit: the same sum restricted to events strictly before t.
double left_limit_direct(const HawkesModel& model, const EventSequence& seq,
                         std::size_t i, double t);

/// Root of lambda*_i on (a, b) by bisection, assuming a sign change;
/// refined to |b - a| <= tol.
double bisect_restart(const HawkesModel& model, const EventSequence& seq,
                      std::size_t i, double a, double b, double tol = 1e-13);

/// Integral of max(0, lambda*_i) over [0, t] by adaptive Simpson quadrature,
/// split at event times and at bisected sign changes.
double compensator_quadrature(const HawkesModel& model, const EventSequence& seq,
                              std::size_t i, double t, double rel_tol = 1e-10);

/// Integral of the signed lambda*_i over [0, t] (the approx-objective
/// compensator), same quadrature machinery.
double signed_compensator_quadrature(const HawkesModel& model, const EventSequence& seq,
                                     std::size_t i, double t, double rel_tol = 1e-10);

/// Naive O(N^2) log-likelihood: direct-sum left limits for the event terms
/// and quadrature for the compensator, with the same infeasibility sentinel
/// as the streaming path.
double log_likelihood_naive(const HawkesModel& model, const EventSequence& seq,
                            double quad_rel_tol = 1e-12);

double approx_log_likelihood_naive(const HawkesModel& model, const EventSequence& seq,
                                   double quad_rel_tol = 1e-12);

} // namespace hawkes::reference
