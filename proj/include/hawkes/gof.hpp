#pragma once

#include "hawkes/model.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hawkes {

/// Target selector for time rescaling: a 0-based dimension index, or the
/// superposed process.
inline constexpr int kTotalProcess = -1;

/// Compensator increments between consecutive events of the target stream:
/// Lambda^i(T_{k+1}^i) - Lambda^i(T_k^i) for a dimension, or increments of
/// the total compensator over all events. Under the true model these are
/// i.i.d. unit exponentials (Time Change Theorem). With `include_first` the
/// increment Lambda(T_1) - Lambda(0) is prepended.
std::vector<double> time_rescale(const HawkesModel& model, const EventSequence& seq,
                                 int target, bool include_first = false);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// One-sample two-sided Kolmogorov-Smirnov test against Exp(1). The p-value
/// uses the asymptotic Kolmogorov series at (sqrt(n) + 0.12 + 0.11/sqrt(n)) D_n.
KsResult ks_exp_test(std::span<const double> sample);

/// Survival function of the Kolmogorov distribution,
/// Q(x) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 x^2).
double kolmogorov_q(double x);

struct GofReport {
    std::vector<double> p;                  // averaged per-dimension p-values
    double p_tot = 0.0;                     // averaged total-process p-value
    std::vector<double> ks_stats;           // d+1 averaged KS statistics
    std::vector<std::uint8_t> bh_rejected;  // d+1 flags at level q, family d+1
    std::vector<std::size_t> n_intervals;   // d+1 total interval counts
    double q = 0.05;
    std::size_t n_sequences = 0;
    Matrix per_sequence_p;                  // n_seq x (d+1); NaN where skipped
    std::vector<std::string> warnings;
};

/// Runs the d+1 tests on every sequence, averages p-values across sequences
/// (the per-hypothesis mean over those with enough events), and applies
/// Benjamini-Hochberg with family size d+1. Sequences too short for a
/// hypothesis are skipped with a warning; throws only when every sequence
/// fails every hypothesis.
GofReport gof_report(const HawkesModel& model, const std::vector<EventSequence>& seqs,
                     double q);

} // namespace hawkes
