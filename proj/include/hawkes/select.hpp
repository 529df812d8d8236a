#pragma once

#include "hawkes/fit.hpp"
#include "hawkes/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hawkes {

/// Benjamini-Hochberg step-up procedure: with the p-values sorted
/// increasingly, find the largest K with p_(K) < q K / m and reject every
/// hypothesis whose p-value is <= p_(K). `m` is the family size (>= the
/// number of supplied p-values). Returns rejection flags aligned with the
/// input order.
std::vector<std::uint8_t> benjamini_hochberg(const std::vector<double>& pvalues,
                                             double q, std::size_t m);

struct SupportSelection {
    std::vector<std::uint8_t> support; // d*d row-major, nonzero = kept
    std::string method;                // "mle_eps", "cfe" or "cfst"
    double level = 0.0;                // epsilon or gamma
    FitResult refit;                   // alpha is exactly zero outside support
};

/// Cumulative thresholding (MLE-eps): sort |alpha~| increasingly, zero every
/// entry whose cumulative sum stays below epsilon * total, refit the
/// surviving free parameters. With `scale_by_beta` the ranking uses
/// |alpha~_ij / beta~_i| (kernel L1 mass) instead.
SupportSelection threshold_select(const FitResult& fit_result,
                                  const std::vector<EventSequence>& seqs, std::size_t d,
                                  double epsilon, const FitConfig& config,
                                  bool scale_by_beta = false);

struct EpsilonChoice {
    double epsilon = 0.0;
    double mean_p = 0.0;
};

/// Sweeps candidate thresholds: each candidate is applied to every fit, the
/// refits are scored by the mean of all goodness-of-fit p-values on the test
/// sequences, and the best candidate wins (ties toward the larger, sparser
/// epsilon). `train_sets[f]` holds the sequences used to refit `fits[f]`.
EpsilonChoice choose_epsilon(const std::vector<FitResult>& fits,
                             const std::vector<std::vector<EventSequence>>& train_sets,
                             const std::vector<EventSequence>& test_seqs, std::size_t d,
                             const std::vector<double>& candidates,
                             const FitConfig& config, double q = 0.05);

enum class IntervalKind { empirical, student };

/// Confidence-interval selection over n per-realization estimates (CfE uses
/// empirical quantiles, CfSt a Student interval). An entry is kept when its
/// interval excludes zero or when Benjamini-Hochberg (family d^2, level
/// gamma) rejects its two-sided null; everything else is zeroed and the
/// survivors are refit on `seqs`.
SupportSelection confidence_select(const std::vector<FitResult>& fits,
                                   const std::vector<EventSequence>& seqs, std::size_t d,
                                   double gamma, IntervalKind kind,
                                   const FitConfig& config);

/// Resampling by concatenation: draws k realizations without replacement
/// (order-sensitive), shifts the r-th drawn sequence by (r-1) * L and
/// concatenates onto [0, k * L]; repeated `reps` times. All inputs must share
/// the window length L.
std::vector<EventSequence> resample_concatenate(const std::vector<EventSequence>& realizations,
                                                std::size_t k, std::size_t reps,
                                                std::uint64_t seed);

} // namespace hawkes
