#pragma once

#include "hawkes/model.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace hawkes {

/// Ogata-thinning configuration. Exactly one of `target_events` / `horizon`
/// must be set: the run stops after that many accepted events (the horizon
/// becomes the last event time) or at the fixed horizon.
struct SimConfig {
    HawkesModel model;
    std::optional<std::size_t> target_events;
    std::optional<double> horizon;
    std::uint64_t seed = 0;
    // Abort threshold against runaway (unstable) models.
    std::uint64_t max_candidates = 100'000'000;
    // Re-verify the dominating bound at every candidate (always on in
    // assert-enabled builds).
    bool check_dominating = false;

    void validate() const;
};

/// Exact simulation by thinning. The dominating rate freezes the
/// positive-part intensity at the current point (valid forward in time since
/// positive contributions only decay) and is refreshed at every candidate,
/// accepted or not. Marks are drawn from the exact per-dimension conditional
/// intensities at the accepted time. Deterministic given the seed.
EventSequence simulate(const SimConfig& config);

/// Benchmark parameter sets. "S1", "S2", "S3" are the two-dimensional
/// scenarios; any other argument is treated as a path to a model JSON file
/// (the file-driven route for high-dimensional settings).
HawkesModel scenario(const std::string& name_or_path);

} // namespace hawkes
