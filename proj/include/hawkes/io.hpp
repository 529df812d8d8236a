#pragma once

#include "hawkes/model.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hawkes {

/// File/parse failures: malformed rows, broken invariants, missing files.
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Events CSV: header `time,mark`, times strictly increasing, marks 1-based
/// on disk (0-based in memory). An optional comment line `# horizon=<float>`
/// pins the window end; it defaults to the last event time.
EventSequence read_events(const std::string& path);
void write_events(const std::string& path, const EventSequence& seq);

/// Model JSON document: {"d", "mu", "alpha", "beta", "meta"}. Doubles are
/// serialized with 17 significant digits so round-trips are exact.
struct ModelDocument {
    HawkesModel model;
    std::string meta_json; // serialized "meta" object ("{}" when absent)
};
ModelDocument read_model(const std::string& path);
void write_model(const std::string& path, const HawkesModel& model,
                 const std::string& meta_json = "{}");

/// Sign matrix CSV ({-1, 0, +1} entries) for interaction-support heatmaps.
void write_support_csv(const std::string& path, const Matrix& alpha);

/// Generic CSV table with a header row; used by the bench reports.
void write_table_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

/// Formats a double with round-trip precision (17 significant digits).
std::string format_double(double v);

} // namespace hawkes
