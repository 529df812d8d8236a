#include "hawkes/gof.hpp"

#include "hawkes/core.hpp"
#include "hawkes/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hawkes {

std::vector<double> time_rescale(const HawkesModel& model, const EventSequence& seq,
                                 int target, bool include_first) {
    const std::size_t d = model.dim();
    if (target != kTotalProcess && (target < 0 || static_cast<std::size_t>(target) >= d)) {
        throw std::invalid_argument("time_rescale: bad target");
    }
    seq.validate(d);

    const CompensatorPath path = compensator_path(model, seq);
    std::vector<double> transformed;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        if (target != kTotalProcess && seq.marks[k] != target) continue;
        double v = 0.0;
        if (target == kTotalProcess) {
            for (std::size_t i = 0; i < d; ++i) v += path.at_events(k, i);
        } else {
            v = path.at_events(k, static_cast<std::size_t>(target));
        }
        transformed.push_back(v);
    }
    const std::size_t needed = include_first ? 1 : 2;
    if (transformed.size() < needed) {
        throw std::invalid_argument("time_rescale: fewer than " + std::to_string(needed) +
                                    " events in the target stream");
    }
    std::vector<double> increments;
    increments.reserve(transformed.size());
    if (include_first) {
        increments.push_back(std::max(0.0, transformed.front()));
    }
    for (std::size_t k = 1; k < transformed.size(); ++k) {
        increments.push_back(std::max(0.0, transformed[k] - transformed[k - 1]));
    }
    return increments;
}

double kolmogorov_q(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

KsResult ks_exp_test(std::span<const double> sample) {
    const std::size_t n = sample.size();
    if (n == 0) {
        throw std::invalid_argument("ks_exp_test: empty sample");
    }
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());

    double dn = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double cdf = sorted[k] > 0.0 ? 1.0 - std::exp(-sorted[k]) : 0.0;
        dn = std::max(dn, cdf - static_cast<double>(k) / n);
        dn = std::max(dn, static_cast<double>(k + 1) / n - cdf);
    }
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double arg = (sqrt_n + 0.12 + 0.11 / sqrt_n) * dn;
    return {dn, kolmogorov_q(arg)};
}

GofReport gof_report(const HawkesModel& model, const std::vector<EventSequence>& seqs,
                     double q) {
    if (seqs.empty()) {
        throw std::invalid_argument("gof_report: no sequences");
    }
    if (!(q >= 0.0) || q > 1.0) {
        throw std::invalid_argument("gof_report: q must lie in [0, 1]");
    }
    const std::size_t d = model.dim();
    const std::size_t m = d + 1;
    const std::size_t n_seq = seqs.size();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const auto& seq : seqs) seq.validate(d);

    GofReport report;
    report.q = q;
    report.p_tot = nan;
    report.n_sequences = n_seq;
    report.per_sequence_p = Matrix(n_seq, m, nan);
    Matrix per_sequence_d(n_seq, m, nan);
    std::vector<std::vector<std::size_t>> seq_intervals(n_seq,
                                                        std::vector<std::size_t>(m, 0));

#pragma omp parallel for schedule(dynamic) if (n_seq > 1)
    for (std::size_t s = 0; s < n_seq; ++s) {
        for (std::size_t h = 0; h < m; ++h) {
            const int target = h < d ? static_cast<int>(h) : kTotalProcess;
            try {
                const auto increments = time_rescale(model, seqs[s], target);
                const KsResult ks = ks_exp_test(increments);
                report.per_sequence_p(s, h) = ks.p_value;
                per_sequence_d(s, h) = ks.statistic;
                seq_intervals[s][h] = increments.size();
            } catch (const std::invalid_argument&) {
                // Too few events in this stream: skipped, recorded below.
            }
        }
    }

    report.p.assign(d, nan);
    report.ks_stats.assign(m, nan);
    report.n_intervals.assign(m, 0);
    bool any = false;
    for (std::size_t h = 0; h < m; ++h) {
        double p_sum = 0.0, d_sum = 0.0;
        std::size_t used = 0;
        for (std::size_t s = 0; s < n_seq; ++s) {
            if (std::isnan(report.per_sequence_p(s, h))) continue;
            p_sum += report.per_sequence_p(s, h);
            d_sum += per_sequence_d(s, h);
            report.n_intervals[h] += seq_intervals[s][h];
            ++used;
        }
        if (used == 0) {
            report.warnings.push_back("hypothesis " + (h < d ? std::to_string(h + 1)
                                                             : std::string("tot")) +
                                      " skipped: no sequence with enough events");
            continue;
        }
        if (used < n_seq) {
            report.warnings.push_back("hypothesis " + (h < d ? std::to_string(h + 1)
                                                             : std::string("tot")) +
                                      " used " + std::to_string(used) + "/" +
                                      std::to_string(n_seq) + " sequences");
        }
        any = true;
        const double p_avg = p_sum / used;
        if (h < d) {
            report.p[h] = p_avg;
        } else {
            report.p_tot = p_avg;
        }
        report.ks_stats[h] = d_sum / used;
    }
    if (!any) {
        throw std::invalid_argument("gof_report: every sequence failed every hypothesis");
    }

    std::vector<double> all_p(m, 1.0);
    for (std::size_t h = 0; h < d; ++h) all_p[h] = std::isnan(report.p[h]) ? 1.0 : report.p[h];
    all_p[d] = std::isnan(report.p_tot) ? 1.0 : report.p_tot;
    report.bh_rejected = benjamini_hochberg(all_p, q, m);
    return report;
}

} // namespace hawkes
