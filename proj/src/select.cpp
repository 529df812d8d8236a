#include "hawkes/select.hpp"

#include "hawkes/gof.hpp"
#include "hawkes/rng.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace hawkes {

std::vector<std::uint8_t> benjamini_hochberg(const std::vector<double>& pvalues,
                                             double q, std::size_t m) {
    if (!(q >= 0.0) || q > 1.0) {
        throw std::invalid_argument("benjamini_hochberg: q must lie in [0, 1]");
    }
    if (m < pvalues.size()) {
        throw std::invalid_argument("benjamini_hochberg: family size m below p-value count");
    }
    for (double p : pvalues) {
        if (!(p >= 0.0) || p > 1.0) {
            throw std::invalid_argument("benjamini_hochberg: p-values must lie in [0, 1]");
        }
    }
    std::vector<double> sorted(pvalues);
    std::sort(sorted.begin(), sorted.end());
    double threshold_p = -1.0;
    for (std::size_t k = sorted.size(); k >= 1; --k) {
        if (sorted[k - 1] < q * static_cast<double>(k) / static_cast<double>(m)) {
            threshold_p = sorted[k - 1];
            break;
        }
    }
    std::vector<std::uint8_t> rejected(pvalues.size(), 0);
    if (threshold_p >= 0.0) {
        for (std::size_t k = 0; k < pvalues.size(); ++k) {
            rejected[k] = pvalues[k] <= threshold_p ? 1 : 0;
        }
    }
    return rejected;
}

SupportSelection threshold_select(const FitResult& fit_result,
                                  const std::vector<EventSequence>& seqs, std::size_t d,
                                  double epsilon, const FitConfig& config,
                                  bool scale_by_beta) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("threshold_select: epsilon must lie in (0, 1)");
    }
    if (fit_result.model.dim() != d) {
        throw std::invalid_argument("threshold_select: fit dimension mismatch");
    }
    const std::size_t n = d * d;
    std::vector<double> value(n);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double a = std::abs(fit_result.model.alpha(i, j));
            value[i * d + j] = scale_by_beta ? a / fit_result.model.beta[i] : a;
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });

    const double total = std::accumulate(value.begin(), value.end(), 0.0);
    SupportSelection sel;
    sel.method = "mle_eps";
    sel.level = epsilon;
    sel.support.assign(n, 1);
    double cumulative = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        cumulative += value[order[r]];
        if (cumulative < epsilon * total) {
            sel.support[order[r]] = 0;
        } else {
            break; // cumulative sums only grow
        }
    }
    sel.refit = fit_with_support(seqs, d, config, sel.support, &fit_result.model);
    return sel;
}

EpsilonChoice choose_epsilon(const std::vector<FitResult>& fits,
                             const std::vector<std::vector<EventSequence>>& train_sets,
                             const std::vector<EventSequence>& test_seqs, std::size_t d,
                             const std::vector<double>& candidates,
                             const FitConfig& config, double q) {
    if (candidates.empty()) {
        throw std::invalid_argument("choose_epsilon: no candidates");
    }
    if (fits.empty() || fits.size() != train_sets.size()) {
        throw std::invalid_argument("choose_epsilon: fits/train_sets mismatch");
    }
    if (test_seqs.empty()) {
        throw std::invalid_argument("choose_epsilon: no test sequences");
    }

    // Different epsilons often induce the same support; cache the refit+gof
    // score per (fit, support) pair.
    std::vector<std::map<std::vector<std::uint8_t>, double>> cache(fits.size());

    EpsilonChoice best;
    bool first = true;
    for (const double eps : candidates) {
        double sum_p = 0.0;
        std::size_t count = 0;
        for (std::size_t f = 0; f < fits.size(); ++f) {
            SupportSelection sel = threshold_select(fits[f], train_sets[f], d, eps, config);
            auto [it, inserted] = cache[f].try_emplace(sel.support, 0.0);
            if (inserted) {
                const GofReport report = gof_report(sel.refit.model, test_seqs, q);
                double s = 0.0;
                std::size_t c = 0;
                for (double p : report.p) {
                    if (!std::isnan(p)) {
                        s += p;
                        ++c;
                    }
                }
                if (!std::isnan(report.p_tot)) {
                    s += report.p_tot;
                    ++c;
                }
                it->second = c > 0 ? s / static_cast<double>(c) : 0.0;
            }
            sum_p += it->second;
            ++count;
        }
        const double mean_p = sum_p / static_cast<double>(count);
        // Ties break toward the larger (sparser) epsilon.
        if (first || mean_p > best.mean_p + 1e-12 ||
            (mean_p >= best.mean_p - 1e-12 && eps > best.epsilon)) {
            best.epsilon = eps;
            best.mean_p = mean_p;
            first = false;
        }
    }
    return best;
}

namespace {

double empirical_p_value(const std::vector<double>& estimates) {
    const double n = static_cast<double>(estimates.size());
    std::size_t nonpos = 0, nonneg = 0;
    for (double e : estimates) {
        if (e <= 0.0) ++nonpos;
        if (e >= 0.0) ++nonneg;
    }
    const double lower = (1.0 + static_cast<double>(nonpos)) / (n + 1.0);
    const double upper = (1.0 + static_cast<double>(nonneg)) / (n + 1.0);
    return std::min(1.0, 2.0 * std::min(lower, upper));
}

} // namespace

SupportSelection confidence_select(const std::vector<FitResult>& fits,
                                   const std::vector<EventSequence>& seqs, std::size_t d,
                                   double gamma, IntervalKind kind,
                                   const FitConfig& config) {
    const std::size_t n = fits.size();
    if (n < 2) {
        throw std::invalid_argument(
            "confidence_select: needs at least 2 per-realization fits; with a single "
            "realization, build a sample via resample_concatenate first");
    }
    if (!(gamma > 0.0) || !(gamma < 1.0)) {
        throw std::invalid_argument("confidence_select: gamma must lie in (0, 1)");
    }
    for (const auto& f : fits) {
        if (f.model.dim() != d) {
            throw std::invalid_argument("confidence_select: fit dimension mismatch");
        }
    }

    const std::size_t cells = d * d;
    std::vector<std::uint8_t> interval_excludes_zero(cells, 0);
    std::vector<double> pvalues(cells, 1.0);

    boost::math::students_t student(static_cast<double>(n - 1));
    const double t_quantile = boost::math::quantile(student, 1.0 - gamma / 2.0);

    std::vector<double> estimates(n);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        const std::size_t i = cell / d;
        const std::size_t j = cell % d;
        for (std::size_t r = 0; r < n; ++r) {
            estimates[r] = fits[r].model.alpha(i, j);
        }
        if (kind == IntervalKind::empirical) {
            std::vector<double> sorted(estimates);
            std::sort(sorted.begin(), sorted.end());
            // Order-statistic indices floor(gamma n / 2) and
            // ceil((1 - gamma/2) n), clamped into the sample for small n.
            const auto lo_idx = static_cast<std::size_t>(std::max<double>(
                1.0, std::floor(gamma / 2.0 * static_cast<double>(n))));
            const auto hi_idx = static_cast<std::size_t>(std::min<double>(
                static_cast<double>(n),
                std::ceil((1.0 - gamma / 2.0) * static_cast<double>(n))));
            const double lo = sorted[lo_idx - 1];
            const double hi = sorted[hi_idx - 1];
            interval_excludes_zero[cell] = (lo > 0.0 || hi < 0.0) ? 1 : 0;
            pvalues[cell] = empirical_p_value(estimates);
        } else {
            const double mean =
                std::accumulate(estimates.begin(), estimates.end(), 0.0) / static_cast<double>(n);
            double ss = 0.0;
            for (double e : estimates) ss += (e - mean) * (e - mean);
            const double sd = std::sqrt(ss / static_cast<double>(n - 1));
            const double lo = mean - t_quantile * sd;
            const double hi = mean + t_quantile * sd;
            interval_excludes_zero[cell] = (lo > 0.0 || hi < 0.0) ? 1 : 0;
            if (sd == 0.0) {
                pvalues[cell] = mean == 0.0 ? 1.0 : 0.0;
            } else {
                const double t_stat = std::abs(mean) * std::sqrt(static_cast<double>(n)) / sd;
                pvalues[cell] = 2.0 * boost::math::cdf(boost::math::complement(student, t_stat));
            }
        }
    }

    const std::vector<std::uint8_t> rejected = benjamini_hochberg(pvalues, gamma, cells);

    SupportSelection sel;
    sel.method = kind == IntervalKind::empirical ? "cfe" : "cfst";
    sel.level = gamma;
    sel.support.assign(cells, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
        sel.support[cell] = (interval_excludes_zero[cell] || rejected[cell]) ? 1 : 0;
    }
    sel.refit = fit_with_support(seqs, d, config, sel.support);
    return sel;
}

std::vector<EventSequence> resample_concatenate(const std::vector<EventSequence>& realizations,
                                                std::size_t k, std::size_t reps,
                                                std::uint64_t seed) {
    const std::size_t n = realizations.size();
    if (k == 0 || reps == 0) {
        throw std::invalid_argument("resample_concatenate: k and reps must be >= 1");
    }
    if (k > n) {
        throw std::invalid_argument("resample_concatenate: k exceeds available realizations");
    }
    const double window = realizations.front().horizon;
    for (const auto& seq : realizations) {
        if (std::abs(seq.horizon - window) > 1e-9 * std::max(1.0, window)) {
            throw std::invalid_argument(
                "resample_concatenate: realizations must share the window length");
        }
    }

    SplitMix64 rng(seed);
    std::vector<EventSequence> out;
    out.reserve(reps);
    std::vector<std::size_t> indices(n);
    for (std::size_t rep = 0; rep < reps; ++rep) {
        std::iota(indices.begin(), indices.end(), 0);
        // Partial Fisher-Yates: the first k entries form an ordered draw
        // without replacement.
        for (std::size_t r = 0; r < k; ++r) {
            const std::size_t pick = r + static_cast<std::size_t>(rng.next_below(n - r));
            std::swap(indices[r], indices[pick]);
        }
        EventSequence cat;
        cat.horizon = window * static_cast<double>(k);
        for (std::size_t r = 0; r < k; ++r) {
            const EventSequence& block = realizations[indices[r]];
            const double shift = window * static_cast<double>(r);
            for (std::size_t e = 0; e < block.size(); ++e) {
                cat.times.push_back(block.times[e] + shift);
                cat.marks.push_back(block.marks[e]);
            }
        }
        out.push_back(std::move(cat));
    }
    return out;
}

} // namespace hawkes
