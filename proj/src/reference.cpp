#include "hawkes/reference.hpp"

#include "hawkes/core.hpp"

#include <cmath>
#include <functional>

namespace hawkes::reference {

namespace {

double signed_intensity_at(const HawkesModel& model, const EventSequence& seq,
                           std::size_t i, double t, bool include_at_t) {
    const double mu = model.mu[i];
    const double beta = model.beta[i];
    const double* alpha_row = model.alpha.row(i);
    double acc = mu;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const double tk = seq.times[k];
        if (tk > t || (!include_at_t && tk == t)) break;
        acc += alpha_row[seq.marks[k]] * std::exp(-beta * (t - tk));
    }
    return acc;
}

// Smooth continuation of lambda*_i on an inter-event piece: only events with
// T_k <= start contribute, decayed to u. Valid on [start, next event],
// including both endpoints (the right endpoint equals the left limit there).
double piece_intensity(const HawkesModel& model, const EventSequence& seq,
                       std::size_t i, double start, double u) {
    const double mu = model.mu[i];
    const double beta = model.beta[i];
    const double* alpha_row = model.alpha.row(i);
    double acc = mu;
    for (std::size_t k = 0; k < seq.size() && seq.times[k] <= start; ++k) {
        acc += alpha_row[seq.marks[k]] * std::exp(-beta * (u - seq.times[k]));
    }
    return acc;
}

// Recursive adaptive Simpson on a single smooth piece.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double fa, double fm, double fb, double whole, double tol,
                        int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

double bisect_piece_root(const HawkesModel& model, const EventSequence& seq,
                         std::size_t i, double start, double a, double b, double tol) {
    double fa = piece_intensity(model, seq, i, start, a);
    double lo = a, hi = b;
    for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double fm = piece_intensity(model, seq, i, start, mid);
        if ((fa <= 0.0 && fm <= 0.0) || (fa > 0.0 && fm > 0.0)) {
            lo = mid;
            fa = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double compensator_impl(const HawkesModel& model, const EventSequence& seq,
                        std::size_t i, double t, double rel_tol, bool clamp) {
    if (t <= 0.0) return 0.0;
    // Per-piece absolute tolerance from a crude magnitude bound.
    const double scale = std::max(1.0, model.mu[i] * t);
    const double tol = rel_tol * scale;

    double total = 0.0;
    double start = 0.0;
    std::size_t k = 0;
    while (start < t) {
        const bool at_event = k < seq.size() && seq.times[k] <= t;
        const double end = at_event ? seq.times[k] : t;
        if (end > start) {
            const std::function<double(double)> f = [&](double u) {
                const double v = piece_intensity(model, seq, i, start, u);
                return clamp ? std::max(0.0, v) : v;
            };
            if (clamp) {
                // lambda* is monotone between events: at most one sign change.
                const double lo = piece_intensity(model, seq, i, start, start);
                const double hi = piece_intensity(model, seq, i, start, end);
                if (lo < 0.0 && hi > 0.0) {
                    const double root = bisect_piece_root(model, seq, i, start, start, end, 1e-14);
                    total += integrate(f, root, end, tol);
                } else if (lo > 0.0 && hi < 0.0) {
                    const double root = bisect_piece_root(model, seq, i, start, start, end, 1e-14);
                    total += integrate(f, start, root, tol);
                } else if (lo >= 0.0 || hi >= 0.0) {
                    total += integrate(f, start, end, tol);
                }
                // both endpoints negative: clamped integrand is identically 0
            } else {
                total += integrate([&](double u) { return piece_intensity(model, seq, i, start, u); },
                                   start, end, tol);
            }
        }
        if (!at_event) break;
        start = end;
        ++k;
    }
    return total;
}

} // namespace

double underlying_intensity_direct(const HawkesModel& model, const EventSequence& seq,
                                   std::size_t i, double t) {
    return signed_intensity_at(model, seq, i, t, true);
}

double left_limit_direct(const HawkesModel& model, const EventSequence& seq,
                         std::size_t i, double t) {
    return signed_intensity_at(model, seq, i, t, false);
}

double bisect_restart(const HawkesModel& model, const EventSequence& seq,
                      std::size_t i, double a, double b, double tol) {
    return bisect_piece_root(model, seq, i, a, a, b, tol);
}

double compensator_quadrature(const HawkesModel& model, const EventSequence& seq,
                              std::size_t i, double t, double rel_tol) {
    return compensator_impl(model, seq, i, t, rel_tol, true);
}

double signed_compensator_quadrature(const HawkesModel& model, const EventSequence& seq,
                                     std::size_t i, double t, double rel_tol) {
    return compensator_impl(model, seq, i, t, rel_tol, false);
}

namespace {

double naive_impl(const HawkesModel& model, const EventSequence& seq,
                  double quad_rel_tol, bool clamp) {
    const std::size_t d = model.dim();
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double event_terms = 0.0;
        std::size_t violations = 0;
        for (std::size_t k = 0; k < seq.size(); ++k) {
            if (seq.marks[k] != static_cast<int>(i)) continue;
            const double left = left_limit_direct(model, seq, i, seq.times[k]);
            if (left > 0.0) {
                event_terms += std::log(left);
            } else {
                ++violations;
            }
        }
        if (violations > 0) {
            total += infeasible_value(violations);
            continue;
        }
        const double comp =
            clamp ? compensator_quadrature(model, seq, i, seq.horizon, quad_rel_tol)
                  : signed_compensator_quadrature(model, seq, i, seq.horizon, quad_rel_tol);
        total += event_terms - comp;
    }
    return total;
}

} // namespace

double log_likelihood_naive(const HawkesModel& model, const EventSequence& seq,
                            double quad_rel_tol) {
    return naive_impl(model, seq, quad_rel_tol, true);
}

double approx_log_likelihood_naive(const HawkesModel& model, const EventSequence& seq,
                                   double quad_rel_tol) {
    return naive_impl(model, seq, quad_rel_tol, false);
}

} // namespace hawkes::reference
