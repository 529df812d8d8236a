#include "hawkes/core.hpp"
#include "hawkes/reference.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/sim.hpp"

#include "helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace hawkes;
using testutil::random_instance;

namespace {

double spectral_radius_2x2(double a, double b, double c, double d) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) return std::sqrt(det);
    const double r1 = 0.5 * (tr + std::sqrt(disc));
    const double r2 = 0.5 * (tr - std::sqrt(disc));
    return std::max(std::abs(r1), std::abs(r2));
}

} // namespace

TEST_CASE("underlying intensity: no events means baseline") {
    HawkesModel m;
    m.mu = {0.7, 1.3};
    m.alpha = Matrix::from_rows({{1.0, -2.0}, {0.5, 0.5}});
    m.beta = {1.0, 2.0};
    EventSequence seq;
    seq.horizon = 5.0;
    CHECK(underlying_intensity(m, seq, 0, 3.0) == doctest::Approx(0.7));
    CHECK(underlying_intensity(m, seq, 1, 0.0) == doctest::Approx(1.3));
    CHECK_THROWS_AS(underlying_intensity(m, seq, 2, 1.0), std::out_of_range);
}

TEST_CASE("underlying intensity: jump included at the event time") {
    HawkesModel m;
    m.mu = {1.0};
    m.alpha = Matrix::from_rows({{-2.0}});
    m.beta = {1.0};
    EventSequence seq;
    seq.times = {1.0};
    seq.marks = {0};
    seq.horizon = 2.0;
    CHECK(underlying_intensity(m, seq, 0, 1.0) == doctest::Approx(-1.0));
    // Just before the event only mu remains.
    CHECK(underlying_intensity(m, seq, 0, 0.999999) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("underlying intensity matches the direct-sum reference") {
    SplitMix64 rng(11);
    for (int probe = 0; probe < 200; ++probe) {
        const auto inst = random_instance(rng, 3, 40);
        const std::size_t d = inst.model.dim();
        const double t = rng.uniform(0.0, inst.seq.horizon);
        for (std::size_t i = 0; i < d; ++i) {
            const double a = underlying_intensity(inst.model, inst.seq, i, t);
            const double b = reference::underlying_intensity_direct(inst.model, inst.seq, i, t);
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
}

TEST_CASE("restart time: nonnegative intensity restarts immediately") {
    HawkesModel m;
    m.mu = {1.0};
    m.alpha = Matrix::from_rows({{0.5}});
    m.beta = {1.0};
    CHECK(restart_time(m, 0.5, 0, 2.0, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("restart time: interior root matches bisection") {
    HawkesModel m;
    m.mu = {1.0};
    m.alpha = Matrix::from_rows({{-(std::exp(1.0) - 1.0) - 1.0}});
    m.beta = {1.0};
    // lambda*(T_k) = mu + alpha = -(e - 1) right after an event at 0.
    EventSequence seq;
    seq.times = {1e-300}; // effectively zero
    seq.marks = {0};
    seq.horizon = 10.0;
    const double lam0 = 1.0 - std::exp(1.0); // mu + alpha
    CHECK(lam0 == doctest::Approx(-(std::exp(1.0) - 1.0)));
    const double t_star = restart_time(m, lam0, 0, 0.0, 10.0);
    CHECK(t_star == doctest::Approx(1.0).epsilon(1e-12));
    const double bisected = reference::bisect_restart(m, seq, 0, 1e-300, 10.0);
    CHECK(t_star == doctest::Approx(bisected).epsilon(1e-10));
}

TEST_CASE("restart time: clamped at the next event") {
    HawkesModel m;
    m.mu = {1.0};
    m.alpha = Matrix::from_rows({{0.0}});
    m.beta = {1.0};
    CHECK(restart_time(m, -1e6, 0, 0.0, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("restart-root property on random instances") {
    SplitMix64 rng(23);
    int interior = 0;
    for (int probe = 0; probe < 500; ++probe) {
        const auto inst = random_instance(rng, 4, 60);
        const auto& seq = inst.seq;
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            for (std::size_t i = 0; i < inst.model.dim(); ++i) {
                const double lam =
                    underlying_intensity(inst.model, seq, i, seq.times[k]);
                const double t_star =
                    restart_time(inst.model, lam, i, seq.times[k], seq.times[k + 1]);
                REQUIRE(t_star >= seq.times[k]);
                REQUIRE(t_star <= seq.times[k + 1]);
                if (t_star > seq.times[k] && t_star < seq.times[k + 1]) {
                    ++interior;
                    CHECK(std::abs(underlying_intensity(inst.model, seq, i, t_star)) < 1e-10);
                }
            }
        }
    }
    CHECK(interior > 50); // the draw must actually exercise inhibition
}

TEST_CASE("compensator: linear before the first event, Poisson afterwards") {
    HawkesModel m;
    m.mu = {2.0};
    m.alpha = Matrix::from_rows({{0.0}});
    m.beta = {1.0};
    EventSequence seq;
    seq.times = {1.0, 2.5, 6.0};
    seq.marks = {0, 0, 0};
    seq.horizon = 10.0;
    CHECK(compensator(m, seq, 0, 0.5) == doctest::Approx(1.0));
    CHECK(compensator(m, seq, 0, 7.3) == doctest::Approx(14.6));
    CHECK(compensator(m, seq, 0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("compensator matches adaptive quadrature of the clamped intensity") {
    SplitMix64 rng(37);
    for (int probe = 0; probe < 25; ++probe) {
        const auto inst = random_instance(rng, 4, 120);
        for (std::size_t i = 0; i < inst.model.dim(); ++i) {
            const double closed = compensator(inst.model, inst.seq, i, inst.seq.horizon);
            const double quad = reference::compensator_quadrature(inst.model, inst.seq, i,
                                                                  inst.seq.horizon, 1e-11);
            CHECK(std::abs(closed - quad) / (1.0 + std::abs(closed)) < 1e-8);
        }
    }
}

TEST_CASE("compensator is nondecreasing in t") {
    SplitMix64 rng(41);
    const auto inst = random_instance(rng, 3, 80);
    for (std::size_t i = 0; i < inst.model.dim(); ++i) {
        double prev = compensator(inst.model, inst.seq, i, 0.0);
        CHECK(prev == 0.0);
        for (double t = 0.0; t <= inst.seq.horizon; t += inst.seq.horizon / 113.0) {
            const double cur = compensator(inst.model, inst.seq, i, t);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }
}

TEST_CASE("positive-part identity between conditional and underlying intensity") {
    SplitMix64 rng(43);
    for (int probe = 0; probe < 2000; ++probe) {
        const auto inst = random_instance(rng, 3, 30);
        const double t = rng.uniform(0.0, inst.seq.horizon);
        const std::size_t i = rng.next_below(inst.model.dim());
        const double clamped = std::max(0.0, underlying_intensity(inst.model, inst.seq, i, t));
        const double conditional = conditional_intensity(inst.model, inst.seq, i, t);
        CHECK(conditional == doctest::Approx(clamped).epsilon(1e-12));
    }
}

TEST_CASE("log-likelihood: Poisson closed form") {
    HawkesModel m;
    m.mu = {2.0};
    m.alpha = Matrix::from_rows({{0.0}});
    m.beta = {1.0};
    EventSequence seq;
    seq.times = {1.0};
    seq.marks = {0};
    seq.horizon = 3.0;
    const LogLik ll = log_likelihood(m, seq);
    CHECK(ll.value == doctest::Approx(std::log(2.0) - 6.0).epsilon(1e-14));
}

TEST_CASE("log-likelihood: a dimension with no events contributes -Lambda") {
    HawkesModel m;
    m.mu = {1.0, 0.5};
    m.alpha = Matrix::from_rows({{0.3, 0.2}, {-0.4, 0.6}});
    m.beta = {2.0, 1.0};
    EventSequence seq;
    seq.times = {0.7, 1.9};
    seq.marks = {0, 0}; // no events of dimension 2
    seq.horizon = 4.0;
    const LogLik ll = log_likelihood(m, seq);
    CHECK(ll.per_dimension[1] ==
          doctest::Approx(-compensator(m, seq, 1, seq.horizon)).epsilon(1e-13));
}

TEST_CASE("log-likelihood decomposes as the ordered sum over dimensions") {
    SplitMix64 rng(53);
    for (int probe = 0; probe < 20; ++probe) {
        const auto inst = random_instance(rng, 4, 80);
        const LogLik ll = log_likelihood(inst.model, inst.seq);
        double sum = 0.0;
        for (double v : ll.per_dimension) sum += v;
        CHECK(ll.value == sum); // exact: same summation order
    }
}

TEST_CASE("streaming log-likelihood equals the naive O(N^2) evaluation") {
    SplitMix64 rng(59);
    for (int probe = 0; probe < 15; ++probe) {
        const auto inst = random_instance(rng, 4, 100, 1e-6);
        const double streaming = log_likelihood(inst.model, inst.seq).value;
        const double naive = reference::log_likelihood_naive(inst.model, inst.seq, 1e-12);
        CHECK(streaming == doctest::Approx(naive).epsilon(1e-11));
        CHECK(std::abs(streaming - naive) < 1e-9);
    }
}

TEST_CASE("infeasible event terms hit the sentinel on both paths") {
    HawkesModel m;
    m.mu = {1.0};
    m.alpha = Matrix::from_rows({{-5.0}});
    m.beta = {1.0};
    EventSequence seq;
    seq.times = {1.0, 1.001};
    seq.marks = {0, 0};
    seq.horizon = 2.0;
    const LogLik ll = log_likelihood(m, seq);
    CHECK(ll.infeasible_terms == 1);
    CHECK(ll.value == infeasible_value(1));
    CHECK(reference::log_likelihood_naive(m, seq) == infeasible_value(1));
}

TEST_CASE("approx likelihood: equal to exact when intensities stay positive") {
    HawkesModel m;
    m.mu = {0.5, 1.0};
    m.alpha = Matrix::from_rows({{0.4, 0.3}, {0.2, 0.6}});
    m.beta = {2.0, 3.0};
    SplitMix64 rng(61);
    const EventSequence seq = testutil::random_sequence(rng, 2, 60, 40.0);
    CHECK(approx_log_likelihood(m, seq).value ==
          doctest::Approx(log_likelihood(m, seq).value).epsilon(1e-12));
}

TEST_CASE("approx likelihood integrates the signed intensity") {
    HawkesModel m;
    m.mu = {1.0};
    m.alpha = Matrix::from_rows({{-3.0}});
    m.beta = {1.0};
    EventSequence seq;
    seq.times = {1.0};
    seq.marks = {0};
    seq.horizon = 2.0;
    // Single event: the event term is log(mu) = 0, so the value is minus the
    // signed integral of lambda*.
    const double approx = approx_log_likelihood(m, seq).value;
    const double signed_quad =
        reference::signed_compensator_quadrature(m, seq, 0, seq.horizon, 1e-12);
    CHECK(approx == doctest::Approx(-signed_quad).epsilon(1e-10));
    const double exact = log_likelihood(m, seq).value;
    CHECK(exact == doctest::Approx(-1.0).epsilon(1e-12)); // clamped compensator = mu * T_1
    CHECK(approx > exact);
    CHECK(approx == doctest::Approx(reference::approx_log_likelihood_naive(m, seq, 1e-12))
                        .epsilon(1e-10));
}

TEST_CASE("approx likelihood on an empty sequence") {
    HawkesModel m;
    m.mu = {0.7, 1.1};
    m.alpha = Matrix::from_rows({{0.5, -0.5}, {0.1, 0.2}});
    m.beta = {1.0, 2.0};
    EventSequence seq;
    seq.horizon = 3.0;
    CHECK(approx_log_likelihood(m, seq).value ==
          doctest::Approx(-(0.7 + 1.1) * 3.0).epsilon(1e-14));
    CHECK(log_likelihood(m, seq).value == doctest::Approx(-(0.7 + 1.1) * 3.0).epsilon(1e-14));
}

TEST_CASE("LikelihoodAccumulator: incremental state matches the batch path") {
    SplitMix64 rng(67);
    const auto inst = random_instance(rng, 3, 60);
    LikelihoodAccumulator acc(inst.model);
    double prev_time = 0.0;
    std::vector<double> prev_comp(inst.model.dim(), 0.0);
    for (std::size_t k = 0; k < inst.seq.size(); ++k) {
        acc.add_event(inst.seq.times[k], inst.seq.marks[k]);
        const IntervalState& st = acc.state();
        for (std::size_t i = 0; i < inst.model.dim(); ++i) {
            CHECK(st.partial_compensator[i] >= prev_comp[i] - 1e-12);
            CHECK(st.restart[i] >= prev_time);
            CHECK(st.restart[i] <= inst.seq.times[k] + 1e-12);
            prev_comp[i] = st.partial_compensator[i];
        }
        prev_time = inst.seq.times[k];
    }
    acc.finish(inst.seq.horizon);
    const LogLik batch = log_likelihood(inst.model, inst.seq);
    CHECK(acc.total() == doctest::Approx(batch.value).epsilon(1e-12));
    for (std::size_t i = 0; i < inst.model.dim(); ++i) {
        CHECK(acc.state().partial_compensator[i] ==
              doctest::Approx(compensator(inst.model, inst.seq, i, inst.seq.horizon))
                  .epsilon(1e-12));
    }
}

TEST_CASE("spectral radius: zero matrix, scalar, and 2x2 oracle") {
    HawkesModel m;
    m.mu = {1.0, 1.0};
    m.alpha = Matrix::from_rows({{-1.0, 0.0}, {-0.3, -2.0}});
    m.beta = {1.0, 1.0};
    CHECK(spectral_radius(m).radius == doctest::Approx(0.0));
    CHECK(spectral_radius(m).stable);

    HawkesModel s;
    s.mu = {1.0};
    s.alpha = Matrix::from_rows({{0.5}});
    s.beta = {1.0};
    CHECK(spectral_radius(s).radius == doctest::Approx(0.5).epsilon(1e-9));

    const HawkesModel s1 = scenario("S1");
    const double expected = spectral_radius_2x2(0.0, 3.0 / 5.0, 1.2 / 8.0, 1.5 / 8.0);
    CHECK(spectral_radius(s1).radius == doctest::Approx(expected).epsilon(1e-8));
    CHECK(spectral_radius(s1).stable);

    HawkesModel unstable;
    unstable.mu = {1.0};
    unstable.alpha = Matrix::from_rows({{1.5}});
    unstable.beta = {1.0};
    CHECK_FALSE(spectral_radius(unstable).stable);
}

TEST_CASE("identifiability diagnostic: direct patterns") {
    EventSequence seq;
    seq.times = {1.0, 2.0};
    seq.marks = {1, 0}; // event of process 2 then event of process 1
    seq.horizon = 3.0;
    const auto ok = identifiability_diagnostic(seq, 2);
    CHECK(ok[0 * 2 + 1] == 1); // pair (1, 2) satisfied
    CHECK(ok[1 * 2 + 0] == 0);

    EventSequence same;
    same.times = {1.0, 2.0, 3.0};
    same.marks = {0, 0, 0};
    same.horizon = 4.0;
    const auto none = identifiability_diagnostic(same, 2);
    CHECK(none[0 * 2 + 1] == 0);
    CHECK(none[1 * 2 + 0] == 0);
}

TEST_CASE("identifiability diagnostic matches the exhaustive pair scan") {
    SplitMix64 rng(71);
    for (int probe = 0; probe < 50; ++probe) {
        const EventSequence seq = testutil::random_sequence(rng, 3, 30, 30.0);
        const auto fast = identifiability_diagnostic(seq, 3);
        // Oracle: scan all (tau, tau_plus) pairs.
        std::vector<std::uint8_t> slow(9, 0);
        for (std::size_t a = 0; a < 9; ++a) slow[a] = (a % 3 == a / 3) ? 1 : 0;
        for (std::size_t x = 0; x < seq.size(); ++x) {
            for (std::size_t y = x + 1; y < seq.size(); ++y) {
                const int j = seq.marks[x];
                const int i = seq.marks[y];
                if (i == j) continue;
                bool only_j = true;
                for (std::size_t z = x + 1; z < y; ++z) {
                    if (seq.marks[z] != j) {
                        only_j = false;
                        break;
                    }
                }
                if (only_j) slow[static_cast<std::size_t>(i) * 3 + j] = 1;
            }
        }
        CHECK(fast == slow);
    }
}

TEST_CASE("identifiability diagnostic with a model requires positive intensity") {
    HawkesModel m;
    m.mu = {1.0, 1.0};
    m.alpha = Matrix::from_rows({{0.0, 0.0}, {0.0, 0.0}});
    m.beta = {1.0, 1.0};
    EventSequence seq;
    seq.times = {1.0, 2.0};
    seq.marks = {1, 0};
    seq.horizon = 3.0;
    // Intensities are constant mu > 0: both routes agree.
    CHECK(identifiability_diagnostic(seq, m) == identifiability_diagnostic(seq, 2));

    // Strong inhibition of dimension 1 by dimension 2 kills the pair: the
    // left limit at the qualifying tau must be positive.
    HawkesModel strong = m;
    strong.alpha = Matrix::from_rows({{0.0, -50.0}, {0.0, 0.0}});
    strong.beta = {1e-3, 1.0};
    EventSequence seq2;
    seq2.times = {1.0, 2.0, 3.0};
    seq2.marks = {1, 1, 0};
    seq2.horizon = 4.0;
    const auto ok = identifiability_diagnostic(seq2, strong);
    CHECK(ok[0 * 2 + 1] == 0);
    CHECK(identifiability_diagnostic(seq2, 2)[0 * 2 + 1] == 1);
}

TEST_CASE("finite-difference gradient agrees with the analytic oracle") {
    SplitMix64 rng(73);
    int checked = 0;
    for (int probe = 0; probe < 12; ++probe) {
        const auto inst = random_instance(rng, 3, 60, 1e-3);
        const std::size_t d = inst.model.dim();
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<double> alpha_row(inst.model.alpha.row(i),
                                          inst.model.alpha.row(i) + d);
            const double mu = inst.model.mu[i];
            const double beta = inst.model.beta[i];
            const auto analytic = testutil::dim_grad_mu_alpha(mu, alpha_row, beta,
                                                              static_cast<int>(i), inst.seq);
            // Central differences, the optimizer's step rule.
            const auto eval = [&](double m_, const std::vector<double>& a_) {
                return dim_log_likelihood(m_, a_, beta, static_cast<int>(i), inst.seq,
                                          Objective::exact);
            };
            const double h_mu = 1e-6 * std::max(1.0, std::abs(mu));
            const double fd_mu =
                (eval(mu + h_mu, alpha_row) - eval(mu - h_mu, alpha_row)) / (2.0 * h_mu);
            CHECK(fd_mu == doctest::Approx(analytic[0]).epsilon(1e-5));
            for (std::size_t j = 0; j < d; ++j) {
                auto up = alpha_row, down = alpha_row;
                const double h = 1e-6 * std::max(1.0, std::abs(alpha_row[j]));
                up[j] += h;
                down[j] -= h;
                const double fd = (eval(mu, up) - eval(mu, down)) / (2.0 * h);
                CHECK(fd == doctest::Approx(analytic[1 + j]).epsilon(1e-5));
                ++checked;
            }
        }
    }
    CHECK(checked > 20);
}
