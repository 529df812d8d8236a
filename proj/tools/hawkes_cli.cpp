#include "hawkes/core.hpp"
#include "hawkes/fit.hpp"
#include "hawkes/gof.hpp"
#include "hawkes/io.hpp"
#include "hawkes/select.hpp"
#include "hawkes/sim.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

std::vector<hawkes::EventSequence> load_events(const std::vector<std::string>& paths) {
    std::vector<hawkes::EventSequence> seqs;
    seqs.reserve(paths.size());
    for (const auto& p : paths) {
        seqs.push_back(hawkes::read_events(p));
    }
    return seqs;
}

std::size_t max_mark_dimension(const std::vector<hawkes::EventSequence>& seqs) {
    int max_mark = -1;
    for (const auto& seq : seqs) {
        for (int m : seq.marks) max_mark = std::max(max_mark, m);
    }
    return static_cast<std::size_t>(max_mark + 1);
}

json fit_result_meta(const hawkes::FitResult& result, const std::string& objective) {
    json meta;
    meta["loglik"] = result.loglik;
    meta["converged"] = result.converged;
    meta["n_evals"] = result.n_evals;
    meta["per_dimension_loglik"] = result.per_dimension_loglik;
    meta["objective"] = objective;
    return meta;
}

void write_model_atomic(const std::string& path, const hawkes::HawkesModel& model,
                        const std::string& meta) {
    const std::string tmp = path + ".tmp";
    hawkes::write_model(tmp, model, meta);
    fs::rename(tmp, path);
}

void write_events_atomic(const std::string& path, const hawkes::EventSequence& seq) {
    const std::string tmp = path + ".tmp";
    hawkes::write_events(tmp, seq);
    fs::rename(tmp, path);
}

json gof_to_json(const hawkes::GofReport& report) {
    json j;
    j["p"] = report.p;
    j["p_tot"] = report.p_tot;
    j["ks_stats"] = report.ks_stats;
    j["n_intervals"] = report.n_intervals;
    j["q"] = report.q;
    j["n_sequences"] = report.n_sequences;
    std::vector<bool> rej(report.bh_rejected.begin(), report.bh_rejected.end());
    j["bh_rejected"] = rej;
    j["warnings"] = report.warnings;
    return j;
}

void write_ordered_p_csv(const std::string& path, const hawkes::GofReport& report,
                         std::size_t d) {
    struct Row {
        std::string name;
        double p;
        bool rejected;
    };
    std::vector<Row> rows;
    for (std::size_t h = 0; h < d; ++h) {
        if (!std::isnan(report.p[h])) {
            rows.push_back({"H_" + std::to_string(h + 1), report.p[h],
                            report.bh_rejected[h] != 0});
        }
    }
    if (!std::isnan(report.p_tot)) {
        rows.push_back({"H_tot", report.p_tot, report.bh_rejected[d] != 0});
    }
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.p < b.p; });
    std::vector<std::vector<std::string>> table;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const double threshold = report.q * static_cast<double>(k + 1) / static_cast<double>(d + 1);
        table.push_back({rows[k].name, hawkes::format_double(rows[k].p),
                         hawkes::format_double(threshold), rows[k].rejected ? "1" : "0"});
    }
    hawkes::write_table_csv(path, {"hypothesis", "p", "threshold", "rejected"}, table);
}

double group_rse(const std::vector<double>& est, const std::vector<double>& truth) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < truth.size(); ++k) {
        num += (est[k] - truth[k]) * (est[k] - truth[k]);
        den += truth[k] * truth[k];
    }
    return den > 0.0 ? num / den : num;
}

std::vector<double> flatten_alpha(const hawkes::HawkesModel& m) {
    return m.alpha.data();
}

int cmd_bench(const std::string& scenario_name, int replications, std::size_t events,
              std::uint64_t seed, const std::string& out_dir, int restarts) {
    const hawkes::HawkesModel truth = hawkes::scenario(scenario_name);
    const std::size_t d = truth.dim();
    fs::create_directories(out_dir);

    hawkes::FitConfig cfg;
    cfg.restarts = restarts;

    const int R = replications;
    std::vector<hawkes::EventSequence> trains(R), tests(R);
    std::vector<hawkes::FitResult> mle(R), approx(R);
    std::vector<hawkes::SupportSelection> mle_eps(R);
    std::vector<double> chosen_eps(R, 0.0);

    std::vector<double> grid;
    for (double e = 0.05; e < 0.96; e += 0.05) grid.push_back(e);

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < R; ++r) {
        hawkes::SimConfig sim;
        sim.model = truth;
        sim.target_events = events;
        sim.seed = seed + static_cast<std::uint64_t>(r);
        trains[r] = hawkes::simulate(sim);
        sim.seed = seed + static_cast<std::uint64_t>(R + r);
        tests[r] = hawkes::simulate(sim);

        hawkes::FitConfig local = cfg;
        local.seed = seed + static_cast<std::uint64_t>(r);
        mle[r] = hawkes::fit({trains[r]}, d, local);
        local.objective = hawkes::Objective::approx;
        approx[r] = hawkes::fit({trains[r]}, d, local);

        hawkes::FitConfig refit_cfg = cfg;
        refit_cfg.seed = seed + static_cast<std::uint64_t>(r);
        refit_cfg.restarts = std::max(2, restarts / 2);
        const hawkes::EpsilonChoice choice = hawkes::choose_epsilon(
            {mle[r]}, {{trains[r]}}, {tests[r]}, d, grid, refit_cfg);
        chosen_eps[r] = choice.epsilon;
        mle_eps[r] = hawkes::threshold_select(mle[r], {trains[r]}, d, choice.epsilon, refit_cfg);

        const std::string rep_dir = out_dir + "/rep_" + std::to_string(r);
        fs::create_directories(rep_dir);
        write_events_atomic(rep_dir + "/train.csv", trains[r]);
        write_events_atomic(rep_dir + "/test.csv", tests[r]);
        write_model_atomic(rep_dir + "/mle.json", mle[r].model,
                           fit_result_meta(mle[r], "exact").dump());
        write_model_atomic(rep_dir + "/approx.json", approx[r].model,
                           fit_result_meta(approx[r], "approx").dump());
        json eps_meta = fit_result_meta(mle_eps[r].refit, "exact");
        eps_meta["epsilon"] = choice.epsilon;
        write_model_atomic(rep_dir + "/mle_eps.json", mle_eps[r].refit.model, eps_meta.dump());
    }

    // Confidence-interval supports over the per-replication MLE fits, then
    // per-replication refits with the common support.
    const hawkes::SupportSelection cfe =
        hawkes::confidence_select(mle, trains, d, 0.05,
                                  hawkes::IntervalKind::empirical, cfg);
    const hawkes::SupportSelection cfst =
        hawkes::confidence_select(mle, trains, d, 0.05,
                                  hawkes::IntervalKind::student, cfg);

    std::vector<hawkes::FitResult> cfe_fits(R), cfst_fits(R);
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < R; ++r) {
        hawkes::FitConfig local = cfg;
        local.seed = seed + static_cast<std::uint64_t>(r);
        cfe_fits[r] = hawkes::fit_with_support({trains[r]}, d, local, cfe.support,
                                               &mle[r].model);
        cfst_fits[r] = hawkes::fit_with_support({trains[r]}, d, local, cfst.support,
                                                &mle[r].model);
        const std::string rep_dir = out_dir + "/rep_" + std::to_string(r);
        write_model_atomic(rep_dir + "/cfe.json", cfe_fits[r].model,
                           fit_result_meta(cfe_fits[r], "exact").dump());
        write_model_atomic(rep_dir + "/cfst.json", cfst_fits[r].model,
                           fit_result_meta(cfst_fits[r], "exact").dump());
    }

    struct Method {
        std::string name;
        const std::vector<hawkes::FitResult>* fits;
    };
    std::vector<hawkes::FitResult> mle_eps_fits(R);
    for (int r = 0; r < R; ++r) mle_eps_fits[r] = mle_eps[r].refit;
    const std::vector<Method> methods = {
        {"MLE", &mle},         {"MLE-eps", &mle_eps_fits}, {"CfE", &cfe_fits},
        {"CfSt", &cfst_fits},  {"Approx", &approx},
    };

    // Relative squared error per parameter group, Fig. 3 layout.
    std::vector<std::vector<std::string>> rse_rows;
    for (const auto& method : methods) {
        std::vector<double> rse_mu, rse_alpha, rse_beta;
        for (int r = 0; r < R; ++r) {
            const auto& m = (*method.fits)[r].model;
            rse_mu.push_back(group_rse(m.mu, truth.mu));
            rse_alpha.push_back(group_rse(flatten_alpha(m), flatten_alpha(truth)));
            rse_beta.push_back(group_rse(m.beta, truth.beta));
        }
        const auto summarize = [&](const std::string& group, std::vector<double> v) {
            const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
            std::sort(v.begin(), v.end());
            const double median = v[v.size() / 2];
            rse_rows.push_back({method.name, group, hawkes::format_double(mean),
                                hawkes::format_double(median)});
        };
        summarize("mu", rse_mu);
        summarize("alpha", rse_alpha);
        summarize("beta", rse_beta);
    }
    hawkes::write_table_csv(out_dir + "/rse.csv", {"method", "group", "mean_rse", "median_rse"},
                            rse_rows);

    // Averaged p-values, Table 2 layout; each replication's model is tested
    // on its paired test realization.
    std::vector<std::vector<std::string>> p_rows;
    const auto p_row = [&](const std::string& name,
                           const std::vector<hawkes::FitResult>* fits) {
        std::vector<double> sums(d + 1, 0.0);
        std::vector<std::size_t> counts(d + 1, 0);
        for (int r = 0; r < R; ++r) {
            const hawkes::HawkesModel& m = fits ? (*fits)[r].model : truth;
            const hawkes::GofReport rep = hawkes::gof_report(m, {tests[r]}, 0.05);
            for (std::size_t h = 0; h < d; ++h) {
                if (!std::isnan(rep.p[h])) {
                    sums[h] += rep.p[h];
                    ++counts[h];
                }
            }
            if (!std::isnan(rep.p_tot)) {
                sums[d] += rep.p_tot;
                ++counts[d];
            }
        }
        std::vector<std::string> row{name};
        for (std::size_t h = 0; h <= d; ++h) {
            row.push_back(counts[h] ? hawkes::format_double(sums[h] / counts[h]) : "nan");
        }
        p_rows.push_back(row);
    };
    p_row("True", nullptr);
    for (const auto& method : methods) p_row(method.name, method.fits);
    std::vector<std::string> p_header{"method"};
    for (std::size_t h = 1; h <= d; ++h) p_header.push_back("p_" + std::to_string(h));
    p_header.push_back("p_tot");
    hawkes::write_table_csv(out_dir + "/pvalues.csv", p_header, p_rows);

    hawkes::write_support_csv(out_dir + "/support_cfe.csv", cfe.refit.model.alpha);
    hawkes::write_support_csv(out_dir + "/support_cfst.csv", cfst.refit.model.alpha);
    // Majority-vote MLE-eps support across replications, signed by the mean.
    hawkes::Matrix eps_signs(d, d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            int kept = 0;
            double mean = 0.0;
            for (int r = 0; r < R; ++r) {
                if (mle_eps[r].support[i * d + j]) ++kept;
                mean += mle_eps[r].refit.model.alpha(i, j);
            }
            eps_signs(i, j) = 2 * kept > R ? mean / R : 0.0;
        }
    }
    hawkes::write_support_csv(out_dir + "/support_mle_eps.csv", eps_signs);

    std::vector<std::vector<std::string>> eps_rows;
    for (int r = 0; r < R; ++r) {
        eps_rows.push_back({std::to_string(r), hawkes::format_double(chosen_eps[r])});
    }
    hawkes::write_table_csv(out_dir + "/epsilon.csv", {"replication", "epsilon"}, eps_rows);

    std::cout << "bench: wrote " << out_dir << " (" << R << " replications of " << events
              << " events, scenario " << scenario_name << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* env = std::getenv("HAWKES_THREADS")) {
#ifdef _OPENMP
        const int n = std::atoi(env);
        if (n > 0) omp_set_num_threads(n);
#endif
    }

    CLI::App app{"Multivariate exponential Hawkes processes with inhibition: "
                 "simulation, exact MLE, support recovery, goodness-of-fit"};
    app.require_subcommand(1);

    // --- simulate ---
    auto* sim_cmd = app.add_subcommand("simulate", "Simulate a sequence by Ogata thinning");
    std::string sim_model;
    std::size_t sim_events = 0;
    double sim_horizon = 0.0;
    std::uint64_t sim_seed = 0;
    std::string sim_out;
    sim_cmd->add_option("model", sim_model,
                        "Scenario name (S1, S2, S3) or model JSON path")->required();
    auto* opt_events = sim_cmd->add_option("--events", sim_events,
                                           "Stop after exactly N events")
                           ->check(CLI::PositiveNumber);
    auto* opt_horizon = sim_cmd->add_option("--horizon", sim_horizon,
                                            "Stop at horizon T")
                            ->check(CLI::PositiveNumber)
                            ->excludes(opt_events);
    opt_events->excludes(opt_horizon);
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_option("--out", sim_out, "Output events CSV")->required();

    // --- fit ---
    auto* fit_cmd = app.add_subcommand("fit", "Maximum-likelihood fit");
    std::vector<std::string> fit_files;
    std::string fit_objective = "exact";
    int fit_restarts = 5;
    std::uint64_t fit_seed = 0;
    std::string fit_out;
    fit_cmd->add_option("events", fit_files, "Events CSV files")->required();
    fit_cmd->add_option("--objective", fit_objective, "exact | approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    fit_cmd->add_option("--restarts", fit_restarts, "Random restarts")
        ->check(CLI::PositiveNumber);
    fit_cmd->add_option("--seed", fit_seed, "RNG seed");
    fit_cmd->add_option("--out", fit_out, "Output model JSON")->required();

    // --- select ---
    auto* sel_cmd = app.add_subcommand("select", "Interaction-support recovery");
    std::string sel_model;
    std::vector<std::string> sel_files, sel_test_files;
    std::string sel_method;
    std::string sel_level = "0.05";
    bool sel_resample = false;
    std::size_t sel_resample_k = 3, sel_resample_reps = 20;
    bool sel_scale_by_beta = false;
    int sel_restarts = 5;
    std::uint64_t sel_seed = 0;
    std::string sel_out, sel_support_out;
    sel_cmd->add_option("model", sel_model, "Unconstrained fit (model JSON)")->required();
    sel_cmd->add_option("events", sel_files, "Training events CSV files")->required();
    sel_cmd->add_option("--method", sel_method, "eps | cfe | cfst")
        ->required()
        ->check(CLI::IsMember({"eps", "cfe", "cfst"}));
    sel_cmd->add_option("--level", sel_level,
                        "Threshold epsilon / confidence gamma, or 'auto' (eps only)");
    sel_cmd->add_option("--test", sel_test_files, "Held-out events files (required for auto)");
    sel_cmd->add_flag("--resample", sel_resample,
                      "Resample-by-concatenation before cfe/cfst");
    sel_cmd->add_option("--resample-k", sel_resample_k, "Blocks per resampled sequence");
    sel_cmd->add_option("--resample-reps", sel_resample_reps, "Number of resampled sequences");
    sel_cmd->add_flag("--scale-by-beta", sel_scale_by_beta,
                      "Threshold |alpha/beta| instead of |alpha| (eps only)");
    sel_cmd->add_option("--restarts", sel_restarts, "Random restarts for refits")
        ->check(CLI::PositiveNumber);
    sel_cmd->add_option("--seed", sel_seed, "RNG seed");
    sel_cmd->add_option("--out", sel_out, "Output model JSON")->required();
    sel_cmd->add_option("--support-out", sel_support_out, "Support sign-matrix CSV");

    // --- gof ---
    auto* gof_cmd = app.add_subcommand("gof", "Time-rescaling goodness-of-fit tests");
    std::string gof_model;
    std::vector<std::string> gof_files;
    double gof_level = 0.05;
    std::string gof_out, gof_pcsv;
    gof_cmd->add_option("model", gof_model, "Model JSON")->required();
    gof_cmd->add_option("events", gof_files, "Held-out events CSV files")->required();
    gof_cmd->add_option("--level", gof_level, "FDR level q")->check(CLI::Range(0.0, 1.0));
    gof_cmd->add_option("--out", gof_out, "Report JSON path");
    gof_cmd->add_option("--pcsv", gof_pcsv, "Ordered p-value CSV path");

    // --- bench ---
    auto* bench_cmd = app.add_subcommand("bench", "Benchmark protocol on a scenario");
    std::string bench_scenario;
    int bench_reps = 25;
    std::size_t bench_events = 5000;
    std::uint64_t bench_seed = 1;
    int bench_restarts = 5;
    std::string bench_out;
    bench_cmd->add_option("--scenario", bench_scenario, "S1 | S2 | S3 or model JSON path")
        ->required();
    bench_cmd->add_option("--replications", bench_reps, "Replications")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--events", bench_events, "Events per realization")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--seed", bench_seed, "Base seed");
    bench_cmd->add_option("--restarts", bench_restarts, "Random restarts per fit")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", bench_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (sim_cmd->parsed()) {
            if (!*opt_events && !*opt_horizon) {
                std::cerr << "simulate: one of --events / --horizon is required\n";
                return kExitUsage;
            }
            hawkes::SimConfig config;
            config.model = hawkes::scenario(sim_model);
            if (*opt_events) config.target_events = sim_events;
            if (*opt_horizon) config.horizon = sim_horizon;
            config.seed = sim_seed;
            const hawkes::SpectralReport spectral = hawkes::spectral_radius(config.model);
            if (!spectral.stable) {
                std::cerr << "warning: spectral radius rho(S+) = " << spectral.radius
                          << " >= 1; the model may be nonstationary\n";
            }
            const hawkes::EventSequence seq = hawkes::simulate(config);
            hawkes::write_events(sim_out, seq);
            std::cout << "simulate: " << seq.size() << " events on [0, "
                      << hawkes::format_double(seq.horizon) << "] -> " << sim_out << "\n";
            return 0;
        }

        if (fit_cmd->parsed()) {
            const auto seqs = load_events(fit_files);
            for (std::size_t f = 0; f < seqs.size(); ++f) {
                if (seqs[f].empty()) {
                    throw hawkes::data_error(fit_files[f] + ": no events");
                }
            }
            const std::size_t d = max_mark_dimension(seqs);
            hawkes::FitConfig config;
            config.objective = fit_objective == "approx" ? hawkes::Objective::approx
                                                         : hawkes::Objective::exact;
            config.restarts = fit_restarts;
            config.seed = fit_seed;
            const hawkes::FitResult result = hawkes::fit(seqs, d, config);
            hawkes::write_model(fit_out, result.model,
                                fit_result_meta(result, fit_objective).dump());
            std::cout << "fit: d=" << d << " loglik=" << hawkes::format_double(result.loglik)
                      << " converged=" << (result.converged ? "yes" : "no") << " -> "
                      << fit_out << "\n";
            return 0;
        }

        if (sel_cmd->parsed()) {
            const hawkes::ModelDocument doc = hawkes::read_model(sel_model);
            const std::size_t d = doc.model.dim();
            auto seqs = load_events(sel_files);
            for (const auto& seq : seqs) seq.validate(d);
            hawkes::FitConfig config;
            config.restarts = sel_restarts;
            config.seed = sel_seed;

            hawkes::FitResult base;
            base.model = doc.model;
            {
                const hawkes::LogLik ll = hawkes::pooled_log_likelihood(doc.model, seqs);
                base.loglik = ll.value;
                base.per_dimension_loglik = ll.per_dimension;
                base.converged = true;
            }

            hawkes::SupportSelection sel;
            if (sel_method == "eps") {
                double eps;
                if (sel_level == "auto") {
                    if (sel_test_files.empty()) {
                        std::cerr << "select: --level auto requires --test files\n";
                        return kExitUsage;
                    }
                    const auto test_seqs = load_events(sel_test_files);
                    for (const auto& seq : test_seqs) seq.validate(d);
                    std::vector<double> grid;
                    for (double e = 0.05; e < 0.96; e += 0.05) grid.push_back(e);
                    const auto choice =
                        hawkes::choose_epsilon({base}, {seqs}, test_seqs, d, grid, config);
                    eps = choice.epsilon;
                    std::cout << "select: auto epsilon = " << eps
                              << " (mean p = " << choice.mean_p << ")\n";
                } else {
                    eps = std::stod(sel_level);
                }
                sel = hawkes::threshold_select(base, seqs, d, eps, config, sel_scale_by_beta);
            } else {
                if (seqs.size() < 2 && !sel_resample) {
                    std::cerr << "select: " << sel_method
                              << " needs several realizations; pass more events files or "
                                 "--resample\n";
                    return kExitUsage;
                }
                if (sel_resample) {
                    seqs = hawkes::resample_concatenate(seqs, sel_resample_k,
                                                        sel_resample_reps, sel_seed);
                }
                std::vector<hawkes::FitResult> fits(seqs.size());
#pragma omp parallel for schedule(dynamic)
                for (std::size_t s = 0; s < seqs.size(); ++s) {
                    hawkes::FitConfig local = config;
                    local.seed = sel_seed + s;
                    fits[s] = hawkes::fit({seqs[s]}, d, local);
                }
                const double gamma = std::stod(sel_level);
                sel = hawkes::confidence_select(fits, seqs, d, gamma,
                                                sel_method == "cfe"
                                                    ? hawkes::IntervalKind::empirical
                                                    : hawkes::IntervalKind::student,
                                                config);
            }
            json meta = fit_result_meta(sel.refit, "exact");
            meta["method"] = sel.method;
            meta["level"] = sel.level;
            hawkes::write_model(sel_out, sel.refit.model, meta.dump());
            if (!sel_support_out.empty()) {
                hawkes::write_support_csv(sel_support_out, sel.refit.model.alpha);
            }
            std::size_t kept = 0;
            for (auto s : sel.support) kept += s;
            std::cout << "select: method=" << sel.method << " level=" << sel.level
                      << " kept " << kept << "/" << d * d << " interactions -> " << sel_out
                      << "\n";
            return 0;
        }

        if (gof_cmd->parsed()) {
            const hawkes::ModelDocument doc = hawkes::read_model(gof_model);
            const auto seqs = load_events(gof_files);
            const hawkes::GofReport report = hawkes::gof_report(doc.model, seqs, gof_level);
            for (const auto& w : report.warnings) {
                std::cerr << "warning: " << w << "\n";
            }
            const json j = gof_to_json(report);
            if (!gof_out.empty()) {
                std::ofstream out(gof_out);
                out << j.dump(2) << "\n";
            }
            if (!gof_pcsv.empty()) {
                write_ordered_p_csv(gof_pcsv, report, doc.model.dim());
            }
            std::cout << j.dump(2) << "\n";
            return 0;
        }

        if (bench_cmd->parsed()) {
            return cmd_bench(bench_scenario, bench_reps, bench_events, bench_seed,
                             bench_out, bench_restarts);
        }
    } catch (const hawkes::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
