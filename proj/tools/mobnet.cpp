// Command-line front end: single traces, parameter sweeps, threshold searches
// and the closed-form predictions.

#include "mobnet/ensemble.hpp"
#include "mobnet/experiment.hpp"
#include "mobnet/kernels.hpp"
#include "mobnet/metrics.hpp"
#include "mobnet/theory.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string policy;
    std::optional<std::uint32_t> realizations;
    unsigned threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "key=value config file");
    cmd->add_option("--seed", f.seed, "master seed (overrides rng_seed)");
    cmd->add_option("--out", f.out, "output CSV (stdout when omitted)");
    cmd->add_option("--policy", f.policy, "greedy|random (overrides config)");
    cmd->add_option("--realizations", f.realizations, "realizations per point");
    cmd->add_option("--threads", f.threads, "worker threads (0 = all cores)");
}

mobnet::ExperimentSpec resolve(const CommonFlags& f) {
    mobnet::ExperimentSpec spec = f.config_path.empty() ? mobnet::parse_config("") : mobnet::load_config(f.config_path);
    if (f.seed) {
        spec.base.rng_seed = *f.seed;
    }
    if (!f.policy.empty()) {
        spec.policy = mobnet::parse_policy(f.policy);
    }
    if (f.realizations) {
        spec.realizations = *f.realizations;
    }
    if (!f.out.empty()) {
        spec.output_path = f.out;
    }
    mobnet::validate(spec.base);
    return spec;
}

void emit(const mobnet::ResultTable& table, const std::string& path) {
    if (path.empty()) {
        mobnet::write_csv(table, std::cout);
    } else {
        mobnet::write_csv(table, path);
    }
}

mobnet::EnsembleOptions ensemble_options(const mobnet::ExperimentSpec& spec, unsigned threads) {
    mobnet::EnsembleOptions opt;
    opt.realizations = spec.realizations;
    opt.threads = threads;
    return opt;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Greedy and random packet routing among mobile agents, with traffic-driven SIS spreading"};
    app.require_subcommand(1);
    std::string kernel_set = "auto";
    app.add_option("--kernels", kernel_set, "scalar|avx2|auto");

    CommonFlags run_f, sweep_rc_f, sweep_beta_f, find_rc_f, find_beta_f;

    auto* run = app.add_subcommand("run", "one realization, per-step CSV (t,Np,deliveries,rho,seed)");
    add_common(run, run_f);
    std::string loads_path;
    run->add_option("--loads", loads_path, "also write the load distribution P(n) over the measurement window");

    std::string axis_override;
    std::vector<double> values_override;
    auto* sweep_rc = app.add_subcommand("sweep-rc", "eta and <T> over a sweep of R, v or r");
    add_common(sweep_rc, sweep_rc_f);
    sweep_rc->add_option("--axis", axis_override, "R|v|r");
    sweep_rc->add_option("--values", values_override, "comma-separated sweep values")->delimiter(',');

    std::vector<double> beta_values;
    auto* sweep_beta = app.add_subcommand("sweep-beta", "steady infected density over a sweep of beta");
    add_common(sweep_beta, sweep_beta_f);
    sweep_beta->add_option("--values", beta_values, "comma-separated beta values")->delimiter(',');

    std::uint32_t rc_lo = 1, rc_hi = 1000;
    double eps_eta = 0.01;
    std::uint64_t max_packets = 5'000'000;
    auto* find_rc = app.add_subcommand("find-rc", "bisection for the critical generation rate");
    add_common(find_rc, find_rc_f);
    find_rc->add_option("--lo", rc_lo, "free-flow end of the bracket");
    find_rc->add_option("--hi", rc_hi, "congested end of the bracket");
    find_rc->add_option("--eps", eps_eta, "eta threshold");
    find_rc->add_option("--max-packets", max_packets, "stop a congested run beyond this many packets (0 = never)");

    double beta_lo = 0.01, beta_hi = 0.5, eps_rho = -1.0, beta_tol = 0.01;
    auto* find_beta = app.add_subcommand("find-betac", "bisection for the epidemic threshold");
    add_common(find_beta, find_beta_f);
    find_beta->add_option("--lo", beta_lo, "extinct end of the bracket");
    find_beta->add_option("--hi", beta_hi, "endemic end of the bracket");
    find_beta->add_option("--eps", eps_rho, "steady-density threshold (default 5/N)");
    find_beta->add_option("--tol", beta_tol, "relative bracket width at which to stop");

    double th_n = 1500, th_r = 4000, th_t = 0, th_beta = -1;
    std::string th_c = "inf";
    std::string theory_out;
    auto* theory = app.add_subcommand("theory", "mean-field thresholds and stationary density");
    theory->add_option("--N", th_n, "agents");
    theory->add_option("--R", th_r, "generation rate");
    theory->add_option("--avg-T", th_t, "measured average travel time")->required();
    theory->add_option("--C", th_c, "capacity (integer or inf)");
    theory->add_option("--beta", th_beta, "spreading rate for the stationary density");
    theory->add_option("--out", theory_out, "output CSV (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        setenv("MOBNET_KERNELS", kernel_set.c_str(), 1);
        (void)mobnet::kernels::active();

        if (*run) {
            const auto spec = resolve(run_f);
            std::vector<std::uint64_t> sums;
            const auto table = mobnet::run_trace(spec.base, spec.policy, loads_path.empty() ? nullptr : &sums);
            emit(table, spec.output_path);
            if (!loads_path.empty()) {
                const auto stats = mobnet::load_stats(sums, spec.base.measure_steps);
                mobnet::ResultTable loads{mobnet::csv::kLoads, {}};
                for (const auto& b : stats.histogram) {
                    loads.rows.push_back({mobnet::format_number(b.lo), mobnet::format_number(b.hi),
                                          mobnet::format_number(b.probability), std::to_string(spec.base.rng_seed)});
                }
                mobnet::write_csv(loads, loads_path);
            }
        } else if (*sweep_rc) {
            auto spec = resolve(sweep_rc_f);
            if (!axis_override.empty()) {
                spec.sweep_axis = mobnet::parse_sweep_axis(axis_override);
            }
            if (!values_override.empty()) {
                spec.sweep_values = values_override;
            }
            if (spec.sweep_axis == mobnet::SweepAxis::beta) {
                throw mobnet::ConfigError("sweep_axis", "use sweep-beta for beta sweeps");
            }
            emit(mobnet::run_experiment(spec, sweep_rc_f.threads, eps_eta), spec.output_path);
        } else if (*sweep_beta) {
            auto spec = resolve(sweep_beta_f);
            spec.sweep_axis = mobnet::SweepAxis::beta;
            if (!beta_values.empty()) {
                spec.sweep_values = beta_values;
            }
            emit(mobnet::run_experiment(spec, sweep_beta_f.threads), spec.output_path);
        } else if (*find_rc) {
            const auto spec = resolve(find_rc_f);
            auto opt = ensemble_options(spec, find_rc_f.threads);
            opt.traffic.max_packets = max_packets;
            const auto est = mobnet::find_rc(spec.base, spec.policy, rc_lo, rc_hi, eps_eta, opt);
            mobnet::ResultTable t{mobnet::csv::kFindRc, {}};
            t.rows.push_back({mobnet::to_string(spec.policy), mobnet::format_number(est.value),
                              mobnet::format_number(est.spread.mean), mobnet::format_number(est.spread.se),
                              mobnet::format_number(eps_eta), std::to_string(spec.base.rng_seed),
                              std::to_string(spec.realizations)});
            emit(t, spec.output_path);
        } else if (*find_beta) {
            auto spec = resolve(find_beta_f);
            if (!find_beta_f.realizations) {
                spec.realizations = 10;
            }
            const auto opt = ensemble_options(spec, find_beta_f.threads);
            const auto res = mobnet::find_beta_c(spec.base, spec.policy, beta_lo, beta_hi, eps_rho, opt, beta_tol);
            const double eps = eps_rho > 0 ? eps_rho : 5.0 / spec.base.n_agents;
            const double theory_bc = mobnet::theory::beta_c_free(spec.base.n_agents, spec.base.gen_rate,
                                                                 res.avg_travel_time.mean);
            mobnet::ResultTable t{mobnet::csv::kFindBetaC, {}};
            t.rows.push_back({mobnet::format_number(res.estimate.value), mobnet::format_number(res.estimate.spread.mean),
                              mobnet::format_number(res.estimate.spread.se),
                              mobnet::format_number(res.avg_travel_time.mean), mobnet::format_number(theory_bc),
                              mobnet::format_number(eps), std::to_string(spec.base.rng_seed),
                              std::to_string(spec.realizations)});
            emit(t, spec.output_path);
        } else if (*theory) {
            mobnet::Capacity cap = mobnet::Capacity::infinite();
            if (th_c != "inf") {
                std::stringstream ss(th_c);
                std::uint32_t c = 0;
                if (!(ss >> c) || c < 1) {
                    throw mobnet::ConfigError("C", "expected a positive integer or inf");
                }
                cap = mobnet::Capacity(c);
            }
            const double free = mobnet::theory::beta_c_free(th_n, th_r, th_t);
            const double congested = cap.is_infinite() ? std::numeric_limits<double>::quiet_NaN()
                                                       : mobnet::theory::beta_c_congested(cap);
            const double rho = th_beta >= 0 ? mobnet::theory::rho_steady_mf(th_beta, free)
                                            : std::numeric_limits<double>::quiet_NaN();
            mobnet::ResultTable t{mobnet::csv::kTheory, {}};
            t.rows.push_back({mobnet::format_number(th_n), mobnet::format_number(th_r), mobnet::format_number(th_t),
                              cap.to_string(), th_beta >= 0 ? mobnet::format_number(th_beta) : "nan",
                              mobnet::format_number(free), mobnet::format_number(congested),
                              mobnet::format_number(rho)});
            emit(t, theory_out);
        }
    } catch (const std::exception& e) {
        std::cerr << "mobnet: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
