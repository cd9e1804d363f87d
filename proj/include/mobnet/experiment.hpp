#pragma once

#include "mobnet/config.hpp"
#include "mobnet/ensemble.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mobnet {

enum class SweepAxis { gen_rate, speed, radius, beta };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& text);

struct ExperimentSpec {
    WorldConfig base;
    SweepAxis sweep_axis = SweepAxis::gen_rate;
    std::vector<double> sweep_values;
    std::uint32_t realizations = 5;
    Policy policy = Policy::greedy;
    std::string output_path;
};

// key=value lines; '#' starts a comment; blank lines ignored. Unknown keys,
// duplicate keys, malformed values and out-of-range values throw ConfigError
// naming the key. Missing keys keep their defaults.
ExperimentSpec parse_config(std::string_view text);
ExperimentSpec load_config(const std::string& path);

// Checks the sweep part of the spec (values present and sorted, at least one
// realization) in addition to validate(base).
void validate(const ExperimentSpec& spec);

struct ResultTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Formats doubles with 10 significant digits so reruns are byte-identical.
std::string format_number(double value);

void write_csv(const ResultTable& table, std::ostream& out);
// Throws std::runtime_error naming the path when it cannot be written.
void write_csv(const ResultTable& table, const std::string& path);

namespace csv {
inline const std::vector<std::string> kRcSweep = {"axis_value", "eta_mean", "eta_se", "rc_flag", "avg_T_mean",
                                                  "avg_T_se", "master_seed", "seed_first", "realizations"};
inline const std::vector<std::string> kBetaSweep = {"beta", "rho_mean", "rho_se", "master_seed", "seed_first",
                                                    "realizations"};
inline const std::vector<std::string> kRun = {"t", "Np", "deliveries", "rho", "seed"};
inline const std::vector<std::string> kLoads = {"bin_lo", "bin_hi", "probability", "seed"};
inline const std::vector<std::string> kFindRc = {"policy", "rc", "rc_mean", "rc_se", "eps_eta", "master_seed",
                                                 "realizations"};
inline const std::vector<std::string> kFindBetaC = {"beta_c", "beta_c_mean", "beta_c_se", "avg_T",
                                                    "beta_c_theory", "eps_rho", "master_seed", "realizations"};
inline const std::vector<std::string> kTheory = {"N", "R", "avg_T", "C", "beta", "beta_c_free",
                                                 "beta_c_congested", "rho_mf"};
} // namespace csv

// Sweeps the configured axis. For R, v, r: eta and <T> per point (rc_flag
// marks the last free-flow point before the first congested one, the scan
// estimate of R_c). For beta: steady rho per point. Rows are in sweep order;
// realization k of every point uses seed base.rng_seed + k.
ResultTable run_experiment(const ExperimentSpec& spec, unsigned threads = 0, double eps_eta = 0.01);

// Per-step trace of one realization (epidemic seeded after the transient when
// spread_rate > 0). When `queue_sums` is given, per-agent queue lengths are
// summed over the measurement window.
ResultTable run_trace(const WorldConfig& config, Policy policy, std::vector<std::uint64_t>* queue_sums = nullptr);

} // namespace mobnet
