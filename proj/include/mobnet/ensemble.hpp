#pragma once

// Single-realization drivers, realization ensembles, and the threshold
// searches (critical generation rate and epidemic threshold) built on them.

#include "mobnet/config.hpp"
#include "mobnet/kernels.hpp"
#include "mobnet/traffic.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mobnet {

struct TrafficRunOptions {
    const kernels::KernelSet* kernels = &kernels::active();
    // Abort once N_p exceeds this (0 disables). The run is flagged truncated
    // and eta is fitted on what was simulated; only deeply congested runs hit it.
    std::uint64_t max_packets = 0;
    bool collect_loads = false;
};

struct TrafficSummary {
    std::uint64_t seed = 0;
    std::vector<std::uint64_t> np_series;  // N_p after each step
    double eta = 0.0;                      // NaN for infinite capacity
    double avg_travel_time = 0.0;          // NaN when nothing was delivered in the window
    std::uint64_t delivered_in_window = 0;
    std::vector<std::uint64_t> queue_sums; // per agent, over the measurement window
    bool truncated = false;
};

// transient_steps + measure_steps steps; eta and <T> over the measurement
// window.
TrafficSummary simulate_traffic(const WorldConfig& config, Policy policy, const TrafficRunOptions& options = {});

struct EpidemicRunOptions {
    const kernels::KernelSet* kernels = &kernels::active();
    // rho = 0 is absorbing; once reached the remaining steps are recorded as 0
    // without simulating them.
    bool stop_on_extinction = true;
};

struct EpidemicSummary {
    std::uint64_t seed = 0;
    std::vector<double> rho_series;  // one entry per step after seeding
    double rho_steady = 0.0;         // mean over the final rho_window steps
    double avg_travel_time = 0.0;    // over deliveries after seeding (NaN if none)
    std::uint64_t delivered = 0;
    bool extinct = false;
};

// Traffic for transient_steps, then seeding, then measure_steps of coupled
// traffic + SIS dynamics.
EpidemicSummary simulate_epidemic(const WorldConfig& config, Policy policy, const EpidemicRunOptions& options = {});

// Runs fn(k) for k in [0, count) on up to `threads` workers (0 = hardware
// concurrency). The first exception thrown by any job is rethrown.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn);

struct EnsembleOptions {
    std::uint32_t realizations = 5;
    unsigned threads = 0;
    TrafficRunOptions traffic{};
    EpidemicRunOptions epidemic{};
};

// Realization k uses rng_seed = base.rng_seed + k.
std::vector<TrafficSummary> traffic_ensemble(const WorldConfig& base, Policy policy, const EnsembleOptions& options);
std::vector<EpidemicSummary> epidemic_ensemble(const WorldConfig& base, Policy policy, const EnsembleOptions& options);

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};

// Sample mean and standard error (0 for fewer than two values); NaN entries
// are skipped.
MeanSe mean_se(const std::vector<double>& values);

struct ThresholdEvaluation {
    double parameter;
    double ensemble_mean;
    std::vector<double> per_realization;
};

struct ThresholdEstimate {
    // Bisection result on the ensemble mean.
    double value = 0.0;
    // Per-realization thresholds read off the evaluated points: for each
    // realization, the tightest evaluated bracket around its own crossing.
    std::vector<double> per_realization;
    MeanSe spread{};
    std::vector<ThresholdEvaluation> evaluations;
};

// Largest integer R with ensemble-mean eta < eps_eta. Requires
// eta(r_lo) < eps_eta <= eta(r_hi); throws std::invalid_argument otherwise.
ThresholdEstimate find_rc(const WorldConfig& config, Policy policy, std::uint32_t r_lo, std::uint32_t r_hi,
                          double eps_eta = 0.01, const EnsembleOptions& options = {});

struct BetaThreshold {
    ThresholdEstimate estimate;
    // <T> measured over the endemic bracket runs (mean and standard error).
    MeanSe avg_travel_time{};
};

// Smallest beta (to relative tolerance `rel_tol`) with ensemble-mean steady
// rho > eps_rho; eps_rho <= 0 selects 5 / N. Requires extinction at beta_lo
// and an endemic state at beta_hi; throws std::invalid_argument otherwise.
BetaThreshold find_beta_c(const WorldConfig& config, Policy policy, double beta_lo, double beta_hi,
                          double eps_rho = -1.0, const EnsembleOptions& options = {.realizations = 10},
                          double rel_tol = 0.01);

} // namespace mobnet
