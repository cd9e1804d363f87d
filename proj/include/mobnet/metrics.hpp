#pragma once

#include "mobnet/config.hpp"
#include "mobnet/traffic.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mobnet {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

// Ordinary least squares of y[k] against k.
LinearFit fit_line(std::span<const double> y);

// eta = (C / R) * slope of N_p(t) over the samples after `transient`,
// clamped at 0. Throws std::invalid_argument when fewer than three samples
// remain, and std::domain_error for infinite capacity.
double order_parameter(std::span<const std::uint64_t> np_series, std::size_t transient, Capacity capacity,
                       std::uint32_t gen_rate);

// Mean travel time of packets delivered at steps >= window_start. Throws
// std::runtime_error when no packet was delivered in the window.
double avg_travel_time(std::span<const StepRecord> records, Step window_start);

struct HistogramBin {
    double lo;
    double hi;
    double probability;
};

struct LoadStats {
    std::vector<double> loads;            // n_i
    std::vector<HistogramBin> histogram;  // P(n); probabilities sum to 1
};

// Bin edges: unit bins on [0, 10), then edges growing by a factor 1.5 until
// `max_value` is covered.
std::vector<double> load_bin_edges(double max_value);

// n_i = queue_sums[i] / window_steps, where queue_sums[i] is the sum of agent
// i's queue length sampled once per step over the window.
LoadStats load_stats(std::span<const std::uint64_t> queue_sums, std::uint64_t window_steps);

// Adds every agent's current queue length to `sums`.
void accumulate_queue_lengths(const World& world, std::vector<std::uint64_t>& sums);

} // namespace mobnet
