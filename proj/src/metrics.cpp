#include "mobnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mobnet {

LinearFit fit_line(std::span<const double> y) {
    const std::size_t n = y.size();
    if (n < 3) {
        throw std::invalid_argument("fit_line needs at least three samples");
    }
    const double nd = static_cast<double>(n);
    const double x_mean = (nd - 1.0) / 2.0;
    double y_mean = 0.0;
    for (double v : y) {
        y_mean += v;
    }
    y_mean /= nd;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = static_cast<double>(k) - x_mean;
        sxy += dx * (y[k] - y_mean);
        sxx += dx * dx;
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = y_mean - fit.slope * x_mean;
    double rss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = y[k] - (fit.intercept + fit.slope * static_cast<double>(k));
        rss += r * r;
    }
    fit.slope_stderr = std::sqrt(rss / (nd - 2.0) / sxx);
    return fit;
}

double order_parameter(std::span<const std::uint64_t> np_series, std::size_t transient, Capacity capacity,
                       std::uint32_t gen_rate) {
    if (np_series.size() < transient + 3) {
        throw std::invalid_argument("order_parameter: window after transient is too short");
    }
    const double c = static_cast<double>(capacity.finite_value());
    std::vector<double> y(np_series.begin() + static_cast<std::ptrdiff_t>(transient), np_series.end());
    const double slope = fit_line(y).slope;
    return std::max(0.0, c / static_cast<double>(gen_rate) * slope);
}

double avg_travel_time(std::span<const StepRecord> records, Step window_start) {
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    for (const StepRecord& r : records) {
        if (r.t >= window_start) {
            count += r.delivered;
            total += r.travel_time_sum;
        }
    }
    if (count == 0) {
        throw std::runtime_error("avg_travel_time: no deliveries in the window");
    }
    return static_cast<double>(total) / static_cast<double>(count);
}

std::vector<double> load_bin_edges(double max_value) {
    std::vector<double> edges;
    for (int k = 0; k <= 10; ++k) {
        edges.push_back(k);
    }
    while (edges.back() <= max_value) {
        edges.push_back(edges.back() * 1.5);
    }
    return edges;
}

LoadStats load_stats(std::span<const std::uint64_t> queue_sums, std::uint64_t window_steps) {
    if (window_steps == 0) {
        throw std::invalid_argument("load_stats: empty window");
    }
    LoadStats out;
    out.loads.reserve(queue_sums.size());
    double max_load = 0.0;
    for (std::uint64_t s : queue_sums) {
        const double n = static_cast<double>(s) / static_cast<double>(window_steps);
        out.loads.push_back(n);
        max_load = std::max(max_load, n);
    }
    const std::vector<double> edges = load_bin_edges(max_load);
    std::vector<std::uint64_t> counts(edges.size() - 1, 0);
    for (double n : out.loads) {
        const auto it = std::upper_bound(edges.begin(), edges.end(), n);
        ++counts[static_cast<std::size_t>(it - edges.begin()) - 1];
    }
    const double total = static_cast<double>(out.loads.size());
    for (std::size_t b = 0; b < counts.size(); ++b) {
        out.histogram.push_back({edges[b], edges[b + 1], total > 0 ? static_cast<double>(counts[b]) / total : 0.0});
    }
    return out;
}

void accumulate_queue_lengths(const World& world, std::vector<std::uint64_t>& sums) {
    sums.resize(world.size(), 0);
    for (std::size_t i = 0; i < world.size(); ++i) {
        sums[i] += world.queues[i].size();
    }
}

} // namespace mobnet
