#include "mobnet/ensemble.hpp"

#include "mobnet/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace mobnet {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

TrafficSummary simulate_traffic(const WorldConfig& config, Policy policy, const TrafficRunOptions& options) {
    Simulation sim(config, policy, SimulationOptions{options.kernels});
    TrafficSummary out;
    out.seed = config.rng_seed;
    const Step total = config.transient_steps + config.measure_steps;
    out.np_series.reserve(total);
    std::uint64_t travel_sum = 0;
    for (Step t = 0; t < total; ++t) {
        const StepRecord rec = sim.step();
        out.np_series.push_back(rec.packets_in_system);
        if (t >= config.transient_steps) {
            out.delivered_in_window += rec.delivered;
            travel_sum += rec.travel_time_sum;
            if (options.collect_loads) {
                accumulate_queue_lengths(sim.world(), out.queue_sums);
            }
        }
        if (options.max_packets != 0 && rec.packets_in_system > options.max_packets) {
            out.truncated = true;
            break;
        }
    }
    out.avg_travel_time = out.delivered_in_window > 0
                              ? static_cast<double>(travel_sum) / static_cast<double>(out.delivered_in_window)
                              : kNaN;
    if (config.capacity.is_infinite()) {
        out.eta = kNaN;
    } else {
        // A truncated run may stop inside the transient; fit its second half.
        std::size_t skip = config.transient_steps;
        if (out.np_series.size() < skip + 3) {
            skip = out.np_series.size() / 2;
        }
        out.eta = out.np_series.size() >= 3 ? order_parameter(out.np_series, skip, config.capacity, config.gen_rate)
                                            : kNaN;
    }
    return out;
}

EpidemicSummary simulate_epidemic(const WorldConfig& config, Policy policy, const EpidemicRunOptions& options) {
    Simulation sim(config, policy, SimulationOptions{options.kernels});
    EpidemicSummary out;
    out.seed = config.rng_seed;
    for (Step t = 0; t < config.transient_steps; ++t) {
        sim.step();
    }
    sim.seed_epidemic();
    out.rho_series.reserve(config.measure_steps);
    std::uint64_t travel_sum = 0;
    const double n = static_cast<double>(config.n_agents);
    for (Step t = 0; t < config.measure_steps; ++t) {
        const StepRecord rec = sim.step();
        out.rho_series.push_back(static_cast<double>(rec.infected) / n);
        out.delivered += rec.delivered;
        travel_sum += rec.travel_time_sum;
        if (rec.infected == 0) {
            out.extinct = true;
            if (options.stop_on_extinction) {
                out.rho_series.resize(config.measure_steps, 0.0);
                break;
            }
        }
    }
    out.rho_steady = steady_rho(out.rho_series, std::min(config.rho_window, config.measure_steps));
    out.avg_travel_time =
        out.delivered > 0 ? static_cast<double>(travel_sum) / static_cast<double>(out.delivered) : kNaN;
    return out;
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t k = 0; k < count; ++k) {
            fn(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++) {
                try {
                    fn(k);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            }
        });
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::vector<TrafficSummary> traffic_ensemble(const WorldConfig& base, Policy policy, const EnsembleOptions& options) {
    std::vector<TrafficSummary> out(options.realizations);
    parallel_for(options.realizations, options.threads, [&](std::size_t k) {
        WorldConfig c = base;
        c.rng_seed = base.rng_seed + k;
        out[k] = simulate_traffic(c, policy, options.traffic);
    });
    return out;
}

std::vector<EpidemicSummary> epidemic_ensemble(const WorldConfig& base, Policy policy, const EnsembleOptions& options) {
    std::vector<EpidemicSummary> out(options.realizations);
    parallel_for(options.realizations, options.threads, [&](std::size_t k) {
        WorldConfig c = base;
        c.rng_seed = base.rng_seed + k;
        out[k] = simulate_epidemic(c, policy, options.epidemic);
    });
    return out;
}

MeanSe mean_se(const std::vector<double>& values) {
    double sum = 0.0;
    std::size_t n = 0;
    for (double v : values) {
        if (!std::isnan(v)) {
            sum += v;
            ++n;
        }
    }
    if (n == 0) {
        return {kNaN, kNaN};
    }
    const double mean = sum / static_cast<double>(n);
    if (n < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double v : values) {
        if (!std::isnan(v)) {
            ss += (v - mean) * (v - mean);
        }
    }
    return {mean, std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n))};
}

namespace {

// Per-realization crossing from the evaluated points: the tightest pair of
// evaluated parameters (below, at-or-above) around that realization's own
// switch from "below threshold" to "above". `above(v)` classifies one value.
template <typename Above>
std::vector<std::pair<double, double>> realization_brackets(std::vector<ThresholdEvaluation> evals,
                                                            std::size_t realizations, Above above) {
    std::sort(evals.begin(), evals.end(),
              [](const ThresholdEvaluation& a, const ThresholdEvaluation& b) { return a.parameter < b.parameter; });
    std::vector<std::pair<double, double>> out;
    for (std::size_t k = 0; k < realizations; ++k) {
        double lo = evals.front().parameter;
        double hi = evals.back().parameter;
        bool found = false;
        for (std::size_t e = 0; e < evals.size(); ++e) {
            if (above(evals[e].per_realization[k])) {
                hi = evals[e].parameter;
                lo = e > 0 ? evals[e - 1].parameter : hi;
                found = true;
                break;
            }
        }
        if (!found) {
            lo = hi;
        }
        out.emplace_back(lo, hi);
    }
    return out;
}

} // namespace

ThresholdEstimate find_rc(const WorldConfig& config, Policy policy, std::uint32_t r_lo, std::uint32_t r_hi,
                          double eps_eta, const EnsembleOptions& options) {
    if (r_lo >= r_hi || r_lo < 1) {
        throw std::invalid_argument("find_rc: bracket must satisfy 1 <= r_lo < r_hi");
    }
    ThresholdEstimate result;
    auto evaluate = [&](std::uint32_t rate) {
        WorldConfig c = config;
        c.gen_rate = rate;
        const auto runs = traffic_ensemble(c, policy, options);
        ThresholdEvaluation ev{static_cast<double>(rate), 0.0, {}};
        for (const auto& r : runs) {
            ev.per_realization.push_back(r.eta);
        }
        ev.ensemble_mean = mean_se(ev.per_realization).mean;
        result.evaluations.push_back(ev);
        return ev.ensemble_mean;
    };

    if (!(evaluate(r_lo) < eps_eta)) {
        throw std::invalid_argument("find_rc: bracket invalid, eta(r_lo) >= eps_eta");
    }
    if (!(evaluate(r_hi) >= eps_eta)) {
        throw std::invalid_argument("find_rc: bracket invalid, eta(r_hi) < eps_eta");
    }
    std::uint32_t lo = r_lo;
    std::uint32_t hi = r_hi;
    while (hi - lo > 1) {
        const std::uint32_t mid = lo + (hi - lo) / 2;
        if (evaluate(mid) < eps_eta) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    result.value = lo;
    for (auto [a, b] : realization_brackets(result.evaluations, options.realizations,
                                            [eps_eta](double eta) { return eta >= eps_eta; })) {
        // Largest free-flow rate when the bracket is tight; midpoint otherwise.
        result.per_realization.push_back(std::floor((a + b - 1.0) / 2.0 + 0.5));
    }
    result.spread = mean_se(result.per_realization);
    return result;
}

BetaThreshold find_beta_c(const WorldConfig& config, Policy policy, double beta_lo, double beta_hi, double eps_rho,
                          const EnsembleOptions& options, double rel_tol) {
    if (!(beta_lo >= 0.0 && beta_lo < beta_hi && beta_hi <= 1.0)) {
        throw std::invalid_argument("find_beta_c: bracket must satisfy 0 <= beta_lo < beta_hi <= 1");
    }
    if (eps_rho <= 0.0) {
        eps_rho = 5.0 / static_cast<double>(config.n_agents);
    }
    BetaThreshold out;
    ThresholdEstimate& result = out.estimate;
    std::vector<double> travel;
    auto evaluate = [&](double beta, bool keep_travel) {
        WorldConfig c = config;
        c.spread_rate = beta;
        const auto runs = epidemic_ensemble(c, policy, options);
        ThresholdEvaluation ev{beta, 0.0, {}};
        for (const auto& r : runs) {
            ev.per_realization.push_back(r.rho_steady);
            if (keep_travel) {
                travel.push_back(r.avg_travel_time);
            }
        }
        ev.ensemble_mean = mean_se(ev.per_realization).mean;
        result.evaluations.push_back(ev);
        return ev.ensemble_mean;
    };

    if (!(evaluate(beta_hi, true) > eps_rho)) {
        throw std::invalid_argument("find_beta_c: bracket invalid, no endemic state at beta_hi");
    }
    if (evaluate(beta_lo, false) > eps_rho) {
        throw std::invalid_argument("find_beta_c: bracket invalid, endemic already at beta_lo");
    }
    double lo = beta_lo;
    double hi = beta_hi;
    while (hi - lo > rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        if (evaluate(mid, false) > eps_rho) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    result.value = hi;
    for (auto [a, b] : realization_brackets(result.evaluations, options.realizations,
                                            [eps_rho](double rho) { return rho > eps_rho; })) {
        result.per_realization.push_back(0.5 * (a + b));
    }
    result.spread = mean_se(result.per_realization);
    out.avg_travel_time = mean_se(travel);
    return out;
}

} // namespace mobnet
