#include "mobnet/epidemic.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mobnet {

void seed_infection(std::span<Health> health, double rho0, Rng& rng) {
    const std::size_t n = health.size();
    const double expected = rho0 * static_cast<double>(n);
    if (expected < 1.0) {
        throw std::invalid_argument("initial_infected_fraction * n_agents is below 1");
    }
    const auto count = std::min(n, static_cast<std::size_t>(std::llround(expected)));
    std::vector<AgentId> order(n);
    std::iota(order.begin(), order.end(), AgentId{0});
    // Partial Fisher-Yates: the first `count` slots are a uniform sample.
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t pick = k + rng.uniform_index(n - k);
        std::swap(order[k], order[pick]);
        health[order[k]] = Health::infected;
    }
}

std::uint32_t epidemic_update(std::span<Health> health, std::span<const Receipt> receipts, double beta,
                              double mu, Rng& rng) {
    thread_local std::vector<std::uint8_t> caught;
    caught.assign(health.size(), 0);
    for (const Receipt& r : receipts) {
        if (r.sender_infected && rng.bernoulli(beta)) {
            caught[r.receiver] = 1;
        }
    }
    std::uint32_t infected = 0;
    for (std::size_t i = 0; i < health.size(); ++i) {
        bool next = caught[i] != 0;
        if (health[i] == Health::infected && !rng.bernoulli(mu)) {
            next = true;
        }
        health[i] = next ? Health::infected : Health::susceptible;
        infected += next ? 1 : 0;
    }
    return infected;
}

double steady_rho(std::span<const double> rho_series, std::size_t window) {
    if (window == 0 || window > rho_series.size()) {
        throw std::invalid_argument("steady_rho window exceeds the series");
    }
    const auto tail = rho_series.last(window);
    return std::accumulate(tail.begin(), tail.end(), 0.0) / static_cast<double>(window);
}

} // namespace mobnet
