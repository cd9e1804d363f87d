#pragma once

#include "mobnet/config.hpp"
#include "mobnet/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace mobnet {

enum class Health : std::uint8_t { susceptible, infected };

// One packet handed to `receiver` during a delivery phase; the sender's health
// is taken at the start of that phase.
struct Receipt {
    AgentId receiver;
    bool sender_infected;
};

// Infects exactly round(rho0 * N) distinct agents chosen uniformly. Throws
// std::invalid_argument when rho0 * N < 1.
void seed_infection(std::span<Health> health, double rho0, Rng& rng);

// Parallel SIS update. Each infecting receipt is an independent Bernoulli(beta)
// trial on its receiver; every agent infected at entry recovers with
// probability mu and may be re-infected in the same update. Returns the number
// infected afterwards.
std::uint32_t epidemic_update(std::span<Health> health, std::span<const Receipt> receipts, double beta,
                              double mu, Rng& rng);

// Mean of the final `window` entries. Throws std::invalid_argument when the
// window is empty or longer than the series.
double steady_rho(std::span<const double> rho_series, std::size_t window);

} // namespace mobnet
