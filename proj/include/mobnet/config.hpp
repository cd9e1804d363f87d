#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace mobnet {

using AgentId = std::uint32_t;
using Step = std::uint32_t;

inline constexpr AgentId kNoAgent = std::numeric_limits<AgentId>::max();

// Delivering ability per agent per step. Infinite is a distinct state, not a
// large number, so that the congested-limit formulas can refuse it.
class Capacity {
public:
    constexpr Capacity() = default;
    constexpr explicit Capacity(std::uint32_t per_step) : value_(per_step) {}

    static constexpr Capacity infinite() {
        Capacity c;
        c.value_ = kInfinite;
        return c;
    }

    constexpr bool is_infinite() const { return value_ == kInfinite; }

    // Number of sends allowed this step; saturates to the max for infinite.
    constexpr std::uint32_t per_step() const { return value_; }

    // Throws if infinite.
    std::uint32_t finite_value() const {
        if (is_infinite()) {
            throw std::domain_error("capacity is infinite");
        }
        return value_;
    }

    std::string to_string() const {
        return is_infinite() ? std::string("inf") : std::to_string(value_);
    }

    friend constexpr bool operator==(Capacity, Capacity) = default;

private:
    static constexpr std::uint32_t kInfinite = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t value_ = 1;
};

enum class Metric { torus, euclidean };
enum class QueueDiscipline { strict, skip_stuck };
enum class Policy { greedy, random };

std::string to_string(Metric m);
std::string to_string(QueueDiscipline q);
std::string to_string(Policy p);
Policy parse_policy(const std::string& text);

struct WorldConfig {
    std::uint32_t n_agents = 1500;
    double side_length = 10.0;
    double speed = 0.1;
    double radius = 1.0;
    Capacity capacity{1};
    std::uint32_t gen_rate = 100;
    double spread_rate = 0.0;
    double recovery_rate = 1.0;
    double initial_infected_fraction = 0.1;
    std::uint64_t rng_seed = 1;
    Step transient_steps = 5000;
    Step measure_steps = 50000;
    // Epidemic runs: steady-state density is the mean over the final
    // min(rho_window, measure_steps) steps of the measurement window.
    Step rho_window = 1000;
    Metric distance = Metric::torus;
    QueueDiscipline queue = QueueDiscipline::strict;
};

// Thrown for invalid configuration; key() names the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Checks every invariant of WorldConfig; throws ConfigError on the first
// violation.
void validate(const WorldConfig& config);

} // namespace mobnet
