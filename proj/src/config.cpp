#include "mobnet/config.hpp"

namespace mobnet {

std::string to_string(Metric m) {
    return m == Metric::torus ? "torus" : "euclidean";
}

std::string to_string(QueueDiscipline q) {
    return q == QueueDiscipline::strict ? "strict" : "skip_stuck";
}

std::string to_string(Policy p) {
    return p == Policy::greedy ? "greedy" : "random";
}

Policy parse_policy(const std::string& text) {
    if (text == "greedy") {
        return Policy::greedy;
    }
    if (text == "random") {
        return Policy::random;
    }
    throw ConfigError("policy", "expected greedy|random, got '" + text + "'");
}

namespace {

void require_probability(const char* key, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(key, "must lie in [0, 1]");
    }
}

} // namespace

void validate(const WorldConfig& c) {
    if (c.n_agents < 2) {
        throw ConfigError("n_agents", "need at least 2 agents for distinct source and destination");
    }
    if (!(c.side_length > 0.0)) {
        throw ConfigError("side_length", "must be positive");
    }
    if (!(c.speed >= 0.0)) {
        throw ConfigError("speed", "must be non-negative");
    }
    if (!(c.radius > 0.0)) {
        throw ConfigError("radius", "must be positive");
    }
    if (!(c.radius < c.side_length / 2.0)) {
        throw ConfigError("radius", "must be less than side_length/2");
    }
    if (!c.capacity.is_infinite() && c.capacity.per_step() < 1) {
        throw ConfigError("capacity", "must be at least 1 or inf");
    }
    if (c.gen_rate < 1) {
        throw ConfigError("gen_rate", "must be at least 1");
    }
    require_probability("spread_rate", c.spread_rate);
    require_probability("recovery_rate", c.recovery_rate);
    require_probability("initial_infected_fraction", c.initial_infected_fraction);
    if (c.transient_steps < 1) {
        throw ConfigError("transient_steps", "must be positive");
    }
    if (c.measure_steps < 1) {
        throw ConfigError("measure_steps", "must be positive");
    }
    if (c.rho_window < 1) {
        throw ConfigError("rho_window", "must be positive");
    }
}

} // namespace mobnet
