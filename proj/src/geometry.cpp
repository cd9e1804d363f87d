#include "mobnet/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace mobnet {

double wrap_coordinate(double value, double side) {
    double r = std::fmod(value, side);
    if (r < 0.0) {
        r += side;
    }
    // fmod of a tiny negative lifts to exactly side.
    return r >= side ? 0.0 : r;
}

double torus_distance_sq(Position a, Position b, double side) {
    double dx = std::fabs(a.x - b.x);
    double dy = std::fabs(a.y - b.y);
    dx = std::min(dx, side - dx);
    dy = std::min(dy, side - dy);
    return dx * dx + dy * dy;
}

double torus_distance(Position a, Position b, double side) {
    return std::sqrt(torus_distance_sq(a, b, side));
}

double distance_sq(Position a, Position b, double side, Metric metric) {
    if (metric == Metric::torus) {
        return torus_distance_sq(a, b, side);
    }
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double distance(Position a, Position b, double side, Metric metric) {
    return std::sqrt(distance_sq(a, b, side, metric));
}

Positions init_positions(const WorldConfig& config, Rng& rng) {
    Positions p;
    p.x.resize(config.n_agents);
    p.y.resize(config.n_agents);
    for (std::uint32_t i = 0; i < config.n_agents; ++i) {
        p.x[i] = config.side_length * rng.uniform01();
        p.y[i] = config.side_length * rng.uniform01();
    }
    return p;
}

void move_along(Positions& positions, std::span<const Heading> headings, double speed, double side,
                const kernels::KernelSet& kernels) {
    const std::size_t n = positions.size();
    if (speed == 0.0 || n == 0) {
        return;
    }
    thread_local std::vector<double> cos_theta;
    thread_local std::vector<double> sin_theta;
    cos_theta.resize(n);
    sin_theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        cos_theta[i] = std::cos(headings[i].theta);
        sin_theta[i] = std::sin(headings[i].theta);
    }
    if (speed < side) {
        kernels.advance_positions(positions.x, positions.y, cos_theta, sin_theta, speed, side);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        positions.x[i] = wrap_coordinate(positions.x[i] + speed * cos_theta[i], side);
        positions.y[i] = wrap_coordinate(positions.y[i] + speed * sin_theta[i], side);
    }
}

void step_mobility(Positions& positions, std::span<Heading> headings, const WorldConfig& config, Rng& rng,
                   const kernels::KernelSet& kernels) {
    for (auto& h : headings) {
        h.theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    move_along(positions, headings, config.speed, config.side_length, kernels);
}

} // namespace mobnet
