#pragma once

#include "mobnet/config.hpp"
#include "mobnet/kernels.hpp"
#include "mobnet/rng.hpp"

#include <numbers>
#include <span>
#include <vector>

namespace mobnet {

struct Position {
    double x = 0.0;
    double y = 0.0;
};

struct Heading {
    double theta = 0.0;  // in [-pi, pi]
};

// True mathematical modulo into [0, side).
double wrap_coordinate(double value, double side);

double torus_distance_sq(Position a, Position b, double side);
double torus_distance(Position a, Position b, double side);

// Metric-selected distance; Metric::euclidean ignores the wrap.
double distance_sq(Position a, Position b, double side, Metric metric);
double distance(Position a, Position b, double side, Metric metric);

// Agent coordinates in structure-of-arrays form so the mobility and distance
// kernels can stream them.
struct Positions {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
    Position operator[](std::size_t i) const { return {x[i], y[i]}; }
    void set(std::size_t i, Position p) {
        x[i] = p.x;
        y[i] = p.y;
    }
};

Positions init_positions(const WorldConfig& config, Rng& rng);

// Redraws every heading uniformly on [-pi, pi] (agent-index order), then
// moves each agent by speed along its new heading with periodic wrap.
void step_mobility(Positions& positions, std::span<Heading> headings, const WorldConfig& config, Rng& rng,
                   const kernels::KernelSet& kernels = kernels::active());

// Moves every agent along the given headings; no draws. Split out so the
// update can be checked against fixed headings.
void move_along(Positions& positions, std::span<const Heading> headings, double speed, double side,
                const kernels::KernelSet& kernels = kernels::active());

} // namespace mobnet
