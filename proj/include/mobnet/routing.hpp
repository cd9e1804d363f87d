#pragma once

#include "mobnet/config.hpp"
#include "mobnet/geometry.hpp"
#include "mobnet/kernels.hpp"
#include "mobnet/rng.hpp"
#include "mobnet/spatial_index.hpp"

#include <span>

namespace mobnet {

struct RoutingDecision {
    enum class Kind { deliver, forward, stuck };

    Kind kind = Kind::stuck;
    AgentId next = kNoAgent;   // destination for deliver, chosen hop for forward
    double distance_after = 0; // distance from `next` to the destination

    static RoutingDecision deliver(AgentId dest) { return {Kind::deliver, dest, 0.0}; }
    static RoutingDecision forward(AgentId to, double d) { return {Kind::forward, to, d}; }
    static RoutingDecision stuck(double d) { return {Kind::stuck, kNoAgent, d}; }
};

struct RoutingGeometry {
    double side = 10.0;
    Metric metric = Metric::torus;
    const kernels::KernelSet* kernels = &kernels::active();
};

// Greedy rule: deliver when the destination is a neighbor; otherwise forward
// to the neighbor closest to the destination (uniform tie-break, drawing from
// `rng` only when there is a tie); stuck when there are no neighbors. A hop
// may move the packet farther from the destination.
RoutingDecision route_greedy(AgentId holder, AgentId dest, const NeighborSet& nbrs, const Positions& positions,
                             const RoutingGeometry& geometry, Rng& rng);
RoutingDecision route_greedy(AgentId holder, AgentId dest, std::span<const AgentId> nbrs,
                             const Positions& positions, const RoutingGeometry& geometry, Rng& rng);

// Random-walk baseline: deliver when the destination is a neighbor, else a
// uniformly chosen neighbor.
RoutingDecision route_random(AgentId holder, AgentId dest, const NeighborSet& nbrs, const Positions& positions,
                             const RoutingGeometry& geometry, Rng& rng);
RoutingDecision route_random(AgentId holder, AgentId dest, std::span<const AgentId> nbrs,
                             const Positions& positions, const RoutingGeometry& geometry, Rng& rng);

RoutingDecision route(Policy policy, AgentId holder, AgentId dest, const NeighborSet& nbrs,
                      const Positions& positions, const RoutingGeometry& geometry, Rng& rng);

} // namespace mobnet
