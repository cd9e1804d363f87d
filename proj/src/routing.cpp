#include "mobnet/routing.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <vector>

namespace mobnet {

namespace {

bool contains(std::span<const AgentId> ids, AgentId id) {
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

NeighborSet materialize(std::span<const AgentId> ids, const Positions& positions) {
    NeighborSet set;
    for (AgentId id : ids) {
        set.push_back(id, positions[id]);
    }
    return set;
}

} // namespace

RoutingDecision route_greedy(AgentId holder, AgentId dest, const NeighborSet& nbrs, const Positions& positions,
                             const RoutingGeometry& geometry, Rng& rng) {
    assert(holder != dest);
    if (contains(nbrs.ids(), dest)) {
        return RoutingDecision::deliver(dest);
    }
    const Position target = positions[dest];
    if (nbrs.empty()) {
        return RoutingDecision::stuck(distance(positions[holder], target, geometry.side, geometry.metric));
    }

    thread_local std::vector<double> d2;
    thread_local std::vector<std::uint32_t> ties;
    const std::size_t n = nbrs.size();
    d2.resize(n);
    geometry.kernels->squared_distances(nbrs.x(), nbrs.y(), {target.x, target.y}, geometry.side,
                                        geometry.metric == Metric::torus, d2);
    const double best = geometry.kernels->min_value(std::span<const double>(d2.data(), n));

    ties.clear();
    for (std::size_t k = 0; k < n; ++k) {
        if (d2[k] == best) {
            ties.push_back(static_cast<std::uint32_t>(k));
        }
    }
    const std::size_t pick = ties.size() == 1 ? ties.front() : ties[rng.uniform_index(ties.size())];
    return RoutingDecision::forward(nbrs.ids()[pick], std::sqrt(best));
}

RoutingDecision route_greedy(AgentId holder, AgentId dest, std::span<const AgentId> nbrs,
                             const Positions& positions, const RoutingGeometry& geometry, Rng& rng) {
    return route_greedy(holder, dest, materialize(nbrs, positions), positions, geometry, rng);
}

RoutingDecision route_random(AgentId holder, AgentId dest, const NeighborSet& nbrs, const Positions& positions,
                             const RoutingGeometry& geometry, Rng& rng) {
    assert(holder != dest);
    if (contains(nbrs.ids(), dest)) {
        return RoutingDecision::deliver(dest);
    }
    const Position target = positions[dest];
    if (nbrs.empty()) {
        return RoutingDecision::stuck(distance(positions[holder], target, geometry.side, geometry.metric));
    }
    const AgentId next = nbrs.ids()[rng.uniform_index(nbrs.size())];
    return RoutingDecision::forward(next, distance(positions[next], target, geometry.side, geometry.metric));
}

RoutingDecision route_random(AgentId holder, AgentId dest, std::span<const AgentId> nbrs,
                             const Positions& positions, const RoutingGeometry& geometry, Rng& rng) {
    return route_random(holder, dest, materialize(nbrs, positions), positions, geometry, rng);
}

RoutingDecision route(Policy policy, AgentId holder, AgentId dest, const NeighborSet& nbrs,
                      const Positions& positions, const RoutingGeometry& geometry, Rng& rng) {
    return policy == Policy::greedy ? route_greedy(holder, dest, nbrs, positions, geometry, rng)
                                    : route_random(holder, dest, nbrs, positions, geometry, rng);
}

} // namespace mobnet
