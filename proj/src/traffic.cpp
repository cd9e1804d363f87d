#include "mobnet/traffic.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace mobnet {

std::uint32_t World::infected_count() const {
    return static_cast<std::uint32_t>(std::count(health.begin(), health.end(), Health::infected));
}

World World::with_positions(const WorldConfig& config, Positions positions) {
    if (positions.size() != config.n_agents) {
        throw std::invalid_argument("layout size does not match n_agents");
    }
    World w;
    w.config = config;
    w.positions = std::move(positions);
    w.headings.assign(config.n_agents, Heading{});
    w.queues.resize(config.n_agents);
    w.health.assign(config.n_agents, Health::susceptible);
    return w;
}

World World::create(const WorldConfig& config, Rng& placement) {
    return with_positions(config, init_positions(config, placement));
}

void generate_packets(World& world, std::uint32_t count, Rng& rng, Step t) {
    const std::uint64_t n = world.size();
    if (count > 0 && n < 2) {
        throw std::invalid_argument("packet generation needs at least two agents");
    }
    for (std::uint32_t k = 0; k < count; ++k) {
        AgentId source;
        AgentId dest;
        do {
            source = static_cast<AgentId>(rng.uniform_index(n));
            dest = static_cast<AgentId>(rng.uniform_index(n));
        } while (source == dest);
        Packet p;
        p.id = world.next_packet_id++;
        p.source = source;
        p.dest = dest;
        p.created_step = t;
        p.arrived_step = t;
        world.queues[source].push_back(p);
    }
    world.packets_in_system += count;
    world.generated_total += count;
}

void delivery_phase(World& world, const NeighborIndex& index, Policy policy, Rng& rng, Step t,
                    DeliveryResult& out, const kernels::KernelSet& kernels) {
    const RoutingGeometry geometry{world.config.side_length, world.config.distance, &kernels};
    const std::uint32_t capacity = world.config.capacity.per_step();
    const bool skip_stuck = world.config.queue == QueueDiscipline::skip_stuck;

    thread_local NeighborSet nbrs;
    thread_local std::vector<Packet> held;

    for (AgentId i = 0; i < world.size(); ++i) {
        PacketQueue& queue = world.queues[i];
        if (queue.empty() || queue.front().arrived_this_step(t)) {
            continue;
        }
        index.gather(i, t, nbrs);
        const bool holder_infected = world.health[i] == Health::infected;
        held.clear();
        std::uint32_t sent = 0;
        bool blocked = false;
        while (!blocked && sent < capacity && !queue.empty() && !queue.front().arrived_this_step(t)) {
            const Packet& head = queue.front();
            const RoutingDecision d = route(policy, i, head.dest, nbrs, world.positions, geometry, rng);
            switch (d.kind) {
            case RoutingDecision::Kind::deliver: {
                const Step travel = t - head.created_step;
                out.delivered.push_back({head, travel});
                out.receipts.push_back({head.dest, holder_infected});
                queue.pop_front();
                --world.packets_in_system;
                ++world.delivered_total;
                ++sent;
                break;
            }
            case RoutingDecision::Kind::forward: {
                Packet moved = head;
                queue.pop_front();
                ++moved.hops;
                moved.last_sender = i;
                moved.last_sender_infected = holder_infected;
                moved.arrived_step = t;
                world.queues[d.next].push_back(moved);
                out.receipts.push_back({d.next, holder_infected});
                ++out.forwarded;
                ++sent;
                break;
            }
            case RoutingDecision::Kind::stuck:
                ++out.stuck_events;
                if (!skip_stuck) {
                    blocked = true;
                    break;
                }
                held.push_back(head);
                queue.pop_front();
                break;
            }
        }
        for (auto it = held.rbegin(); it != held.rend(); ++it) {
            queue.push_front(*it);
        }
    }
}

Simulation::Simulation(const WorldConfig& config, Policy policy, SimulationOptions options)
    : policy_(policy), streams_(config.rng_seed), kernels_(options.kernels),
      index_(config.side_length, config.radius, config.distance, *options.kernels) {
    world_ = World::create(config, streams_.placement);
}

Simulation::Simulation(const WorldConfig& config, Policy policy, Positions layout, SimulationOptions options)
    : policy_(policy), streams_(config.rng_seed), kernels_(options.kernels),
      index_(config.side_length, config.radius, config.distance, *options.kernels) {
    world_ = World::with_positions(config, std::move(layout));
}

void Simulation::seed_epidemic() {
    seed_infection(world_.health, world_.config.initial_infected_fraction, streams_.epidemic);
    epidemic_active_ = true;
}

StepRecord Simulation::step() {
    const Step t = t_;
    const WorldConfig& cfg = world_.config;

    step_mobility(world_.positions, world_.headings, cfg, streams_.mobility, *kernels_);
    generate_packets(world_, cfg.gen_rate, streams_.generation, t);
    index_.rebuild(world_.positions, t);
    delivery_.clear();
    delivery_phase(world_, index_, policy_, streams_.routing, t, delivery_, *kernels_);

    StepRecord rec;
    rec.t = t;
    rec.generated = cfg.gen_rate;
    rec.delivered = static_cast<std::uint32_t>(delivery_.delivered.size());
    for (const auto& d : delivery_.delivered) {
        rec.travel_time_sum += d.travel_time;
        rec.hop_sum += d.packet.hops + 1;
    }
    if (epidemic_active_) {
        for (const auto& r : delivery_.receipts) {
            rec.infecting_receipts += r.sender_infected ? 1 : 0;
        }
        rec.infected = epidemic_update(world_.health, delivery_.receipts, cfg.spread_rate, cfg.recovery_rate,
                                       streams_.epidemic);
    }
    rec.packets_in_system = world_.packets_in_system;
    ++t_;
    return rec;
}

} // namespace mobnet
