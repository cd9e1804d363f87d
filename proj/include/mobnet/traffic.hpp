#pragma once

#include "mobnet/config.hpp"
#include "mobnet/epidemic.hpp"
#include "mobnet/geometry.hpp"
#include "mobnet/kernels.hpp"
#include "mobnet/rng.hpp"
#include "mobnet/routing.hpp"
#include "mobnet/spatial_index.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

namespace mobnet {

struct Packet {
    std::uint64_t id = 0;
    AgentId source = kNoAgent;
    AgentId dest = kNoAgent;
    Step created_step = 0;
    // Step in which the packet entered its current queue (generation or the
    // last hop). A packet is forwardable only in a later step.
    Step arrived_step = 0;
    std::uint32_t hops = 0;
    AgentId last_sender = kNoAgent;
    bool last_sender_infected = false;

    bool arrived_this_step(Step t) const { return arrived_step == t; }
    std::optional<AgentId> sender() const {
        return last_sender == kNoAgent ? std::nullopt : std::optional<AgentId>(last_sender);
    }
};

using PacketQueue = std::deque<Packet>;

// Read-only view of one agent assembled from the world's columns.
struct AgentState {
    AgentId id;
    Position position;
    Heading heading;
    const PacketQueue& queue;
    Health health;
};

struct Streams {
    explicit Streams(std::uint64_t master_seed)
        : placement(master_seed, Substream::placement),
          mobility(master_seed, Substream::mobility),
          generation(master_seed, Substream::generation),
          routing(master_seed, Substream::routing),
          epidemic(master_seed, Substream::epidemic) {}

    Rng placement;
    Rng mobility;
    Rng generation;
    Rng routing;
    Rng epidemic;
};

struct World {
    WorldConfig config;
    Positions positions;
    std::vector<Heading> headings;
    std::vector<PacketQueue> queues;
    std::vector<Health> health;
    std::uint64_t next_packet_id = 0;
    std::uint64_t packets_in_system = 0;
    std::uint64_t generated_total = 0;
    std::uint64_t delivered_total = 0;

    std::size_t size() const { return queues.size(); }
    AgentState agent(AgentId i) const { return {i, positions[i], headings[i], queues[i], health[i]}; }
    std::uint32_t infected_count() const;

    // Random initial layout from the placement stream; all queues empty and
    // every agent susceptible.
    static World create(const WorldConfig& config, Rng& placement);
    // Agents at given positions (static layouts in tests).
    static World with_positions(const WorldConfig& config, Positions positions);
};

struct DeliveredPacket {
    Packet packet;
    Step travel_time;
};

struct DeliveryResult {
    std::vector<DeliveredPacket> delivered;
    std::vector<Receipt> receipts;
    std::uint64_t forwarded = 0;
    std::uint64_t stuck_events = 0;

    void clear() {
        delivered.clear();
        receipts.clear();
        forwarded = 0;
        stuck_events = 0;
    }
};

// Appends `count` packets with uniform ordered (source, dest), source != dest.
void generate_packets(World& world, std::uint32_t count, Rng& rng, Step t);

// Ascending agent order; each agent sends up to C packets from the head of its
// queue that did not arrive during step t. A stuck head blocks the rest of the
// queue under QueueDiscipline::strict and is stepped over under skip_stuck.
void delivery_phase(World& world, const NeighborIndex& index, Policy policy, Rng& rng, Step t,
                    DeliveryResult& out, const kernels::KernelSet& kernels = kernels::active());

struct StepRecord {
    Step t = 0;
    std::uint64_t packets_in_system = 0; // N_p after the step
    std::uint32_t generated = 0;
    std::uint32_t delivered = 0;
    std::uint64_t travel_time_sum = 0;
    std::uint64_t hop_sum = 0;
    std::uint32_t infected = 0;
    std::uint64_t infecting_receipts = 0;
};

struct SimulationOptions {
    const kernels::KernelSet* kernels = &kernels::active();
};

// One realization: world state, substreams, and the per-step loop
// mobility -> generation -> index rebuild -> delivery -> epidemic update.
class Simulation {
public:
    Simulation(const WorldConfig& config, Policy policy, SimulationOptions options = {});
    // Static layout; mobility still runs with config.speed.
    Simulation(const WorldConfig& config, Policy policy, Positions layout, SimulationOptions options = {});

    StepRecord step();

    // Seeds round(rho0 * N) infected agents and switches on the epidemic update.
    void seed_epidemic();
    bool epidemic_active() const { return epidemic_active_; }

    Step current_step() const { return t_; }
    const World& world() const { return world_; }
    World& world() { return world_; }
    const DeliveryResult& last_delivery() const { return delivery_; }
    const NeighborIndex& index() const { return index_; }
    Policy policy() const { return policy_; }

private:
    World world_;
    Policy policy_;
    Streams streams_;
    const kernels::KernelSet* kernels_;
    NeighborIndex index_;
    DeliveryResult delivery_;
    Step t_ = 0;
    bool epidemic_active_ = false;
};

} // namespace mobnet
