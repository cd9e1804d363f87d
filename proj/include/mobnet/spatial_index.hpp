#pragma once

#include "mobnet/config.hpp"
#include "mobnet/geometry.hpp"
#include "mobnet/kernels.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace mobnet {

// Neighbors of one agent with their coordinates laid out contiguously for
// the distance kernels. Storage is kept across clear() so per-step refills
// do not allocate.
class NeighborSet {
public:
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    void clear() { size_ = 0; }

    // Ensures room for n entries in total without reallocating.
    void reserve(std::size_t n) {
        if (ids_.size() < n) {
            ids_.resize(n);
            x_.resize(n);
            y_.resize(n);
        }
    }

    void push_back(AgentId id, Position p) {
        reserve(std::max<std::size_t>(size_ + 1, 2 * size_));
        append_unchecked(id, p.x, p.y);
    }

    // Caller guarantees capacity via reserve().
    void append_unchecked(AgentId id, double x, double y) {
        ids_[size_] = id;
        x_[size_] = x;
        y_[size_] = y;
        ++size_;
    }

    std::span<const AgentId> ids() const { return {ids_.data(), size_}; }
    std::span<const double> x() const { return {x_.data(), size_}; }
    std::span<const double> y() const { return {y_.data(), size_}; }

private:
    std::vector<AgentId> ids_;
    std::vector<double> x_;
    std::vector<double> y_;
    std::size_t size_ = 0;
};

// Uniform-grid index for fixed-radius queries. The side is split into
// m = floor(side / radius) cells per axis (each at least radius wide), so
// every neighbor lies in the 3x3 wrapped block around the query cell. When
// m < 3 the block would alias, and a single cell covering the whole square
// is used instead.
class NeighborIndex {
public:
    NeighborIndex() = default;
    NeighborIndex(double side, double radius, Metric metric,
                  const kernels::KernelSet& kernels = kernels::active());

    void rebuild(const Positions& positions, Step epoch);

    // { j != i : distance(i, j) < radius }, ascending ids. Asserts the index
    // was rebuilt at `current`.
    std::vector<AgentId> neighbors_of(AgentId i, Step current) const;

    // Fills `out` with the same set (cell-scan order, not sorted).
    void gather(AgentId i, Step current, NeighborSet& out) const;

    Step epoch() const { return epoch_; }
    std::size_t cells_per_side() const { return cells_per_side_; }
    std::size_t agent_count() const { return sorted_ids_.size(); }
    std::size_t bucket_size(std::size_t cell) const { return cell_start_[cell + 1] - cell_start_[cell]; }
    std::size_t bucket_of(AgentId i) const { return agent_cell_[i]; }
    std::span<const AgentId> bucket(std::size_t cell) const {
        return std::span<const AgentId>(sorted_ids_).subspan(cell_start_[cell], bucket_size(cell));
    }

private:
    std::size_t cell_index(double x, double y) const;

    double side_ = 1.0;
    double radius_sq_ = 0.0;
    Metric metric_ = Metric::torus;
    const kernels::KernelSet* kernels_ = &kernels::scalar();
    std::size_t cells_per_side_ = 1;
    double inv_cell_ = 1.0;
    Step epoch_ = 0;
    bool built_ = false;

    std::vector<std::uint32_t> cell_start_;
    std::vector<AgentId> sorted_ids_;
    std::vector<double> sorted_x_;
    std::vector<double> sorted_y_;
    std::vector<std::uint32_t> agent_cell_;
    std::vector<Position> agent_pos_;
};

} // namespace mobnet
