#include "mobnet/spatial_index.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace mobnet {

NeighborIndex::NeighborIndex(double side, double radius, Metric metric, const kernels::KernelSet& kernels)
    : side_(side), radius_sq_(radius * radius), metric_(metric), kernels_(&kernels) {
    auto m = static_cast<std::size_t>(std::floor(side / radius));
    cells_per_side_ = m >= 3 ? m : 1;
    inv_cell_ = static_cast<double>(cells_per_side_) / side;
    cell_start_.assign(cells_per_side_ * cells_per_side_ + 1, 0);
}

std::size_t NeighborIndex::cell_index(double x, double y) const {
    const std::size_t m = cells_per_side_;
    const auto cx = std::min(static_cast<std::size_t>(x * inv_cell_), m - 1);
    const auto cy = std::min(static_cast<std::size_t>(y * inv_cell_), m - 1);
    return cy * m + cx;
}

void NeighborIndex::rebuild(const Positions& positions, Step epoch) {
    const std::size_t n = positions.size();
    const std::size_t cells = cells_per_side_ * cells_per_side_;
    agent_cell_.resize(n);
    agent_pos_.resize(n);
    std::fill(cell_start_.begin(), cell_start_.end(), 0U);
    for (std::size_t i = 0; i < n; ++i) {
        const auto c = static_cast<std::uint32_t>(cell_index(positions.x[i], positions.y[i]));
        agent_cell_[i] = c;
        agent_pos_[i] = positions[i];
        ++cell_start_[c + 1];
    }
    for (std::size_t c = 0; c < cells; ++c) {
        cell_start_[c + 1] += cell_start_[c];
    }
    sorted_ids_.resize(n);
    sorted_x_.resize(n);
    sorted_y_.resize(n);
    std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint32_t slot = cursor[agent_cell_[i]]++;
        sorted_ids_[slot] = static_cast<AgentId>(i);
        sorted_x_[slot] = positions.x[i];
        sorted_y_[slot] = positions.y[i];
    }
    epoch_ = epoch;
    built_ = true;
}

void NeighborIndex::gather(AgentId i, Step current, NeighborSet& out) const {
    assert(built_ && epoch_ == current && "neighbor index is stale");
    (void)current;
    out.clear();
    const Position p = agent_pos_[i];
    const bool wrap = metric_ == Metric::torus;
    const std::size_t m = cells_per_side_;
    thread_local std::vector<std::uint32_t> picked;
    if (picked.size() < sorted_ids_.size()) {
        picked.resize(sorted_ids_.size());
    }
    out.reserve(sorted_ids_.size());

    // Scans sorted slots [begin, end), which span whole cells.
    auto scan = [&](std::size_t begin, std::size_t end) {
        if (begin == end) {
            return;
        }
        const std::size_t count = end - begin;
        const std::size_t hits = kernels_->select_within(std::span<const double>(sorted_x_).subspan(begin, count),
                                                         std::span<const double>(sorted_y_).subspan(begin, count),
                                                         {p.x, p.y}, side_, wrap, radius_sq_, picked.data());
        for (std::size_t h = 0; h < hits; ++h) {
            const std::size_t slot = begin + picked[h];
            const AgentId j = sorted_ids_[slot];
            if (j != i) {
                out.append_unchecked(j, sorted_x_[slot], sorted_y_[slot]);
            }
        }
    };

    if (m == 1) {
        scan(0, sorted_ids_.size());
        return;
    }
    const std::size_t home = agent_cell_[i];
    const std::size_t cx = home % m;
    const std::size_t cy = home / m;
    for (std::size_t dy = 0; dy < 3; ++dy) {
        const std::size_t row = ((cy + m + dy - 1) % m) * m;
        // Cells of one row are contiguous in slot order, so the three columns
        // form one range unless the block wraps around the row end.
        if (cx == 0) {
            scan(cell_start_[row + m - 1], cell_start_[row + m]);
            scan(cell_start_[row], cell_start_[row + 2]);
        } else if (cx == m - 1) {
            scan(cell_start_[row], cell_start_[row + 1]);
            scan(cell_start_[row + m - 2], cell_start_[row + m]);
        } else {
            scan(cell_start_[row + cx - 1], cell_start_[row + cx + 2]);
        }
    }
}

std::vector<AgentId> NeighborIndex::neighbors_of(AgentId i, Step current) const {
    NeighborSet set;
    gather(i, current, set);
    std::vector<AgentId> ids(set.ids().begin(), set.ids().end());
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace mobnet
