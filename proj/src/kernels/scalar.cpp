#include "mobnet/kernels.hpp"
#include "kernels_impl.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace mobnet::kernels::detail {

void squared_distances_scalar(std::span<const double> xs, std::span<const double> ys, Point p,
                              double side, bool wrap, std::span<double> out) {
    assert(xs.size() == ys.size() && out.size() >= xs.size());
    const std::size_t n = xs.size();
    if (wrap) {
        for (std::size_t k = 0; k < n; ++k) {
            double dx = std::fabs(xs[k] - p.x);
            double dy = std::fabs(ys[k] - p.y);
            dx = std::min(dx, side - dx);
            dy = std::min(dy, side - dy);
            out[k] = dx * dx + dy * dy;
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            const double dx = xs[k] - p.x;
            const double dy = ys[k] - p.y;
            out[k] = dx * dx + dy * dy;
        }
    }
}

std::size_t select_within_scalar(std::span<const double> xs, std::span<const double> ys, Point p, double side,
                                 bool wrap, double radius_sq, std::uint32_t* out) {
    assert(xs.size() == ys.size());
    std::size_t count = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        double dx = std::fabs(xs[k] - p.x);
        double dy = std::fabs(ys[k] - p.y);
        if (wrap) {
            dx = std::min(dx, side - dx);
            dy = std::min(dy, side - dy);
        }
        out[count] = static_cast<std::uint32_t>(k);
        count += (dx * dx + dy * dy < radius_sq) ? 1 : 0;
    }
    return count;
}

double min_value_scalar(std::span<const double> values) {
    double best = std::numeric_limits<double>::infinity();
    for (double v : values) {
        best = std::min(best, v);
    }
    return best;
}

void advance_positions_scalar(std::span<double> xs, std::span<double> ys, std::span<const double> cos_theta,
                              std::span<const double> sin_theta, double speed, double side) {
    assert(xs.size() == ys.size() && cos_theta.size() >= xs.size() && sin_theta.size() >= xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        xs[k] = reduce_once(xs[k] + speed * cos_theta[k], side);
        ys[k] = reduce_once(ys[k] + speed * sin_theta[k], side);
    }
}

} // namespace mobnet::kernels::detail
