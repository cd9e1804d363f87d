#pragma once

// Data-parallel inner loops of the simulator. Every kernel has a scalar
// reference implementation; vector variants must produce bit-identical
// output (the build disables FMA contraction so both round the same way).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace mobnet::kernels {

struct Point {
    double x;
    double y;
};

// out[k] = squared distance from (xs[k], ys[k]) to p. With wrap set, each
// axis offset is folded to min(|d|, side - |d|) (minimum image); coordinates
// must already be reduced into [0, side).
using SquaredDistancesFn = void (*)(std::span<const double> xs, std::span<const double> ys,
                                    Point p, double side, bool wrap, std::span<double> out);

// Writes the indices k with squared distance (as above) strictly below
// radius_sq to `out` in ascending order and returns how many were written.
// `out` must have room for xs.size() entries.
using SelectWithinFn = std::size_t (*)(std::span<const double> xs, std::span<const double> ys, Point p,
                                       double side, bool wrap, double radius_sq, std::uint32_t* out);

// Smallest element; +inf for an empty span.
using MinValueFn = double (*)(std::span<const double> values);

// xs[k] += speed * cos_theta[k], ys[k] += speed * sin_theta[k], each reduced
// into [0, side). Requires 0 <= speed < side.
using AdvancePositionsFn = void (*)(std::span<double> xs, std::span<double> ys,
                                    std::span<const double> cos_theta, std::span<const double> sin_theta,
                                    double speed, double side);

struct KernelSet {
    std::string_view name;
    SquaredDistancesFn squared_distances;
    SelectWithinFn select_within;
    MinValueFn min_value;
    AdvancePositionsFn advance_positions;
};

const KernelSet& scalar();

// Null when the binary was built without AVX2 support or the CPU lacks it.
const KernelSet* avx2();

// Selected once: MOBNET_KERNELS=scalar|avx2|auto (default auto picks the
// widest available set).
const KernelSet& active();

// Looks up a set by name ("scalar", "avx2", "auto"); throws
// std::invalid_argument for unknown or unavailable names.
const KernelSet& by_name(std::string_view name);

} // namespace mobnet::kernels
