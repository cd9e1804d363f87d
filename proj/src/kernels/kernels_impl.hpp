#pragma once

#include "mobnet/kernels.hpp"

namespace mobnet::kernels::detail {

// Single-wrap reduction into [0, side) for |x| < 2 * side. A tiny negative
// x lifts to exactly side and is then folded to 0.
inline double reduce_once(double x, double side) {
    if (x < 0.0) {
        x += side;
    }
    if (x >= side) {
        x -= side;
    }
    return x;
}

void squared_distances_scalar(std::span<const double> xs, std::span<const double> ys, Point p,
                              double side, bool wrap, std::span<double> out);
std::size_t select_within_scalar(std::span<const double> xs, std::span<const double> ys, Point p, double side,
                                 bool wrap, double radius_sq, std::uint32_t* out);
double min_value_scalar(std::span<const double> values);
void advance_positions_scalar(std::span<double> xs, std::span<double> ys, std::span<const double> cos_theta,
                              std::span<const double> sin_theta, double speed, double side);

#if defined(MOBNET_HAVE_AVX2)
void squared_distances_avx2(std::span<const double> xs, std::span<const double> ys, Point p,
                            double side, bool wrap, std::span<double> out);
std::size_t select_within_avx2(std::span<const double> xs, std::span<const double> ys, Point p, double side,
                               bool wrap, double radius_sq, std::uint32_t* out);
double min_value_avx2(std::span<const double> values);
void advance_positions_avx2(std::span<double> xs, std::span<double> ys, std::span<const double> cos_theta,
                            std::span<const double> sin_theta, double speed, double side);
#endif

} // namespace mobnet::kernels::detail
