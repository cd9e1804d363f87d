#include "kernels_impl.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

namespace mobnet::kernels::detail {

namespace {

inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// Lane-wise reduce_once; blends instead of adding zero so -0.0 survives
// exactly as in the scalar path.
inline __m256d reduce_once_pd(__m256d x, __m256d side) {
    const __m256d zero = _mm256_setzero_pd();
    x = _mm256_blendv_pd(x, _mm256_add_pd(x, side), _mm256_cmp_pd(x, zero, _CMP_LT_OQ));
    x = _mm256_blendv_pd(x, _mm256_sub_pd(x, side), _mm256_cmp_pd(x, side, _CMP_GE_OQ));
    return x;
}

} // namespace

void squared_distances_avx2(std::span<const double> xs, std::span<const double> ys, Point p,
                            double side, bool wrap, std::span<double> out) {
    assert(xs.size() == ys.size() && out.size() >= xs.size());
    const std::size_t n = xs.size();
    const __m256d px = _mm256_set1_pd(p.x);
    const __m256d py = _mm256_set1_pd(p.y);
    const __m256d vs = _mm256_set1_pd(side);
    std::size_t k = 0;
    if (wrap) {
        for (; k + 4 <= n; k += 4) {
            __m256d dx = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(xs.data() + k), px));
            __m256d dy = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(ys.data() + k), py));
            // min(a, b) returns b on ties, matching std::min(a, b) which returns a:
            // equal values are bitwise equal for non-negative finite operands.
            dx = _mm256_min_pd(dx, _mm256_sub_pd(vs, dx));
            dy = _mm256_min_pd(dy, _mm256_sub_pd(vs, dy));
            _mm256_storeu_pd(out.data() + k, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
        }
    } else {
        for (; k + 4 <= n; k += 4) {
            const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs.data() + k), px);
            const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys.data() + k), py);
            _mm256_storeu_pd(out.data() + k, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
        }
    }
    if (k < n) {
        squared_distances_scalar(xs.subspan(k), ys.subspan(k), p, side, wrap, out.subspan(k));
    }
}

std::size_t select_within_avx2(std::span<const double> xs, std::span<const double> ys, Point p, double side,
                               bool wrap, double radius_sq, std::uint32_t* out) {
    assert(xs.size() == ys.size());
    const std::size_t n = xs.size();
    const __m256d px = _mm256_set1_pd(p.x);
    const __m256d py = _mm256_set1_pd(p.y);
    const __m256d vs = _mm256_set1_pd(side);
    const __m256d r2 = _mm256_set1_pd(radius_sq);
    std::size_t count = 0;
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d dx = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(xs.data() + k), px));
        __m256d dy = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(ys.data() + k), py));
        if (wrap) {
            dx = _mm256_min_pd(dx, _mm256_sub_pd(vs, dx));
            dy = _mm256_min_pd(dy, _mm256_sub_pd(vs, dy));
        }
        const __m256d d2 = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        unsigned mask = static_cast<unsigned>(_mm256_movemask_pd(_mm256_cmp_pd(d2, r2, _CMP_LT_OQ)));
        while (mask != 0) {
            out[count++] = static_cast<std::uint32_t>(k + static_cast<std::size_t>(__builtin_ctz(mask)));
            mask &= mask - 1;
        }
    }
    if (k < n) {
        const std::size_t tail = select_within_scalar(xs.subspan(k), ys.subspan(k), p, side, wrap, radius_sq, out + count);
        for (std::size_t j = 0; j < tail; ++j) {
            out[count + j] += static_cast<std::uint32_t>(k);
        }
        count += tail;
    }
    return count;
}

double min_value_avx2(std::span<const double> values) {
    const std::size_t n = values.size();
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        best = _mm256_min_pd(best, _mm256_loadu_pd(values.data() + k));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, best);
    double result = std::min(std::min(lanes[0], lanes[1]), std::min(lanes[2], lanes[3]));
    for (; k < n; ++k) {
        result = std::min(result, values[k]);
    }
    return result;
}

void advance_positions_avx2(std::span<double> xs, std::span<double> ys, std::span<const double> cos_theta,
                            std::span<const double> sin_theta, double speed, double side) {
    assert(xs.size() == ys.size() && cos_theta.size() >= xs.size() && sin_theta.size() >= xs.size());
    const std::size_t n = xs.size();
    const __m256d v = _mm256_set1_pd(speed);
    const __m256d vs = _mm256_set1_pd(side);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d x = _mm256_add_pd(_mm256_loadu_pd(xs.data() + k), _mm256_mul_pd(v, _mm256_loadu_pd(cos_theta.data() + k)));
        const __m256d y = _mm256_add_pd(_mm256_loadu_pd(ys.data() + k), _mm256_mul_pd(v, _mm256_loadu_pd(sin_theta.data() + k)));
        _mm256_storeu_pd(xs.data() + k, reduce_once_pd(x, vs));
        _mm256_storeu_pd(ys.data() + k, reduce_once_pd(y, vs));
    }
    if (k < n) {
        advance_positions_scalar(xs.subspan(k), ys.subspan(k), cos_theta.subspan(k), sin_theta.subspan(k), speed, side);
    }
}

} // namespace mobnet::kernels::detail
