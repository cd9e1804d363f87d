#include "mobnet/kernels.hpp"
#include "kernels_impl.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mobnet::kernels {

namespace {

constexpr KernelSet kScalar{
    "scalar",
    detail::squared_distances_scalar,
    detail::select_within_scalar,
    detail::min_value_scalar,
    detail::advance_positions_scalar,
};

#if defined(MOBNET_HAVE_AVX2)
constexpr KernelSet kAvx2{
    "avx2",
    detail::squared_distances_avx2,
    detail::select_within_avx2,
    detail::min_value_avx2,
    detail::advance_positions_avx2,
};

bool cpu_has_avx2() {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
}
#endif

const KernelSet& widest() {
    if (const KernelSet* k = avx2()) {
        return *k;
    }
    return kScalar;
}

} // namespace

const KernelSet& scalar() {
    return kScalar;
}

const KernelSet* avx2() {
#if defined(MOBNET_HAVE_AVX2)
    static const bool supported = cpu_has_avx2();
    return supported ? &kAvx2 : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet& by_name(std::string_view name) {
    if (name == "scalar") {
        return kScalar;
    }
    if (name == "auto" || name.empty()) {
        return widest();
    }
    if (name == "avx2") {
        if (const KernelSet* k = avx2()) {
            return *k;
        }
        throw std::invalid_argument("avx2 kernels are not available on this machine");
    }
    throw std::invalid_argument("unknown kernel set '" + std::string(name) + "'");
}

const KernelSet& active() {
    static const KernelSet& chosen = [] () -> const KernelSet& {
        const char* env = std::getenv("MOBNET_KERNELS");
        return by_name(env ? std::string_view(env) : std::string_view("auto"));
    }();
    return chosen;
}

} // namespace mobnet::kernels
