#include "emopt/kernels.hpp"

#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace emopt::kernels {

using namespace detail;

const KernelTable& scalar_table() {
    static const KernelTable table{"scalar",
                                   squared_distance_scalar,
                                   squared_norm_scalar,
                                   max_abs_scalar,
                                   accumulate_difference_scalar,
                                   scale_scalar,
                                   reflect_scalar};
    return table;
}

const KernelTable* avx2_table() {
#if defined(EMOPT_HAVE_AVX2)
    static const KernelTable table{"avx2",
                                   squared_distance_avx2,
                                   squared_norm_avx2,
                                   max_abs_avx2,
                                   accumulate_difference_avx2,
                                   scale_avx2,
                                   reflect_avx2};
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? &table : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const KernelTable& select() {
    if (const char* env = std::getenv("EMOPT_SIMD"); env && std::string_view(env) == "scalar")
        return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace emopt::kernels
