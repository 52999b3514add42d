#pragma once

// Dense double-precision kernels used by the force and movement phases.
//
// Every kernel has a portable scalar reference implementation and, on x86-64,
// an AVX2 variant. The active table is chosen once at startup from the host
// CPU; set EMOPT_SIMD=scalar in the environment to force the reference path.
// Element-wise kernels are bit-identical across variants; reductions may
// differ in the last few ulps because the summation order differs.

#include <span>
#include <string_view>

namespace emopt::kernels {

struct KernelTable {
    std::string_view name;

    /// sum_i (a_i - b_i)^2
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    /// sum_i a_i^2
    double (*squared_norm)(const double* a, std::size_t n);
    /// max_i |a_i|
    double (*max_abs)(const double* a, std::size_t n);
    /// out_i += w * (a_i - b_i)
    void (*accumulate_difference)(double* out, const double* a, const double* b, double w,
                                  std::size_t n);
    /// a_i *= s
    void (*scale)(double* a, double s, std::size_t n);
    /// out_i = lower_i + upper_i - x_i
    void (*reflect)(double* out, const double* lower, const double* upper, const double* x,
                    std::size_t n);
};

const KernelTable& scalar_table();

/// AVX2 table, or nullptr when the host CPU (or the build) lacks AVX2.
const KernelTable* avx2_table();

/// Table in use by the engines.
const KernelTable& active();

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    return active().squared_distance(a.data(), b.data(), a.size());
}
inline double squared_norm(std::span<const double> a) {
    return active().squared_norm(a.data(), a.size());
}
inline double max_abs(std::span<const double> a) { return active().max_abs(a.data(), a.size()); }
inline void accumulate_difference(std::span<double> out, std::span<const double> a,
                                  std::span<const double> b, double w) {
    active().accumulate_difference(out.data(), a.data(), b.data(), w, out.size());
}
inline void scale(std::span<double> a, double s) { active().scale(a.data(), s, a.size()); }
inline void reflect(std::span<double> out, std::span<const double> lower,
                    std::span<const double> upper, std::span<const double> x) {
    active().reflect(out.data(), lower.data(), upper.data(), x.data(), out.size());
}

}  // namespace emopt::kernels
