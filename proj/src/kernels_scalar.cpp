#include "kernels_impl.hpp"

#include <cmath>

namespace emopt::kernels::detail {

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double squared_norm_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

double max_abs_scalar(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = std::fabs(a[i]);
        if (v > m) m = v;
    }
    return m;
}

void accumulate_difference_scalar(double* out, const double* a, const double* b, double w,
                                  std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] += w * (a[i] - b[i]);
}

void scale_scalar(double* a, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

void reflect_scalar(double* out, const double* lower, const double* upper, const double* x,
                    std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = (lower[i] + upper[i]) - x[i];
}

}  // namespace emopt::kernels::detail
