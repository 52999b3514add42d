#pragma once

#include <cstddef>

namespace emopt::kernels::detail {

double squared_distance_scalar(const double* a, const double* b, std::size_t n);
double squared_norm_scalar(const double* a, std::size_t n);
double max_abs_scalar(const double* a, std::size_t n);
void accumulate_difference_scalar(double* out, const double* a, const double* b, double w,
                                  std::size_t n);
void scale_scalar(double* a, double s, std::size_t n);
void reflect_scalar(double* out, const double* lower, const double* upper, const double* x,
                    std::size_t n);

#if defined(EMOPT_HAVE_AVX2)
double squared_distance_avx2(const double* a, const double* b, std::size_t n);
double squared_norm_avx2(const double* a, std::size_t n);
double max_abs_avx2(const double* a, std::size_t n);
void accumulate_difference_avx2(double* out, const double* a, const double* b, double w,
                                std::size_t n);
void scale_avx2(double* a, double s, std::size_t n);
void reflect_avx2(double* out, const double* lower, const double* upper, const double* x,
                  std::size_t n);
#endif

}  // namespace emopt::kernels::detail
