#pragma once

#include <cstddef>
#include <limits>

namespace lipfree::kernels::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

void sub_scaled_scalar(double* y, const double* x, double a, std::size_t n);
void divide_scalar(double* y, double a, std::size_t n);
double max_slope_scalar(double fi, const double* f, const double* d, std::size_t n);
double masked_min_scalar(const double* row, const unsigned char* mask, std::size_t n);
void ramp_weight_scalar(double* out, const double* d, double theta, std::size_t n);

#if defined(LIPFREE_HAVE_AVX2)
void sub_scaled_avx2(double* y, const double* x, double a, std::size_t n);
void divide_avx2(double* y, double a, std::size_t n);
double max_slope_avx2(double fi, const double* f, const double* d, std::size_t n);
double masked_min_avx2(const double* row, const unsigned char* mask, std::size_t n);
void ramp_weight_avx2(double* out, const double* d, double theta, std::size_t n);
#endif

}  // namespace lipfree::kernels::detail
