#include <cmath>

#include "kernels_impl.hpp"

namespace lipfree::kernels::detail {

void sub_scaled_scalar(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] - prod;
  }
}

void divide_scalar(double* y, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] / a;
}

double max_slope_scalar(double fi, const double* f, const double* d, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double slope = std::fabs(fi - f[i]) / d[i];
    best = slope > best ? slope : best;
  }
  return best;
}

double masked_min_scalar(const double* row, const unsigned char* mask, std::size_t n) {
  double best = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask[i] != 0 && row[i] < best) best = row[i];
  }
  return best;
}

void ramp_weight_scalar(double* out, const double* d, double theta, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double ratio = d[i] / theta;
    double w = 2.0 - 2.0 * ratio;
    w = w < 1.0 ? w : 1.0;
    out[i] = w > 0.0 ? w : 0.0;
  }
}

}  // namespace lipfree::kernels::detail
