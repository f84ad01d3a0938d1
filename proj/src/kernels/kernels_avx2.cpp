// Compiled with -mavx2 (and deliberately without -mfma).
#include <immintrin.h>

#include <cmath>

#include "kernels_impl.hpp"

namespace lipfree::kernels::detail {

void sub_scaled_avx2(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) {
    const double prod = a * x[i];
    y[i] = y[i] - prod;
  }
}

void divide_avx2(double* y, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_div_pd(_mm256_loadu_pd(y + i), va));
  }
  for (; i < n; ++i) y[i] = y[i] / a;
}

double max_slope_avx2(double fi, const double* f, const double* d, std::size_t n) {
  const __m256d vfi = _mm256_set1_pd(fi);
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d diff = _mm256_andnot_pd(sign, _mm256_sub_pd(vfi, _mm256_loadu_pd(f + i)));
    best = _mm256_max_pd(_mm256_div_pd(diff, _mm256_loadu_pd(d + i)), best);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = 0.0;
  for (double lane : lanes) out = lane > out ? lane : out;
  for (; i < n; ++i) {
    const double slope = std::fabs(fi - f[i]) / d[i];
    out = slope > out ? slope : out;
  }
  return out;
}

double masked_min_avx2(const double* row, const unsigned char* mask, std::size_t n) {
  const __m256d inf = _mm256_set1_pd(kInf);
  const __m256i zero = _mm256_setzero_si256();
  __m256d best = inf;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    int packed;
    __builtin_memcpy(&packed, mask + i, sizeof(packed));
    // Widen four mask bytes to four 64-bit lanes; unselected lanes become +inf.
    const __m256i wide = _mm256_cvtepu8_epi64(_mm_cvtsi32_si128(packed));
    const __m256d off = _mm256_castsi256_pd(_mm256_cmpeq_epi64(wide, zero));
    const __m256d vals = _mm256_blendv_pd(_mm256_loadu_pd(row + i), inf, off);
    best = _mm256_min_pd(vals, best);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = kInf;
  for (double lane : lanes) out = lane < out ? lane : out;
  for (; i < n; ++i) {
    if (mask[i] != 0 && row[i] < out) out = row[i];
  }
  return out;
}

void ramp_weight_avx2(double* out, const double* d, double theta, std::size_t n) {
  const __m256d vtheta = _mm256_set1_pd(theta);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d ratio = _mm256_div_pd(_mm256_loadu_pd(d + i), vtheta);
    __m256d w = _mm256_sub_pd(two, _mm256_mul_pd(two, ratio));
    w = _mm256_min_pd(w, one);
    w = _mm256_max_pd(w, zero);
    _mm256_storeu_pd(out + i, w);
  }
  for (; i < n; ++i) {
    const double ratio = d[i] / theta;
    double w = 2.0 - 2.0 * ratio;
    w = w < 1.0 ? w : 1.0;
    out[i] = w > 0.0 ? w : 0.0;
  }
}

}  // namespace lipfree::kernels::detail
