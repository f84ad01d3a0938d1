#pragma once

// Data-parallel inner loops shared by the LP core and the Lipschitz-function
// routines. Each kernel has a scalar reference and an AVX2 variant; the
// variant is chosen once at startup from CPUID and can be forced with the
// LIPFREE_ISA environment variable ("scalar" or "avx2").
//
// Every variant performs the same IEEE operations per element (no FMA, only
// exact reductions such as min/max), so all variants are bit-identical.

#include <cstddef>
#include <span>
#include <string_view>

namespace lipfree::kernels {

enum class Isa { kScalar, kAvx2 };

struct KernelTable {
  Isa isa;
  const char* name;

  // y[i] -= a * x[i]
  void (*sub_scaled)(double* y, const double* x, double a, std::size_t n);
  // y[i] /= a
  void (*divide)(double* y, double a, std::size_t n);
  // max_i |fi - f[i]| / d[i]; 0 for n == 0. d[i] must be positive.
  double (*max_slope)(double fi, const double* f, const double* d, std::size_t n);
  // min over i with mask[i] != 0 of row[i]; +inf when no entry is selected.
  double (*masked_min)(const double* row, const unsigned char* mask, std::size_t n);
  // out[i] = max(0, min(1, 2 - 2 * (d[i] / theta)))
  void (*ramp_weight)(double* out, const double* d, double theta, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the binary or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// Kernel table used by the library.
const KernelTable& active();

/// Overrides the runtime selection (tests use this to compare variants).
/// Returns false when the requested ISA is unavailable.
bool select(Isa isa);

bool parse_isa(std::string_view name, Isa& out);

// Convenience wrappers over active().
inline void sub_scaled(std::span<double> y, std::span<const double> x, double a) {
  active().sub_scaled(y.data(), x.data(), a, y.size());
}
inline void divide(std::span<double> y, double a) { active().divide(y.data(), a, y.size()); }
inline double max_slope(double fi, std::span<const double> f, std::span<const double> d) {
  return active().max_slope(fi, f.data(), d.data(), f.size());
}
inline double masked_min(std::span<const double> row, std::span<const unsigned char> mask) {
  return active().masked_min(row.data(), mask.data(), row.size());
}
inline void ramp_weight(std::span<double> out, std::span<const double> d, double theta) {
  active().ramp_weight(out.data(), d.data(), theta, out.size());
}

}  // namespace lipfree::kernels
