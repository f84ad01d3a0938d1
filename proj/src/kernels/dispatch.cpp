#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"
#include "lipfree/kernels.hpp"

namespace lipfree::kernels {
namespace {

constexpr KernelTable kScalar{
    Isa::kScalar,
    "scalar",
    detail::sub_scaled_scalar,
    detail::divide_scalar,
    detail::max_slope_scalar,
    detail::masked_min_scalar,
    detail::ramp_weight_scalar,
};

#if defined(LIPFREE_HAVE_AVX2)
constexpr KernelTable kAvx2{
    Isa::kAvx2,
    "avx2",
    detail::sub_scaled_avx2,
    detail::divide_avx2,
    detail::max_slope_avx2,
    detail::masked_min_avx2,
    detail::ramp_weight_avx2,
};
#endif

bool cpu_has_avx2() {
#if defined(LIPFREE_HAVE_AVX2)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("LIPFREE_ISA")) {
    Isa requested;
    if (parse_isa(env, requested) && requested == Isa::kScalar) return &kScalar;
  }
  if (const KernelTable* avx2 = avx2_table()) return avx2;
  return &kScalar;
}

const KernelTable*& current() {
  static const KernelTable* table = initial_table();
  return table;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(LIPFREE_HAVE_AVX2)
  static const bool available = cpu_has_avx2();
  return available ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *current(); }

bool select(Isa isa) {
  if (isa == Isa::kScalar) {
    current() = &kScalar;
    return true;
  }
  const KernelTable* avx2 = avx2_table();
  if (avx2 == nullptr) return false;
  current() = avx2;
  return true;
}

bool parse_isa(std::string_view name, Isa& out) {
  if (name == "scalar") {
    out = Isa::kScalar;
    return true;
  }
  if (name == "avx2") {
    out = Isa::kAvx2;
    return true;
  }
  return false;
}

}  // namespace lipfree::kernels
