#include <cstdlib>
#include <string>

#include "lphvg/error.hpp"
#include "lphvg/simd/kernels.hpp"

namespace lphvg::simd {
namespace {

struct KernelTable {
  Isa isa;
  std::size_t (*count_at_least)(std::span<const double>, double);
  std::uint64_t (*xor_popcount)(std::span<const std::uint64_t>, std::span<const std::uint64_t>);
};

KernelTable select_table() {
  const char* forced = std::getenv("LPHVG_SIMD");
  const bool want_scalar = forced != nullptr && std::string(forced) == "scalar";
#if LPHVG_HAVE_AVX2_KERNELS
  if (!want_scalar && isa_supported(Isa::kAvx2)) {
    return {Isa::kAvx2, &avx2::count_at_least, &avx2::xor_popcount};
  }
#endif
  (void)want_scalar;
  return {Isa::kScalar, &scalar::count_at_least, &scalar::xor_popcount};
}

const KernelTable& table() {
  static const KernelTable t = select_table();
  return t;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw ValidationError("popcount kernels require equally sized inputs");
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return "scalar";
    case Isa::kAvx2: return "avx2";
  }
  return "unknown";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::kScalar: return true;
    case Isa::kAvx2:
#if LPHVG_HAVE_AVX2_KERNELS && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return table().isa; }

std::size_t count_at_least(std::span<const double> values, double threshold) {
  return table().count_at_least(values, threshold);
}

std::uint64_t xor_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  check_sizes(a.size(), b.size());
  return table().xor_popcount(a, b);
}


}  // namespace lphvg::simd
