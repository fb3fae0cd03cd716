#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference version and
// an AVX2 version; the exported entry points dispatch at runtime on the
// host CPU. Setting LPHVG_SIMD=scalar forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace lphvg::simd {

enum class Isa { kScalar, kAvx2 };

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
// The variant the dispatching entry points use.
Isa active_isa();

// Number of entries with value >= threshold.
std::size_t count_at_least(std::span<const double> values, double threshold);

// popcount(a XOR b) over equally sized word arrays.
std::uint64_t xor_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);


namespace scalar {
std::size_t count_at_least(std::span<const double> values, double threshold);
std::uint64_t xor_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define LPHVG_HAVE_AVX2_KERNELS 1
namespace avx2 {
std::size_t count_at_least(std::span<const double> values, double threshold);
std::uint64_t xor_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
}  // namespace avx2
#else
#define LPHVG_HAVE_AVX2_KERNELS 0
#endif

}  // namespace lphvg::simd
