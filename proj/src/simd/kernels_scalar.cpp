#include <bit>

#include "lphvg/simd/kernels.hpp"

namespace lphvg::simd::scalar {

std::size_t count_at_least(std::span<const double> values, double threshold) {
  std::size_t count = 0;
  for (double v : values) count += v >= threshold ? 1 : 0;
  return count;
}

std::uint64_t xor_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) total += static_cast<std::uint64_t>(std::popcount(a[i] ^ b[i]));
  return total;
}


}  // namespace lphvg::simd::scalar
