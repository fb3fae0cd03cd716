// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "lphvg/simd/kernels.hpp"

namespace lphvg::simd::avx2 {
namespace {

// Nibble-table popcount of each byte, summed into four 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

template <class Combine, class Tail>
std::uint64_t combine_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                               Combine combine, Tail tail) {
  const std::size_t n = a.size();
  std::size_t i = 0;
  __m256i acc = _mm256_setzero_si256();
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(combine(va, vb)));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += static_cast<std::uint64_t>(std::popcount(tail(a[i], b[i])));
  return total;
}

}  // namespace

std::size_t count_at_least(std::span<const double> values, double threshold) {
  const std::size_t n = values.size();
  const double* p = values.data();
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t i = 0;
  std::size_t count = 0;
  for (; i + 8 <= n; i += 8) {
    const int m0 = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i), t, _CMP_GE_OQ));
    const int m1 = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i + 4), t, _CMP_GE_OQ));
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(m0 | (m1 << 4))));
  }
  for (; i + 4 <= n; i += 4) {
    const int m = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(p + i), t, _CMP_GE_OQ));
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(m)));
  }
  for (; i < n; ++i) count += p[i] >= threshold ? 1 : 0;
  return count;
}

std::uint64_t xor_popcount(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  return combine_popcount(
      a, b, [](__m256i x, __m256i y) { return _mm256_xor_si256(x, y); },
      [](std::uint64_t x, std::uint64_t y) { return x ^ y; });
}


}  // namespace lphvg::simd::avx2
