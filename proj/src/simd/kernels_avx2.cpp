// Compiled with -mavx2; only reached through runtime dispatch. Keep this file
// free of inline library templates so no AVX2 code leaks into shared symbols.
#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace zsum::simd::avx2 {

namespace {

// 8 gathered bytes src[shift[i..i+8)] in the low byte of each dword.
inline __m256i gather8(const std::uint8_t* src, const std::uint16_t* shift) {
  __m256i idx = _mm256_cvtepu16_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(shift)));
  __m256i v = _mm256_i32gather_epi32(reinterpret_cast<const int*>(src), idx, 1);
  return _mm256_and_si256(v, _mm256_set1_epi32(0xFF));
}

// src[shift[i]] for 32 consecutive i, packed into bytes in order.
inline __m256i gather32(const std::uint8_t* src, const std::uint16_t* shift) {
  __m256i a = gather8(src, shift);
  __m256i b = gather8(src, shift + 8);
  __m256i c = gather8(src, shift + 16);
  __m256i d = gather8(src, shift + 24);
  __m256i packed = _mm256_packus_epi16(_mm256_packus_epi32(a, b), _mm256_packus_epi32(c, d));
  return _mm256_permutevar8x32_epi32(packed, _mm256_setr_epi32(0, 4, 1, 5, 2, 6, 3, 7));
}

}  // namespace

void translate_or(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i moved = gather32(src, shift + i);
    __m256i here = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(here, moved));
  }
  for (; i < n; ++i) dst[i] = src[i] | src[shift[i]];
}

void translate_min_inc(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n) {
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i moved = _mm256_adds_epu8(gather32(src, shift + i), one);
    __m256i here = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_min_epu8(here, moved));
  }
  for (; i < n; ++i) {
    std::uint8_t moved = src[shift[i]];
    if (moved != 255) ++moved;
    dst[i] = moved < src[i] ? moved : src[i];
  }
}

std::size_t count_nonzero(const std::uint8_t* src, std::size_t n) {
  std::size_t zeros = 0, i = 0;
  const __m256i z = _mm256_setzero_si256();
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    auto mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(v, z)));
    zeros += static_cast<std::size_t>(__builtin_popcount(mask));
  }
  for (; i < n; ++i) zeros += src[i] == 0;
  return n - zeros;
}

}  // namespace zsum::simd::avx2
