// Compiled with AVX-512 F/BW/VBMI enabled; only reached through runtime
// dispatch. Tables up to 256 entries live in registers and are looked up with
// byte permutes; larger domains use the AVX2 gather path.
#include <immintrin.h>

#include <cstddef>
#include <cstdint>

namespace zsum::simd::avx2 {
void translate_or(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n);
void translate_min_inc(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n);
}  // namespace zsum::simd::avx2

namespace zsum::simd::avx512 {

namespace {

inline __mmask64 tail_mask(std::size_t left) {
  return left >= 64 ? ~__mmask64{0} : ((__mmask64{1} << left) - 1);
}

// 64 byte indices from 64 uint16 shift entries (all < 256 here).
inline __m512i load_index(const std::uint16_t* shift, __mmask64 m) {
  __m512i lo = _mm512_maskz_loadu_epi16(static_cast<__mmask32>(m), shift);
  __m512i hi = _mm512_maskz_loadu_epi16(static_cast<__mmask32>(m >> 32), shift + 32);
  __m256i blo = _mm512_cvtepi16_epi8(lo);
  __m256i bhi = _mm512_cvtepi16_epi8(hi);
  return _mm512_inserti64x4(_mm512_castsi256_si512(blo), bhi, 1);
}

struct Table {
  __m512i t0, t1, t2, t3;
  int parts;
};

inline Table load_table(const std::uint8_t* src, std::size_t n) {
  Table t{};
  t.parts = n <= 64 ? 1 : n <= 128 ? 2 : 4;
  t.t0 = _mm512_loadu_si512(src);
  if (t.parts >= 2) t.t1 = _mm512_loadu_si512(src + 64);
  if (t.parts == 4) {
    t.t2 = _mm512_loadu_si512(src + 128);
    t.t3 = _mm512_loadu_si512(src + 192);
  }
  return t;
}

inline __m512i lookup(const Table& t, __m512i idx) {
  if (t.parts == 1) return _mm512_permutexvar_epi8(idx, t.t0);
  __m512i lo = _mm512_permutex2var_epi8(t.t0, idx, t.t1);
  if (t.parts == 2) return lo;
  __m512i hi = _mm512_permutex2var_epi8(t.t2, idx, t.t3);
  return _mm512_mask_blend_epi8(_mm512_movepi8_mask(idx), lo, hi);
}

}  // namespace

void translate_or(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n) {
  if (n > 256) return avx2::translate_or(dst, src, shift, n);
  const Table t = load_table(src, n);
  for (std::size_t i = 0; i < n; i += 64) {
    __mmask64 m = tail_mask(n - i);
    __m512i moved = lookup(t, load_index(shift + i, m));
    __m512i here = _mm512_maskz_loadu_epi8(m, src + i);
    _mm512_mask_storeu_epi8(dst + i, m, _mm512_or_si512(here, moved));
  }
}

void translate_min_inc(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n) {
  if (n > 256) return avx2::translate_min_inc(dst, src, shift, n);
  const Table t = load_table(src, n);
  const __m512i one = _mm512_set1_epi8(1);
  for (std::size_t i = 0; i < n; i += 64) {
    __mmask64 m = tail_mask(n - i);
    __m512i moved = _mm512_adds_epu8(lookup(t, load_index(shift + i, m)), one);
    __m512i here = _mm512_maskz_loadu_epi8(m, src + i);
    _mm512_mask_storeu_epi8(dst + i, m, _mm512_min_epu8(here, moved));
  }
}

std::size_t count_nonzero(const std::uint8_t* src, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; i += 64) {
    __mmask64 m = tail_mask(n - i);
    __m512i v = _mm512_maskz_loadu_epi8(m, src + i);
    c += static_cast<std::size_t>(__builtin_popcountll(_mm512_test_epi8_mask(v, v)));
  }
  return c;
}

}  // namespace zsum::simd::avx512
