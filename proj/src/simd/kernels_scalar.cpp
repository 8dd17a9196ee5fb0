#include "zsum/simd/kernels.hpp"

namespace zsum::simd {

namespace {

void translate_or(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] | src[shift[i]];
}

void translate_min_inc(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t moved = src[shift[i]];
    if (moved != 255) ++moved;
    dst[i] = moved < src[i] ? moved : src[i];
  }
}

std::size_t count_nonzero(const std::uint8_t* src, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += src[i] != 0;
  return c;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k{Isa::scalar, "scalar", translate_or, translate_min_inc, count_nonzero};
  return k;
}

}  // namespace zsum::simd
