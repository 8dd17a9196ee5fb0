#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

// Byte-table kernels over a group-indexed domain. A table holds one byte per
// group element; `shift` is a GroupTable::shift() row, so src[shift[i]] is the
// value at i - g.
//
// Contract shared by every variant:
//   - src is readable for padded_size(n) bytes (padding is never interpreted)
//   - dst receives exactly n bytes and does not alias src
namespace zsum::simd {

enum class Isa { scalar, avx2, avx512 };

struct Kernels {
  Isa isa;
  const char* name;
  // dst[i] = src[i] | src[shift[i]]
  void (*translate_or)(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift, std::size_t n);
  // dst[i] = min(src[i], src[shift[i]] + 1), the addition saturating at 255
  void (*translate_min_inc)(std::uint8_t* dst, const std::uint8_t* src, const std::uint16_t* shift,
                            std::size_t n);
  std::size_t (*count_nonzero)(const std::uint8_t* src, std::size_t n);
};

constexpr std::size_t padded_size(std::size_t n) { return (n + 63) / 64 * 64 + 64; }

const Kernels& scalar_kernels();
bool compiled(Isa isa);
bool cpu_supports(Isa isa);
// Throws std::invalid_argument if the variant is not compiled in or the CPU
// lacks it.
const Kernels& kernels_for(Isa isa);
// Variants usable on this machine, scalar first.
std::vector<Isa> usable_isas();
// Chosen once per process: the widest usable variant, unless ZSUM_ISA names
// one of scalar, avx2, avx512.
const Kernels& active();
std::string_view isa_name(Isa isa);

}  // namespace zsum::simd
