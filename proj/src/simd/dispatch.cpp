#include <cstdlib>
#include <stdexcept>
#include <string>

#include "zsum/simd/kernels.hpp"

namespace zsum::simd {

#if defined(ZSUM_HAVE_X86_KERNELS)
namespace avx2 {
void translate_or(std::uint8_t*, const std::uint8_t*, const std::uint16_t*, std::size_t);
void translate_min_inc(std::uint8_t*, const std::uint8_t*, const std::uint16_t*, std::size_t);
std::size_t count_nonzero(const std::uint8_t*, std::size_t);
}  // namespace avx2
namespace avx512 {
void translate_or(std::uint8_t*, const std::uint8_t*, const std::uint16_t*, std::size_t);
void translate_min_inc(std::uint8_t*, const std::uint8_t*, const std::uint16_t*, std::size_t);
std::size_t count_nonzero(const std::uint8_t*, std::size_t);
}  // namespace avx512
#endif

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::avx512: return "avx512";
  }
  return "unknown";
}

bool compiled(Isa isa) {
#if defined(ZSUM_HAVE_X86_KERNELS)
  (void)isa;
  return true;
#else
  return isa == Isa::scalar;
#endif
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
#if defined(__x86_64__) || defined(__i386__)
    case Isa::avx2: return __builtin_cpu_supports("avx2");
    case Isa::avx512:
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("avx512f") &&
             __builtin_cpu_supports("avx512bw") && __builtin_cpu_supports("avx512vbmi");
#endif
    default: return false;
  }
}

const Kernels& kernels_for(Isa isa) {
  if (!compiled(isa) || !cpu_supports(isa))
    throw std::invalid_argument("kernel variant " + std::string(isa_name(isa)) + " is not usable here");
#if defined(ZSUM_HAVE_X86_KERNELS)
  static const Kernels k_avx2{Isa::avx2, "avx2", avx2::translate_or, avx2::translate_min_inc, avx2::count_nonzero};
  static const Kernels k_avx512{Isa::avx512, "avx512", avx512::translate_or, avx512::translate_min_inc,
                                avx512::count_nonzero};
  if (isa == Isa::avx2) return k_avx2;
  if (isa == Isa::avx512) return k_avx512;
#endif
  return scalar_kernels();
}

std::vector<Isa> usable_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512})
    if (compiled(isa) && cpu_supports(isa)) out.push_back(isa);
  return out;
}

const Kernels& active() {
  static const Kernels& chosen = [] () -> const Kernels& {
    if (const char* env = std::getenv("ZSUM_ISA")) {
      std::string want(env);
      for (Isa isa : usable_isas())
        if (isa_name(isa) == want) return kernels_for(isa);
    }
    return kernels_for(usable_isas().back());
  }();
  return chosen;
}

}  // namespace zsum::simd
