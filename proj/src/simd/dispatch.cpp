#include <atomic>
#include <string>

#include "dgldpc/error.hpp"
#include "dgldpc/simd/moments.hpp"

namespace dgldpc::simd {

namespace {

Isa detect_best() {
#ifdef DGLDPC_HAVE_AVX2_KERNEL
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return Isa::avx2;
  }
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect_best()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return detect_best() == Isa::avx2;
  }
  return false;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw DomainError("instruction set '" + std::string(to_string(isa)) +
                      "' is not available on this CPU");
  }
  active().store(isa, std::memory_order_relaxed);
}

Moments moments(const MonomialSpan& terms, double lx, double ly) {
#ifdef DGLDPC_HAVE_AVX2_KERNEL
  if (active_isa() == Isa::avx2) return moments_avx2(terms, lx, ly);
#endif
  return moments_scalar(terms, lx, ly);
}

}  // namespace dgldpc::simd
