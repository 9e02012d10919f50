#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rotinv/simd/kernels.hpp"

namespace rotinv::simd {

#ifndef ROTINV_HAVE_AVX2_KERNELS
const KernelTable* avx2_kernels() { return nullptr; }
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(__x86_64__) && defined(ROTINV_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

namespace {

const KernelTable* detect() {
  if (const char* env = std::getenv("ROTINV_ISA"); env && std::string_view(env) == "scalar") {
    return &scalar_kernels();
  }
  if (cpu_supports(Isa::avx2)) return avx2_kernels();
  return &scalar_kernels();
}

std::atomic<const KernelTable*>& active_table() {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace

const KernelTable& kernels() { return *active_table().load(std::memory_order_acquire); }

void select_isa(Isa isa) {
  if (!cpu_supports(isa)) {
    throw std::invalid_argument(std::string("instruction set not available: ") + isa_name(isa));
  }
  active_table().store(isa == Isa::avx2 ? avx2_kernels() : &scalar_kernels(),
                       std::memory_order_release);
}

Isa active_isa() { return kernels().isa; }

}  // namespace rotinv::simd
