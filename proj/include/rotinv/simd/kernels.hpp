#pragma once

// Complex BLAS-1 and CSR kernels behind a runtime-selected table.
//
// Every kernel exists as a portable scalar reference and, on x86-64, an
// AVX2+FMA variant. The active table is chosen once from CPUID; setting
// ROTINV_ISA=scalar in the environment pins the reference path.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace rotinv::simd {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  const char* name;
  // sum_i conj(x_i) * y_i
  Complex (*dot)(const Complex* x, const Complex* y, std::size_t n);
  // y += a * x
  void (*axpy)(Complex a, const Complex* x, Complex* y, std::size_t n);
  double (*norm_sq)(const Complex* x, std::size_t n);
  void (*scale)(Complex a, Complex* x, std::size_t n);
  // y = A x for a compressed row-major matrix
  void (*csr_matvec)(std::size_t rows, const int* row_ptr, const int* cols,
                     const Complex* vals, const Complex* x, Complex* y);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports(Isa isa);

/// The table used by the library.
const KernelTable& kernels();

/// Overrides the runtime choice. Throws std::invalid_argument when the CPU
/// or the build lacks `isa`.
void select_isa(Isa isa);

Isa active_isa();

const char* isa_name(Isa isa);

}  // namespace rotinv::simd
