#include "rotinv/simd/kernels.hpp"

namespace rotinv::simd {
namespace {

Complex dot_scalar(const Complex* x, const Complex* y, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

void axpy_scalar(Complex a, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double norm_sq_scalar(const Complex* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

void scale_scalar(Complex a, Complex* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void csr_matvec_scalar(std::size_t rows, const int* row_ptr, const int* cols,
                       const Complex* vals, const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    Complex acc{0.0, 0.0};
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k) acc += vals[k] * x[cols[k]];
    y[r] = acc;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar,  "scalar",     &dot_scalar, &axpy_scalar,
                                 &norm_sq_scalar, &scale_scalar, &csr_matvec_scalar};
  return table;
}

}  // namespace rotinv::simd
