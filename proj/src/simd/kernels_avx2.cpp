#include <immintrin.h>

#include "rotinv/simd/kernels.hpp"

// Two std::complex<double> fill one __m256d as [re0, im0, re1, im1].

namespace rotinv::simd {
namespace {

inline __m256d load2(const Complex* p) {
  return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

inline void store2(Complex* p, __m256d v) {
  _mm256_storeu_pd(reinterpret_cast<double*>(p), v);
}

// Lane-wise complex product a*b.
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

Complex dot_avx2(const Complex* x, const Complex* y, std::size_t n) {
  // re accumulates [xr*yr, xi*yi]; im accumulates [xi*yr, xr*yi].
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xa = load2(x + i), ya = load2(y + i);
    const __m256d xb = load2(x + i + 2), yb = load2(y + i + 2);
    re0 = _mm256_fmadd_pd(xa, ya, re0);
    re1 = _mm256_fmadd_pd(xb, yb, re1);
    im0 = _mm256_fmadd_pd(_mm256_permute_pd(xa, 0x5), ya, im0);
    im1 = _mm256_fmadd_pd(_mm256_permute_pd(xb, 0x5), yb, im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d xa = load2(x + i), ya = load2(y + i);
    re0 = _mm256_fmadd_pd(xa, ya, re0);
    im0 = _mm256_fmadd_pd(_mm256_permute_pd(xa, 0x5), ya, im0);
  }
  const __m256d re = _mm256_add_pd(re0, re1);
  const __m256d im = _mm256_add_pd(im0, im1);
  // imaginary part is the odd lanes minus the even lanes
  const __m256d sign = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
  double out_re = hsum(re);
  double out_im = hsum(_mm256_mul_pd(im, sign));
  for (; i < n; ++i) {
    out_re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    out_im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {out_re, out_im};
}

void axpy_avx2(Complex a, const Complex* x, Complex* y, std::size_t n) {
  const __m256d av = _mm256_set_pd(a.imag(), a.real(), a.imag(), a.real());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(y + i, _mm256_add_pd(load2(y + i), cmul(load2(x + i), av)));
  for (; i < n; ++i) y[i] += a * x[i];
}

double norm_sq_avx2(const Complex* x, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = load2(x + i), b = load2(x + i + 2);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d a = load2(x + i);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
  }
  double out = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) out += std::norm(x[i]);
  return out;
}

void scale_avx2(Complex a, Complex* x, std::size_t n) {
  const __m256d av = _mm256_set_pd(a.imag(), a.real(), a.imag(), a.real());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store2(x + i, cmul(load2(x + i), av));
  for (; i < n; ++i) x[i] *= a;
}

void csr_matvec_avx2(std::size_t rows, const int* row_ptr, const int* cols,
                     const Complex* vals, const Complex* x, Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    __m256d acc = _mm256_setzero_pd();
    int k = row_ptr[r];
    const int end = row_ptr[r + 1];
    for (; k + 2 <= end; k += 2) {
      const __m128d x0 = _mm_loadu_pd(xd + 2 * static_cast<std::size_t>(cols[k]));
      const __m128d x1 = _mm_loadu_pd(xd + 2 * static_cast<std::size_t>(cols[k + 1]));
      const __m256d xv = _mm256_insertf128_pd(_mm256_castpd128_pd256(x0), x1, 1);
      acc = _mm256_add_pd(acc, cmul(load2(vals + k), xv));
    }
    const __m128d folded =
        _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
    Complex sum{_mm_cvtsd_f64(folded), _mm_cvtsd_f64(_mm_unpackhi_pd(folded, folded))};
    if (k < end) sum += vals[k] * x[cols[k]];
    y[r] = sum;
  }
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{Isa::avx2,    "avx2",     &dot_avx2, &axpy_avx2,
                                 &norm_sq_avx2, &scale_avx2, &csr_matvec_avx2};
  return &table;
}

}  // namespace rotinv::simd
