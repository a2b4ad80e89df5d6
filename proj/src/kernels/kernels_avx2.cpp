// AVX2 statevector kernels. Two complex<double> per 256-bit lane; results
// match the scalar reference to within FMA rounding (the equivalence suite
// pins 1e-12). Falls back to the scalar path for sub-vector tails.

#include <immintrin.h>

#include <bit>

#include "spinsim/kernels.hpp"

namespace spinsim::kernels {

namespace {

// (z0, z1) * c for complex z lanes and one complex scalar c.
inline __m256d mul_cs(__m256d z, double cr, double ci) {
  const __m256d vr = _mm256_set1_pd(cr);
  const __m256d vi = _mm256_set1_pd(ci);
  const __m256d zs = _mm256_permute_pd(z, 0b0101);  // swap re/im
  return _mm256_fmaddsub_pd(z, vr, _mm256_mul_pd(zs, vi));
}

// Element-wise complex multiply of two lanes of complex values.
inline __m256d mul_cc(__m256d z, __m256d w) {
  const __m256d wr = _mm256_movedup_pd(w);
  const __m256d wi = _mm256_permute_pd(w, 0b1111);
  const __m256d zs = _mm256_permute_pd(z, 0b0101);
  return _mm256_fmaddsub_pd(z, wr, _mm256_mul_pd(zs, wi));
}

void a_apply_1q(cplx* amp, std::size_t n, int bitpos, const cplx* m) {
  double* d = reinterpret_cast<double*>(amp);
  const double m00r = m[0].real(), m00i = m[0].imag();
  const double m01r = m[1].real(), m01i = m[1].imag();
  const double m10r = m[2].real(), m10i = m[2].imag();
  const double m11r = m[3].real(), m11i = m[3].imag();

  if (bitpos == 0) {
    if (n < 4) {  // single-qubit state: one pair
      const cplx a0 = amp[0], a1 = amp[1];
      amp[0] = m[0] * a0 + m[1] * a1;
      amp[1] = m[2] * a0 + m[3] * a1;
      return;
    }
    // Pairs are adjacent; deinterleave two pairs per iteration.
    for (std::size_t i = 0; i < n; i += 4) {
      const __m256d v01 = _mm256_loadu_pd(d + 2 * i);
      const __m256d v23 = _mm256_loadu_pd(d + 2 * i + 4);
      const __m256d lo = _mm256_permute2f128_pd(v01, v23, 0x20);  // a0, a2
      const __m256d hi = _mm256_permute2f128_pd(v01, v23, 0x31);  // a1, a3
      const __m256d nlo = _mm256_add_pd(mul_cs(lo, m00r, m00i), mul_cs(hi, m01r, m01i));
      const __m256d nhi = _mm256_add_pd(mul_cs(lo, m10r, m10i), mul_cs(hi, m11r, m11i));
      _mm256_storeu_pd(d + 2 * i, _mm256_permute2f128_pd(nlo, nhi, 0x20));
      _mm256_storeu_pd(d + 2 * i + 4, _mm256_permute2f128_pd(nlo, nhi, 0x31));
    }
    return;
  }

  const std::size_t bit = std::size_t{1} << bitpos;
  for (std::size_t base = 0; base < n; base += 2 * bit) {
    for (std::size_t k = 0; k < bit; k += 2) {
      double* plo = d + 2 * (base + k);
      double* phi = d + 2 * (base + k + bit);
      const __m256d lo = _mm256_loadu_pd(plo);
      const __m256d hi = _mm256_loadu_pd(phi);
      _mm256_storeu_pd(plo, _mm256_add_pd(mul_cs(lo, m00r, m00i), mul_cs(hi, m01r, m01i)));
      _mm256_storeu_pd(phi, _mm256_add_pd(mul_cs(lo, m10r, m10i), mul_cs(hi, m11r, m11i)));
    }
  }
}

void a_apply_diag1(cplx* amp, std::size_t n, int bitpos, cplx f0, cplx f1) {
  double* d = reinterpret_cast<double*>(amp);
  if (bitpos == 0) {
    if (n < 2) return;
    const __m256d w = _mm256_setr_pd(f0.real(), f0.imag(), f1.real(), f1.imag());
    for (std::size_t i = 0; i < n; i += 2)
      _mm256_storeu_pd(d + 2 * i, mul_cc(_mm256_loadu_pd(d + 2 * i), w));
    return;
  }
  const std::size_t bit = std::size_t{1} << bitpos;
  for (std::size_t base = 0; base < n; base += 2 * bit) {
    for (std::size_t k = 0; k < bit; k += 2) {
      double* plo = d + 2 * (base + k);
      double* phi = d + 2 * (base + k + bit);
      _mm256_storeu_pd(plo, mul_cs(_mm256_loadu_pd(plo), f0.real(), f0.imag()));
      _mm256_storeu_pd(phi, mul_cs(_mm256_loadu_pd(phi), f1.real(), f1.imag()));
    }
  }
}

void a_apply_phase_masked(cplx* amp, std::size_t n, std::uint64_t mask, cplx f) {
  double* d = reinterpret_cast<double*>(amp);
  const double fr = f.real(), fi = f.imag();
  if (mask == 0) {
    scalar_ops().apply_phase_masked(amp, n, mask, f);
    return;
  }
  const std::uint64_t run = std::uint64_t{1} << std::countr_zero(mask);
  if (run < 2) {
    scalar_ops().apply_phase_masked(amp, n, mask, f);
    return;
  }
  for (std::uint64_t s = mask; s < n; s = (s + run) | mask)
    for (std::uint64_t k = 0; k < run; k += 2) {
      double* p = d + 2 * (s + k);
      _mm256_storeu_pd(p, mul_cs(_mm256_loadu_pd(p), fr, fi));
    }
}

void a_apply_swap_masked(cplx* amp, std::size_t n, std::uint64_t ctrl_mask, int tbit) {
  const std::size_t bit = std::size_t{1} << tbit;
  // Controls below the target break the contiguity of the low run.
  if (tbit == 0 || (ctrl_mask & (bit - 1)) != 0) {
    scalar_ops().apply_swap_masked(amp, n, ctrl_mask, tbit);
    return;
  }
  double* d = reinterpret_cast<double*>(amp);
  for (std::size_t base = 0; base < n; base += 2 * bit) {
    if ((base & ctrl_mask) != ctrl_mask) continue;
    for (std::size_t k = 0; k < bit; k += 2) {
      double* plo = d + 2 * (base + k);
      double* phi = d + 2 * (base + k + bit);
      const __m256d lo = _mm256_loadu_pd(plo);
      const __m256d hi = _mm256_loadu_pd(phi);
      _mm256_storeu_pd(plo, hi);
      _mm256_storeu_pd(phi, lo);
    }
  }
}

void a_scale(cplx* amp, std::size_t n, cplx f) {
  double* d = reinterpret_cast<double*>(amp);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    _mm256_storeu_pd(d + 2 * i, mul_cs(_mm256_loadu_pd(d + 2 * i), f.real(), f.imag()));
  for (; i < n; ++i) amp[i] *= f;
}

double a_norm_sq(const cplx* amp, std::size_t n) {
  const double* d = reinterpret_cast<const double*>(amp);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(d + 2 * i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double buf[4];
  _mm256_storeu_pd(buf, acc);
  double s = buf[0] + buf[1] + buf[2] + buf[3];
  for (; i < n; ++i) s += std::norm(amp[i]);
  return s;
}

cplx a_inner(const cplx* x, const cplx* y, std::size_t n) {
  const double* dx = reinterpret_cast<const double*>(x);
  const double* dy = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(dx + 2 * i);
    const __m256d vy = _mm256_loadu_pd(dy + 2 * i);
    // conj(x)*y: re = xr*yr + xi*yi, im = xr*yi - xi*yr
    acc_re = _mm256_fmadd_pd(vx, vy, acc_re);
    const __m256d vxs = _mm256_permute_pd(vx, 0b0101);
    acc_im = _mm256_fmadd_pd(vxs, vy, acc_im);
  }
  double bre[4], bim[4];
  _mm256_storeu_pd(bre, acc_re);
  _mm256_storeu_pd(bim, acc_im);
  // acc_re lanes hold (xr*yr, xi*yi) pairs; acc_im lanes hold (xi*yr, xr*yi)
  double re = bre[0] + bre[1] + bre[2] + bre[3];
  double im = (bim[1] - bim[0]) + (bim[3] - bim[2]);
  cplx s{re, im};
  for (; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double a_expect_diag_zmask(const cplx* amp, std::size_t n, std::uint64_t zmask) {
  return scalar_ops().expect_diag_zmask(amp, n, zmask);
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops = {
      "avx2",        a_apply_1q, a_apply_diag1,      a_apply_phase_masked,
      a_apply_swap_masked, a_scale,    a_norm_sq,          a_inner,
      a_expect_diag_zmask,
  };
  return ops;
}

}  // namespace spinsim::kernels
