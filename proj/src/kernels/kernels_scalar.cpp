#include <bit>

#include "spinsim/kernels.hpp"

namespace spinsim::kernels {

namespace {

void s_apply_1q(cplx* amp, std::size_t n, int bitpos, const cplx* m) {
  const std::size_t bit = std::size_t{1} << bitpos;
  const std::size_t low_mask = bit - 1;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t i0 = ((i & ~low_mask) << 1) | (i & low_mask);
    const std::size_t i1 = i0 | bit;
    const cplx a0 = amp[i0], a1 = amp[i1];
    amp[i0] = m[0] * a0 + m[1] * a1;
    amp[i1] = m[2] * a0 + m[3] * a1;
  }
}

void s_apply_diag1(cplx* amp, std::size_t n, int bitpos, cplx f0, cplx f1) {
  const std::size_t bit = std::size_t{1} << bitpos;
  for (std::size_t i = 0; i < n; ++i) amp[i] *= (i & bit) ? f1 : f0;
}

void s_apply_phase_masked(cplx* amp, std::size_t n, std::uint64_t mask, cplx f) {
  if (mask == 0) {
    for (std::size_t i = 0; i < n; ++i) amp[i] *= f;
    return;
  }
  const std::uint64_t run = std::uint64_t{1} << std::countr_zero(mask);
  for (std::uint64_t s = mask; s < n; s = (s + run) | mask)
    for (std::uint64_t k = 0; k < run; ++k) amp[s + k] *= f;
}

void s_apply_swap_masked(cplx* amp, std::size_t n, std::uint64_t ctrl_mask, int tbit) {
  const std::size_t bit = std::size_t{1} << tbit;
  const std::size_t low_mask = bit - 1;
  for (std::size_t i = 0; i < n / 2; ++i) {
    const std::size_t i0 = ((i & ~low_mask) << 1) | (i & low_mask);
    if ((i0 & ctrl_mask) != ctrl_mask) continue;
    std::swap(amp[i0], amp[i0 | bit]);
  }
}

void s_scale(cplx* amp, std::size_t n, cplx f) {
  for (std::size_t i = 0; i < n; ++i) amp[i] *= f;
}

double s_norm_sq(const cplx* amp, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += std::norm(amp[i]);
  return s;
}

cplx s_inner(const cplx* x, const cplx* y, std::size_t n) {
  cplx s{};
  for (std::size_t i = 0; i < n; ++i) s += std::conj(x[i]) * y[i];
  return s;
}

double s_expect_diag_zmask(const cplx* amp, std::size_t n, std::uint64_t zmask) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double p = std::norm(amp[i]);
    s += (std::popcount(i & zmask) & 1) ? -p : p;
  }
  return s;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops = {
      "scalar",      s_apply_1q, s_apply_diag1,      s_apply_phase_masked,
      s_apply_swap_masked, s_scale,    s_norm_sq,          s_inner,
      s_expect_diag_zmask,
  };
  return ops;
}

}  // namespace spinsim::kernels
