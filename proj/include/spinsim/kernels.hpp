#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace spinsim::kernels {

using cplx = std::complex<double>;

/// Hot statevector loops, provided as a scalar reference implementation and
/// (on x86-64) an AVX2 variant selected at startup. All entries operate on
/// an amplitude array of length `n` (a power of two). `bitpos` counts from
/// the least significant basis-index bit.
struct Ops {
  const char* name;

  /// In-place 2x2 unitary on the qubit at `bitpos`; m is row-major
  /// {m00, m01, m10, m11}.
  void (*apply_1q)(cplx* amp, std::size_t n, int bitpos, const cplx* m);

  /// Diagonal single-qubit gate: amplitudes with the bit clear scale by f0,
  /// with the bit set by f1.
  void (*apply_diag1)(cplx* amp, std::size_t n, int bitpos, cplx f0, cplx f1);

  /// Multiplies amplitudes whose index contains every bit of `mask` by f
  /// (controlled-phase family).
  void (*apply_phase_masked)(cplx* amp, std::size_t n, std::uint64_t mask, cplx f);

  /// Swaps amp[i] and amp[i | 1<<tbit] for every i with the target bit clear
  /// and all bits of ctrl_mask set (X when ctrl_mask == 0, CNOT otherwise).
  void (*apply_swap_masked)(cplx* amp, std::size_t n, std::uint64_t ctrl_mask, int tbit);

  /// amp *= f.
  void (*scale)(cplx* amp, std::size_t n, cplx f);

  double (*norm_sq)(const cplx* amp, std::size_t n);

  /// <x|y> = sum conj(x_i) y_i.
  cplx (*inner)(const cplx* x, const cplx* y, std::size_t n);

  /// sum_i (-1)^popcount(i & zmask) |amp_i|^2 (diagonal Pauli expectation).
  double (*expect_diag_zmask)(const cplx* amp, std::size_t n, std::uint64_t zmask);
};

const Ops& scalar_ops();

/// Lookup by name ("scalar", "avx2"); nullptr when the variant is not
/// compiled in or the CPU lacks support.
const Ops* ops_by_name(std::string_view name);

/// Selected once per process: SPINSIM_KERNELS environment override, else the
/// best variant the CPU supports.
const Ops& active_ops();

}  // namespace spinsim::kernels
