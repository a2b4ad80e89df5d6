#pragma once

#include <utility>
#include <vector>

#include "spinsim/dense.hpp"
#include "spinsim/exact_diag.hpp"
#include "spinsim/spin_system.hpp"

namespace spinsim {

/// Total transverse spin operators (sum_k S_kx, sum_k S_ky) in the sigma/2
/// convention, as dense 2^n matrices.
std::pair<DenseMatrix, DenseMatrix> collective_spin_operators(int n_spins);

struct FidSignal {
  std::vector<cplx> points;
  double spectral_width_hz = 0.0;  // sample j sits at t_j = j / SW
  double t2_seconds = 0.0;         // exponential apodization; 0 = none
};

struct FidOptions {
  double t2_seconds = 0.0;
  /// Compatibility switch: read the time axis literally as t_j = j * SW
  /// instead of the dwell-time t_j = j / SW.
  bool literal_time_axis = false;
};

/// Time-domain signal Tr(T(j) sum S_kx) + i Tr(T(j) sum S_ky) with
/// T(j) = e^{-iHt_j} (sum S_kx) e^{+iHt_j} evaluated from the
/// eigendecomposition (elementwise exponentials of the eigenvalues).
FidSignal compute_fid(const EigenDecomposition& decomp, int d, double spectral_width_hz,
                      const FidOptions& options = {});

struct Spectrum {
  std::vector<double> hz;         // ascending, fftshifted over [-SW/2, SW/2)
  std::vector<double> ppm;        // hz / field_mhz + offset_ppm
  std::vector<double> intensity;  // real part of the DFT (zero-phase convention)
};

/// Discrete Fourier transform of the FID. Direct O(d^2) evaluation by
/// default; `use_fft` enables the radix-2 path for power-of-two lengths.
Spectrum fid_to_spectrum(const FidSignal& fid, const SpinSystemSpec& spec,
                         bool use_fft = false);

/// Local maxima above `threshold`, ppm-descending (NMR convention).
std::vector<std::pair<double, double>> peak_list(const Spectrum& s, double threshold);

}  // namespace spinsim
