#include "spinsim/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "spinsim/errors.hpp"

namespace spinsim {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

std::pair<DenseMatrix, DenseMatrix> collective_spin_operators(int n_spins) {
  if (n_spins < 1 || n_spins > 12)
    throw resource_error("collective_spin_operators: spin count outside the dense cap");
  const std::size_t dim = std::size_t{1} << n_spins;
  DenseMatrix sx(dim), sy(dim);
  for (int k = 0; k < n_spins; ++k) {
    const std::size_t bit = std::size_t{1} << (n_spins - 1 - k);  // qubit k = MSB-first
    for (std::size_t col = 0; col < dim; ++col) {
      const std::size_t row = col ^ bit;
      sx.at(row, col) += 0.5;
      // sigma_y / 2: entry is +i/2 when flipping 0 -> 1, -i/2 when 1 -> 0
      sy.at(row, col) += (col & bit) ? cplx{0, -0.5} : cplx{0, 0.5};
    }
  }
  return {std::move(sx), std::move(sy)};
}

FidSignal compute_fid(const EigenDecomposition& decomp, int d, double spectral_width_hz,
                      const FidOptions& options) {
  if (d < 2) throw input_error("compute_fid: need at least two points");
  if (!(spectral_width_hz > 0.0)) throw input_error("compute_fid: spectral width must be positive");
  const std::size_t dim = decomp.eigenvalues.size();
  int n_spins = 0;
  while ((std::size_t{1} << n_spins) < dim) ++n_spins;
  if ((std::size_t{1} << n_spins) != dim)
    throw input_error("compute_fid: eigendecomposition dimension is not a power of two");

  auto [sx, sy] = collective_spin_operators(n_spins);
  const DenseMatrix vdag = decomp.vectors.adjoint();
  const DenseMatrix sx_e = vdag * sx * decomp.vectors;  // eigenbasis
  const DenseMatrix sy_e = vdag * sy * decomp.vectors;

  // FID(j) = sum_{a,b} Sx'_{ab} (Sx' + i Sy')_{ba} e^{-i (lam_a - lam_b) t_j}:
  // collapse to a line list before the time loop.
  struct Line {
    double omega;  // rad/s
    cplx amp;
  };
  std::vector<Line> lines;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const cplx amp = sx_e.at(a, b) * (sx_e.at(b, a) + cplx{0, 1} * sy_e.at(b, a));
      if (std::abs(amp) < 1e-14) continue;
      lines.push_back({decomp.eigenvalues[a] - decomp.eigenvalues[b], amp});
    }

  FidSignal fid;
  fid.spectral_width_hz = spectral_width_hz;
  fid.t2_seconds = options.t2_seconds;
  fid.points.resize(d);
  for (int j = 0; j < d; ++j) {
    const double t = options.literal_time_axis ? j * spectral_width_hz
                                               : j / spectral_width_hz;
    cplx acc{};
    for (const auto& line : lines) acc += line.amp * std::polar(1.0, -line.omega * t);
    if (options.t2_seconds > 0.0) acc *= std::exp(-t / options.t2_seconds);
    fid.points[j] = acc;
  }
  return fid;
}

namespace {

// In-place radix-2 DFT with sign -1 (forward).
void fft_radix2(std::vector<cplx>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -kTwoPi / static_cast<double>(len);
    const cplx wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      cplx w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

Spectrum fid_to_spectrum(const FidSignal& fid, const SpinSystemSpec& spec, bool use_fft) {
  const std::size_t d = fid.points.size();
  if (d < 2) throw input_error("fid_to_spectrum: FID too short");
  const double sw = fid.spectral_width_hz;

  Spectrum out;
  out.hz.resize(d);
  out.ppm.resize(d);
  out.intensity.resize(d);
  const double half = static_cast<double>(d) / 2.0;
  for (std::size_t k = 0; k < d; ++k) {
    out.hz[k] = (static_cast<double>(k) - half) * sw / static_cast<double>(d);
    out.ppm[k] = out.hz[k] / spec.field_mhz + spec.offset_ppm;
  }

  // X_k = sum_j fid_j e^{-i 2 pi (k - d/2) j / d}; the (-1)^j factor folds
  // the fftshift into the input.
  const bool pow2 = (d & (d - 1)) == 0;
  if (use_fft && pow2) {
    std::vector<cplx> work(fid.points);
    for (std::size_t j = 1; j < d; j += 2) work[j] = -work[j];
    fft_radix2(work);
    for (std::size_t k = 0; k < d; ++k) out.intensity[k] = work[k].real();
    return out;
  }

  for (std::size_t k = 0; k < d; ++k) {
    const double ang = -kTwoPi * (static_cast<double>(k) - half) / static_cast<double>(d);
    const cplx step = std::polar(1.0, ang);
    cplx rot{1.0, 0.0};
    cplx acc{};
    for (std::size_t j = 0; j < d; ++j) {
      acc += fid.points[j] * rot;
      rot *= step;
    }
    out.intensity[k] = acc.real();
  }
  return out;
}

std::vector<std::pair<double, double>> peak_list(const Spectrum& s, double threshold) {
  if (!(threshold > 0.0)) throw input_error("peak_list: threshold must be positive");
  std::vector<std::pair<double, double>> peaks;
  for (std::size_t i = 1; i + 1 < s.intensity.size(); ++i) {
    const double v = s.intensity[i];
    if (v > threshold && v > s.intensity[i - 1] && v > s.intensity[i + 1])
      peaks.emplace_back(s.ppm[i], v);
  }
  std::sort(peaks.begin(), peaks.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  return peaks;
}

}  // namespace spinsim
