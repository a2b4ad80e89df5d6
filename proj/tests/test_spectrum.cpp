#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <bit>

#include "doctest.h"
#include "oracles.hpp"
#include "spinsim/errors.hpp"
#include "spinsim/exact_diag.hpp"
#include "spinsim/spectrum.hpp"
#include "test_helpers.hpp"

using namespace spinsim;

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

TEST_CASE("collective spin operators") {
  SUBCASE("single spin is sigma/2") {
    auto [sx, sy] = collective_spin_operators(1);
    CHECK(sx.at(0, 1) == cplx{0.5, 0});
    CHECK(sx.at(1, 0) == cplx{0.5, 0});
    CHECK(sy.at(0, 1) == cplx{0, -0.5});
    CHECK(sy.at(1, 0) == cplx{0, 0.5});
  }
  SUBCASE("two spins: single-flip entries of 1/2, Hermitian, traceless") {
    auto [sx, sy] = collective_spin_operators(2);
    int nonzero = 0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (std::abs(sx.at(r, c)) > 1e-14) {
          CHECK(sx.at(r, c).real() == doctest::Approx(0.5));
          CHECK(std::popcount(static_cast<unsigned>(r ^ c)) == 1);
          ++nonzero;
        }
    CHECK(nonzero == 8);
    CHECK(sx.is_hermitian());
    CHECK(sy.is_hermitian());
    CHECK(std::abs(sx.trace()) < 1e-14);
    CHECK(std::abs(sy.trace()) < 1e-14);
  }
  SUBCASE("matches the Pauli-sum realization") {
    for (int n : {1, 2, 3}) {
      PauliSum px(n), py(n);
      for (int q = 0; q < n; ++q) {
        std::string ax(n, 'I'), ay(n, 'I');
        ax[q] = 'X';
        ay[q] = 'Y';
        px.add(ax, {0.5, 0});
        py.add(ay, {0.5, 0});
      }
      auto [sx, sy] = collective_spin_operators(n);
      CHECK(sx.max_abs_diff(oracles::dense_of_sum(px)) < 1e-14);
      CHECK(sy.max_abs_diff(oracles::dense_of_sum(py)) < 1e-14);
    }
  }
}

TEST_CASE("fid of a static system is constant") {
  SpinSystemSpec spec;
  spec.shifts_ppm = {5.0};
  spec.field_mhz = 400.0;
  spec.offset_ppm = 5.0;
  const auto h = to_dense(build_hamiltonian(spec), 12);
  // zero Hamiltonian: decompose the explicit zero matrix
  DenseMatrix zero(2);
  const auto dec = eigen_decompose(zero);
  const auto fid = compute_fid(dec, 64, 100.0);
  for (const auto& p : fid.points) CHECK(std::abs(p - fid.points[0]) < 1e-12);
  (void)h;
}

TEST_CASE("single spin: one rotating tone at its offset frequency") {
  SpinSystemSpec spec;
  spec.shifts_ppm = {6.0};  // +1 ppm from the 5 ppm carrier at 400 MHz: +400 Hz
  spec.field_mhz = 400.0;
  spec.offset_ppm = 5.0;
  const auto dec = eigen_decompose(to_dense(build_hamiltonian(spec)));
  const double w = kTwoPi * 400.0;  // rad/s

  const int d = 256;
  const double sw = 2000.0;
  const auto fid = compute_fid(dec, d, sw);
  // FID(j) proportional to e^{i w t_j}
  const cplx base = fid.points[0];
  for (int j = 0; j < d; ++j) {
    const cplx expect = base * std::polar(1.0, w * j / sw);
    CHECK(std::abs(fid.points[j] - expect) < 1e-9 * std::abs(base) * d);
  }

  const auto spec_out = fid_to_spectrum(fid, spec);
  double best = 0.0, best_hz = 0.0;
  for (std::size_t k = 0; k < spec_out.hz.size(); ++k)
    if (spec_out.intensity[k] > best) {
      best = spec_out.intensity[k];
      best_hz = spec_out.hz[k];
    }
  CHECK(std::abs(best_hz - 400.0) <= sw / d + 1e-9);
}

TEST_CASE("fid from eigenpairs equals the dense-propagator oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const auto h = oracles::random_hermitian_sum(n, 4, 16000 + seed, 50.0, true);
    if (h.empty()) continue;
    const auto hd = to_dense(h);
    const auto dec = eigen_decompose(hd);
    const int d = 48;
    const double sw = 200.0;
    const auto fid = compute_fid(dec, d, sw);

    auto [sx, sy] = collective_spin_operators(n);
    const auto hd_oracle = oracles::dense_of_sum(h);
    for (int j = 0; j < d; ++j) {
      const double t = j / sw;
      const auto u = oracles::expm_i(hd_oracle, -t);       // e^{-iHt}
      const auto udag = oracles::expm_i(hd_oracle, t);     // e^{+iHt}
      const auto tj = u * sx * udag;
      const cplx expect = (tj * sx).trace() + cplx{0, 1} * (tj * sy).trace();
      CHECK(std::abs(fid.points[j] - expect) <
            1e-8 * std::max(1.0, std::abs(expect)) * 10);
    }
  }
}

TEST_CASE("spectrum gauge invariance under eigenvector sign flips") {
  const auto h = helpers::sulfanol_hamiltonian();
  const auto dec = eigen_decompose(to_dense(h));
  auto flipped = dec;
  for (std::size_t r = 0; r < 4; ++r) {
    flipped.vectors.at(r, 1) *= -1.0;
    flipped.vectors.at(r, 2) *= -1.0;
  }
  const int d = 512;
  const double sw = 2048.0;
  const auto fa = compute_fid(dec, d, sw);
  const auto fb = compute_fid(flipped, d, sw);
  for (int j = 0; j < d; ++j) CHECK(std::abs(fa.points[j] - fb.points[j]) < 1e-8);
}

TEST_CASE("direct and radix-2 transforms agree") {
  const auto h = helpers::sulfanol_hamiltonian();
  const auto dec = eigen_decompose(to_dense(h));
  const auto spec = helpers::sulfanol_spec();
  FidOptions fopts;
  fopts.t2_seconds = 0.5;
  const auto fid = compute_fid(dec, 1024, 2048.0, fopts);
  const auto a = fid_to_spectrum(fid, spec, false);
  const auto b = fid_to_spectrum(fid, spec, true);
  for (std::size_t k = 0; k < a.intensity.size(); ++k) {
    CHECK(a.hz[k] == doctest::Approx(b.hz[k]));
    CHECK(a.intensity[k] == doctest::Approx(b.intensity[k]).epsilon(1e-7));
  }
}

TEST_CASE("sulfanol spectrum: two doublets at the shifts, split by the coupling") {
  const auto spec = helpers::sulfanol_spec();
  const auto dec = eigen_decompose(to_dense(build_hamiltonian(spec)));
  const int d = 8192;
  const double sw = 2048.0;
  FidOptions fopts;
  fopts.t2_seconds = 0.7;
  const auto fid = compute_fid(dec, d, sw, fopts);
  const auto out = fid_to_spectrum(fid, spec, true);

  double max_int = 0.0;
  for (double v : out.intensity) max_int = std::max(max_int, v);
  const auto peaks = peak_list(out, 0.1 * max_int);
  REQUIRE(peaks.size() == 4);
  // ppm-descending: the 7.40 doublet first, then the 3.44 doublet
  const double bin_hz = sw / d;
  const double split_hi = (peaks[0].first - peaks[1].first) * spec.field_mhz;
  const double split_lo = (peaks[2].first - peaks[3].first) * spec.field_mhz;
  CHECK(std::abs(0.5 * (peaks[0].first + peaks[1].first) - 7.40) < 0.01);
  CHECK(std::abs(0.5 * (peaks[2].first + peaks[3].first) - 3.44) < 0.01);
  CHECK(std::abs(split_hi - 2.32) <= bin_hz + 1e-9);
  CHECK(std::abs(split_lo - 2.32) <= bin_hz + 1e-9);

  // peak frequencies are pairwise eigenvalue differences (within a bin)
  for (const auto& [ppm, inten] : peaks) {
    (void)inten;
    const double hz = (ppm - spec.offset_ppm) * spec.field_mhz;
    bool matched = false;
    for (double la : dec.eigenvalues)
      for (double lb : dec.eigenvalues)
        if (std::abs(hz - (la - lb) / kTwoPi) <= bin_hz) matched = true;
    CHECK(matched);
  }
}

TEST_CASE("peak_list basics") {
  Spectrum s;
  s.hz = {-2, -1, 0, 1, 2};
  s.ppm = {4.995, 4.9975, 5.0, 5.0025, 5.005};
  s.intensity = {0.0, 1.0, 0.2, 0.9, 0.0};
  const auto peaks = peak_list(s, 0.5);
  REQUIRE(peaks.size() == 2);
  CHECK(peaks[0].first == doctest::Approx(5.0025));  // ppm descending
  CHECK(peaks[1].first == doctest::Approx(4.9975));

  CHECK(peak_list(s, 2.0).empty());
  CHECK_THROWS_AS(peak_list(s, 0.0), input_error);
}

TEST_CASE("literal time-axis compatibility flag changes the sampling") {
  const auto h = helpers::sulfanol_hamiltonian();
  const auto dec = eigen_decompose(to_dense(h));
  FidOptions literal;
  literal.literal_time_axis = true;
  const auto a = compute_fid(dec, 16, 2048.0);
  const auto b = compute_fid(dec, 16, 2048.0, literal);
  CHECK(std::abs(a.points[1] - b.points[1]) > 1e-6);  // distinct conventions
  CHECK(std::abs(a.points[0] - b.points[0]) < 1e-12); // same t = 0 sample
}
