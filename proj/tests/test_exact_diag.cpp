#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spinsim/errors.hpp"
#include "spinsim/exact_diag.hpp"
#include "test_helpers.hpp"

using namespace spinsim;

namespace {

DenseMatrix reference_sulfanol_matrix() {
  DenseMatrix m(4);
  m.at(0, 0) = 1062.215;
  m.at(1, 1) = -4970.921;
  m.at(2, 2) = 4963.633;
  m.at(3, 3) = -1054.927;
  m.at(1, 2) = 7.288;
  m.at(2, 1) = 7.288;
  return m;
}

}  // namespace

TEST_CASE("identity decomposes trivially") {
  const auto dec = eigen_decompose(DenseMatrix::identity(8));
  for (double lam : dec.eigenvalues) CHECK(lam == doctest::Approx(1.0));
  CHECK(dec.reconstruct().max_abs_diff(DenseMatrix::identity(8)) < 1e-12);
}

TEST_CASE("symmetric swap block") {
  DenseMatrix m(2);
  m.at(0, 1) = 2.5;
  m.at(1, 0) = 2.5;
  const auto dec = eigen_decompose(m);
  CHECK(dec.eigenvalues[0] == doctest::Approx(-2.5));
  CHECK(dec.eigenvalues[1] == doctest::Approx(2.5));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(std::abs(dec.vectors.at(0, 0).real()) - inv_sqrt2) < 1e-12);
}

TEST_CASE("reference sulfanol matrix: anchored eigenvalues and eigenvectors") {
  const auto dec = eigen_decompose(reference_sulfanol_matrix());
  CHECK(dec.eigenvalues[0] == doctest::Approx(-4970.9263).epsilon(1e-7));
  CHECK(dec.eigenvalues[1] == doctest::Approx(-1054.927).epsilon(1e-7));
  CHECK(dec.eigenvalues[2] == doctest::Approx(1062.215).epsilon(1e-7));
  CHECK(dec.eigenvalues[3] == doctest::Approx(4963.6383).epsilon(1e-7));

  // Anchored eigenvectors, compared gauge-aware: per-component magnitudes at
  // 1e-3 plus near-unit overlap. (The anchored small components are 7.3e-4 in
  // magnitude; one anchored sign is inconsistent with orthogonality, so the
  // raw signed comparison is not meaningful there.)
  const double anchors[4][4] = {{0, 0.99999, -0.00073, 0},
                               {0, 0, 0, 1},
                               {1, 0, 0, 0},
                               {0, -0.00073, 0.99999, 0}};
  for (int k = 0; k < 4; ++k) {
    double dot = 0.0;
    for (int r = 0; r < 4; ++r) dot += anchors[k][r] * dec.vectors.at(r, k).real();
    CHECK(std::abs(dot) > 1.0 - 1e-3);
    for (int r = 0; r < 4; ++r)
      CHECK(std::abs(std::abs(dec.vectors.at(r, k).real()) - std::abs(anchors[k][r])) < 1e-3);
  }

  // Frozen oracle values for the nontrivial block (exact to solver precision).
  CHECK(std::abs(dec.vectors.at(1, 0).real()) == doctest::Approx(0.999999731).epsilon(1e-8));
  CHECK(std::abs(dec.vectors.at(2, 0).real()) == doctest::Approx(7.336005e-4).epsilon(1e-5));
  // Relative sign within each eigenvector: the small component of v0 and the
  // small component of v3 must have opposite signs for orthogonality.
  const double s0 = dec.vectors.at(1, 0).real() * dec.vectors.at(2, 0).real();
  const double s3 = dec.vectors.at(1, 3).real() * dec.vectors.at(2, 3).real();
  CHECK(s0 * s3 < 0.0);
}

TEST_CASE("residuals, reconstruction, trace and determinant identities") {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 1 + static_cast<int>(seed % 5);
    const std::size_t dim = std::size_t{1} << n;
    Rng rng(9000 + seed);
    DenseMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = r; c < dim; ++c) {
        const double v = rng.normal();
        m.at(r, c) = v;
        m.at(c, r) = v;
      }
    const auto dec = eigen_decompose(m);

    const double mnorm = m.frobenius_norm();
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<cplx> v(dim);
      for (std::size_t r = 0; r < dim; ++r) v[r] = dec.vectors.at(r, k);
      const auto hv = m.apply(v);
      double resid = 0.0;
      for (std::size_t r = 0; r < dim; ++r)
        resid += std::norm(hv[r] - dec.eigenvalues[k] * v[r]);
      CHECK(std::sqrt(resid) <= 1e-8 * std::max(mnorm, 1.0));
    }

    CHECK(dec.reconstruct().max_abs_diff(m) <= 1e-8 * std::max(mnorm, 1.0));

    double lam_sum = 0.0, lam_prod = 1.0;
    for (double lam : dec.eigenvalues) {
      lam_sum += lam;
      lam_prod *= lam;
    }
    CHECK(lam_sum == doctest::Approx(m.trace().real()).epsilon(1e-8));
    const double det = determinant(m).real();
    CHECK(det == doctest::Approx(lam_prod).epsilon(1e-6));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  DenseMatrix m(2);
  m.at(0, 1) = 1.0;
  CHECK_THROWS_AS(eigen_decompose(m), input_error);
}

TEST_CASE("determinant basics") {
  CHECK(determinant(DenseMatrix::identity(8)) == cplx{1.0, 0.0});

  DenseMatrix d(2);
  d.at(0, 0) = 2;
  d.at(1, 1) = 3;
  CHECK(determinant(d).real() == doctest::Approx(6.0));

  // upper-triangular: exact product of the diagonal
  DenseMatrix tri(3);
  tri.at(0, 0) = 2;
  tri.at(0, 1) = 5;
  tri.at(0, 2) = -1;
  tri.at(1, 1) = -4;
  tri.at(1, 2) = 0.5;
  tri.at(2, 2) = 0.25;
  CHECK(determinant(tri).real() == doctest::Approx(-2.0));
}

TEST_CASE("verify_eigenvalue") {
  const auto h = reference_sulfanol_matrix();
  CHECK(verify_eigenvalue(h, -4970.9263, 1e-6));
  CHECK(verify_eigenvalue(h, 4963.6383, 1e-6));
  CHECK_FALSE(verify_eigenvalue(h, 0.0, 1e-6));
  CHECK_FALSE(verify_eigenvalue(h, -2000.0, 1e-6));

  const auto dec = eigen_decompose(h);
  for (double lam : dec.eigenvalues) CHECK(verify_eigenvalue(h, lam, 1e-6));
}
