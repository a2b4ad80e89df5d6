#pragma once

#include <vector>

#include "spinsim/dense.hpp"

namespace spinsim {

/// Full spectrum of a Hermitian matrix, eigenvalues ascending, eigenvectors
/// as unit-norm columns of `vectors` matching the eigenvalue order.
struct EigenDecomposition {
  std::vector<double> eigenvalues;  // rad/s for spin Hamiltonians
  DenseMatrix vectors;

  DenseMatrix reconstruct() const;
};

/// Classical oracle: cyclic Jacobi rotations on the real-symmetric part.
/// The spin Hamiltonians produced here are real symmetric (Y appears only in
/// YY pairs); inputs with a non-negligible imaginary part are rejected.
/// Residual contract: ||H v - lambda v|| <= 1e-8 * ||H|| per pair.
EigenDecomposition eigen_decompose(const DenseMatrix& h);

/// LU determinant with partial pivoting; exact for triangular inputs.
cplx determinant(const DenseMatrix& h);

/// True iff |det(H - lambda I)| <= tol * scale, with scale the product of
/// row norms of H - lambda I (a Hadamard-bound normalization that keeps the
/// test meaningful for large shifted matrices).
bool verify_eigenvalue(const DenseMatrix& h, double lambda, double tol = 1e-6);

}  // namespace spinsim
