#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace spinsim {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Small utility type backing the
/// classical oracle and the Pauli-sum realization; dimensions stay at desk
/// scale (<= 2^12).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static DenseMatrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  cplx& at(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const cplx& at(std::size_t r, std::size_t c) const { return a_[r * dim_ + c]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  bool is_hermitian(double tol = 1e-9) const;

  DenseMatrix adjoint() const;
  DenseMatrix operator*(const DenseMatrix& rhs) const;
  DenseMatrix operator+(const DenseMatrix& rhs) const;
  DenseMatrix operator-(const DenseMatrix& rhs) const;
  DenseMatrix& operator*=(cplx s);

  std::vector<cplx> apply(const std::vector<cplx>& v) const;

  cplx trace() const;
  double frobenius_norm() const;
  double max_abs_diff(const DenseMatrix& rhs) const;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> a_;
};

}  // namespace spinsim
