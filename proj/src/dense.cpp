#include "spinsim/dense.hpp"

#include <cmath>
#include <stdexcept>

namespace spinsim {

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

bool DenseMatrix::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs(at(r, c) - std::conj(at(c, r))) > tol) return false;
  return true;
}

DenseMatrix DenseMatrix::adjoint() const {
  DenseMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
  DenseMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const cplx v = at(r, k);
      if (v == cplx{}) continue;
      for (std::size_t c = 0; c < dim_; ++c) m.at(r, c) += v * rhs.at(k, c);
    }
  }
  return m;
}

DenseMatrix DenseMatrix::operator+(const DenseMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
  DenseMatrix m(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += rhs.a_[i];
  return m;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
  DenseMatrix m(*this);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] -= rhs.a_[i];
  return m;
}

DenseMatrix& DenseMatrix::operator*=(cplx s) {
  for (auto& v : a_) v *= s;
  return *this;
}

std::vector<cplx> DenseMatrix::apply(const std::vector<cplx>& v) const {
  if (v.size() != dim_) throw std::invalid_argument("DenseMatrix: vector size mismatch");
  std::vector<cplx> out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    cplx acc{};
    const cplx* row = a_.data() + r * dim_;
    for (std::size_t c = 0; c < dim_; ++c) acc += row[c] * v[c];
    out[r] = acc;
  }
  return out;
}

cplx DenseMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < dim_; ++i) t += at(i, i);
  return t;
}

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double DenseMatrix::max_abs_diff(const DenseMatrix& rhs) const {
  if (dim_ != rhs.dim_) throw std::invalid_argument("DenseMatrix: dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - rhs.a_[i]));
  return m;
}

}  // namespace spinsim
