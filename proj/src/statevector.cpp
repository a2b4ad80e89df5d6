#include "spinsim/statevector.hpp"

#include <bit>
#include <cmath>

#include "spinsim/errors.hpp"
#include "spinsim/kernels.hpp"

namespace spinsim {

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits) {
  if (n_qubits < 1 || n_qubits > 28)
    throw input_error("StateVector: qubit count out of range");
  amps_[0] = 1.0;
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.size()) throw input_error("StateVector::basis: index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<cplx> amps, bool renormalize) {
  if (amps.empty() || (amps.size() & (amps.size() - 1)) != 0)
    throw input_error("StateVector: amplitude count must be a power of two");
  StateVector s(std::bit_width(amps.size()) - 1);
  s.amps_ = std::move(amps);
  const double n2 = s.norm_sq();
  if (renormalize) {
    if (n2 <= 0.0) throw input_error("StateVector: cannot normalize the zero vector");
    s.normalize();
  } else if (std::abs(n2 - 1.0) > 1e-10) {
    throw input_error("StateVector: amplitudes are not normalized");
  }
  return s;
}

double StateVector::norm_sq() const {
  return kernels::active_ops().norm_sq(amps_.data(), amps_.size());
}

void StateVector::normalize() {
  const double n = std::sqrt(norm_sq());
  kernels::active_ops().scale(amps_.data(), amps_.size(), cplx{1.0 / n, 0.0});
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.size() != size()) throw input_error("StateVector::inner: size mismatch");
  return kernels::active_ops().inner(amps_.data(), other.amps_.data(), amps_.size());
}

}  // namespace spinsim
