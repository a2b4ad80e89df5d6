#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "spinsim/dense.hpp"

namespace spinsim {

/// 2^n complex amplitudes. Qubit 0 is the most significant basis-index bit
/// (the leftmost Kronecker factor), matching the spin-system convention used
/// throughout.
class StateVector {
 public:
  explicit StateVector(int n_qubits);  // |0...0>

  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Validates normalization within 1e-10 unless `renormalize` is set.
  static StateVector from_amplitudes(std::vector<cplx> amps, bool renormalize = false);

  int num_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }

  cplx* data() { return amps_.data(); }
  const cplx* data() const { return amps_.data(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  cplx& operator[](std::size_t i) { return amps_[i]; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  /// Bit position (from the LSB) carrying the given qubit.
  int bitpos(int qubit) const { return n_qubits_ - 1 - qubit; }

  double norm_sq() const;
  void normalize();

  cplx inner(const StateVector& other) const;  // <this|other>

 private:
  int n_qubits_ = 0;
  std::vector<cplx> amps_;
};

}  // namespace spinsim
