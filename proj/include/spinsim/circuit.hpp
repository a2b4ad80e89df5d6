#pragma once

#include <string>
#include <vector>

namespace spinsim {

enum class GateKind {
  H,
  X,
  SDag,
  Rx,
  Ry,
  Rz,
  Phase,            // diag(1, e^{i*angle})
  CNot,
  ControlledPhase,  // e^{i*angle} on |11> of (control, target)
  GlobalPhase,      // e^{i*angle} on every amplitude; no qubit
};

struct Gate {
  GateKind kind;
  int target = -1;
  int control = -1;
  double angle = 0.0;

  static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
  static Gate sdag(int q) { return {GateKind::SDag, q, -1, 0.0}; }
  static Gate rx(int q, double theta) { return {GateKind::Rx, q, -1, theta}; }
  static Gate ry(int q, double theta) { return {GateKind::Ry, q, -1, theta}; }
  static Gate rz(int q, double theta) { return {GateKind::Rz, q, -1, theta}; }
  static Gate phase(int q, double theta) { return {GateKind::Phase, q, -1, theta}; }
  static Gate cnot(int control, int target) { return {GateKind::CNot, target, control, 0.0}; }
  static Gate cphase(double theta, int control, int target) {
    return {GateKind::ControlledPhase, target, control, theta};
  }
  static Gate global_phase(double theta) { return {GateKind::GlobalPhase, -1, -1, theta}; }

  bool is_two_qubit() const { return control >= 0; }
  int num_touched() const { return control >= 0 ? 2 : (target >= 0 ? 1 : 0); }

  /// The adjoint gate (rotations and phases negate their angle; SDag maps to
  /// Phase(pi/2); the rest are self-adjoint).
  Gate adjoint() const;

  std::string to_text() const;
};

/// Ordered gate list over a fixed qubit register; indices are validated on
/// append.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {}

  int num_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  void append(const Gate& g);
  void append(const Circuit& other);

  /// Adjoint circuit: reversed order, each gate replaced by its adjoint.
  Circuit inverse() const;

  /// One gate per line, for debugging and serialization.
  std::string to_text() const;

 private:
  int n_qubits_ = 0;
  std::vector<Gate> gates_;
};

}  // namespace spinsim
