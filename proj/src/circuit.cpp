#include "spinsim/circuit.hpp"

#include <cmath>
#include <sstream>

#include "spinsim/errors.hpp"

namespace spinsim {

namespace {
constexpr double kPi = 3.14159265358979323846;

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::SDag: return "sdag";
    case GateKind::Rx: return "rx";
    case GateKind::Ry: return "ry";
    case GateKind::Rz: return "rz";
    case GateKind::Phase: return "phase";
    case GateKind::CNot: return "cnot";
    case GateKind::ControlledPhase: return "cphase";
    case GateKind::GlobalPhase: return "gphase";
  }
  return "?";
}
}  // namespace

Gate Gate::adjoint() const {
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::CNot:
      return *this;
    case GateKind::SDag:
      return Gate::phase(target, kPi / 2.0);
    case GateKind::Rx:
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::Phase:
    case GateKind::ControlledPhase:
    case GateKind::GlobalPhase: {
      Gate g = *this;
      g.angle = -angle;
      return g;
    }
  }
  return *this;
}

std::string Gate::to_text() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (control >= 0) os << " " << control;
  if (target >= 0) os << " " << target;
  if (kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz ||
      kind == GateKind::Phase || kind == GateKind::ControlledPhase ||
      kind == GateKind::GlobalPhase) {
    os.precision(17);
    os << " " << angle;
  }
  return os.str();
}

void Circuit::append(const Gate& g) {
  if (!std::isfinite(g.angle)) throw input_error("Circuit: non-finite gate angle");
  if (g.kind == GateKind::GlobalPhase) {
    gates_.push_back(g);
    return;
  }
  if (g.target < 0 || g.target >= n_qubits_)
    throw input_error("Circuit: target qubit out of range");
  if (g.is_two_qubit()) {
    if (g.control < 0 || g.control >= n_qubits_)
      throw input_error("Circuit: control qubit out of range");
    if (g.control == g.target)
      throw input_error("Circuit: control equals target");
  }
  gates_.push_back(g);
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_)
    throw input_error("Circuit: appended circuit uses more qubits");
  for (const auto& g : other.gates_) append(g);
}

Circuit Circuit::inverse() const {
  Circuit inv(n_qubits_);
  inv.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it)
    inv.gates_.push_back(it->adjoint());
  return inv;
}

std::string Circuit::to_text() const {
  std::ostringstream os;
  os << "qubits " << n_qubits_ << "\n";
  for (const auto& g : gates_) os << g.to_text() << "\n";
  return os.str();
}

}  // namespace spinsim
