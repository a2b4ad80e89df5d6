#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "spinsim/circuit.hpp"
#include "spinsim/pauli.hpp"
#include "spinsim/statevector.hpp"

namespace spinsim {

/// Hamiltonian divided by C = 4 * max |eigenvalue bound| so its spectrum
/// fits in [-0.25, 0.25].
struct ScaledHamiltonian {
  PauliSum scaled;
  double c_scale = 0.0;
};

ScaledHamiltonian scale_hamiltonian(const PauliSum& h);

/// Appends gates realizing exp(i * angle * P) for the Pauli string `axes`
/// placed at qubits [offset, offset + axes.size()): basis changes onto Z, a
/// CNOT ladder onto the last non-identity qubit, the Rz core, and the mirror.
/// With `control >= 0` only the core is promoted (the sandwich is
/// self-inverting when the core is the identity), yielding the exact
/// controlled exponential; an all-identity string becomes a global phase
/// (or a Phase gate on the control).
void append_pauli_exponential(Circuit& c, const std::vector<PauliAxis>& axes,
                              double angle, int offset = 0, int control = -1);

/// One first-order product-formula step for exp(i t H).
Circuit trotter_step_circuit(const PauliSum& h, double t);

/// r repetitions of the step at t/r.
Circuit trotterized_unitary(const PauliSum& h, double t, int r);

/// t = n + ceil(log2(2 + 1/(2 eps))) estimation qubits for n accurate bits
/// with failure probability at most eps.
int required_ancillas(int n_bits, double epsilon);

struct QpeConfig {
  int t_ancillas = 12;
  int trotter_steps = 10;
  int shots = 1;         // measurement samples per attempt
  int max_attempts = 10; // attempts per initial state
  std::uint64_t seed = 0;
  double verify_tol = 0.1;  // determinant verification tolerance (one grid cell of slack)
};

struct PhaseEstimate {
  std::uint64_t raw_index = 0;  // measured register value x~
  double phase = 0.0;           // x~/2^t - 0.25 (shift undone)
  double eigenvalue = 0.0;      // c_scale * phase, rad/s
  bool verified = false;
  int hits = 0;                 // samples merged into this estimate
};

/// Phase-estimation circuit over t + m qubits (ancillas first) for
/// U = exp(i 2 pi H_scaled): Hadamard layer, ancilla a controlling the
/// Trotterized U applied 2^a times plus the quarter-turn shift phase, then
/// the inverse QFT (no swap network; run_qpe reads the bits reversed).
Circuit qpe_circuit(const ScaledHamiltonian& sh, const QpeConfig& cfg);

/// Skeleton used by qpe_circuit and by exact-unitary tests: the caller emits
/// each controlled power U^{2^a}.
Circuit qpe_skeleton(int t_ancillas, int target_qubits,
                     const std::function<void(Circuit&, int ancilla, std::uint64_t reps)>&
                         emit_controlled_power);

/// Full workflow: scale, run the circuit on each initial state, sample the
/// ancilla register shots*max_attempts times, convert bins to eigenvalues,
/// verify each against det(H - lambda I), and merge duplicates within one
/// phase-grid cell (the most frequent bin represents the cluster).
std::vector<PhaseEstimate> run_qpe(const PauliSum& h, const QpeConfig& cfg,
                                   const std::vector<StateVector>& initial_states);

/// Appends the single missing value so the set sums to `trace_value`.
/// Returns the input unchanged when already complete; anything else throws.
std::vector<double> complete_by_trace(std::vector<double> found, double trace_value,
                                      std::size_t expected_count);

}  // namespace spinsim
