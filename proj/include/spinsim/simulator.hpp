#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "spinsim/circuit.hpp"
#include "spinsim/grouping.hpp"
#include "spinsim/pauli.hpp"
#include "spinsim/rng.hpp"
#include "spinsim/statevector.hpp"

namespace spinsim {

/// Stochastic depolarizing channel: after each gate, with probability p1
/// (p2 for two-qubit gates) one uniformly random Pauli error lands on a
/// uniformly chosen touched qubit.
struct NoiseModel {
  double p1 = 0.001;
  double p2 = 0.01;
  std::uint64_t seed = 0;
};

struct ShotResult {
  std::map<std::uint64_t, std::uint64_t> counts;  // outcome index -> occurrences
  std::uint64_t shots = 0;
};

/// Exact unitary action of the circuit, in place.
void apply_circuit_inplace(StateVector& state, const Circuit& c);
StateVector apply_circuit(const StateVector& state, const Circuit& c);

/// One stochastic error trajectory; p1 = p2 = 0 reproduces apply_circuit.
void apply_noisy_circuit_inplace(StateVector& state, const Circuit& c,
                                 const NoiseModel& noise, Rng& rng);
StateVector apply_noisy_circuit(const StateVector& state, const Circuit& c,
                                const NoiseModel& noise);

/// Exact <psi|O|psi> for a Hermitian sum (real part; the imaginary residue
/// stays below 1e-10 for Hermitian input).
double expectation(const StateVector& state, const PauliSum& obs);
cplx expectation_complex(const StateVector& state, const PauliSum& obs);

/// Multinomial draw from the |amplitude|^2 marginal over the listed qubits
/// (first listed qubit = most significant outcome bit). Deterministic given
/// the seed.
ShotResult sample(const StateVector& state, const std::vector<int>& qubits,
                  std::uint64_t shots, std::uint64_t seed);

/// Measurement-based estimate of <O> on the state prepared by `prep` from
/// |0...0>: one measurement circuit per qubit-wise-commuting group (H onto X
/// axes, S~dagger then H onto Y axes), `shots_per_group` computational-basis
/// samples each; identity terms contribute exactly. With a noise model, every
/// shot runs its own error trajectory with a per-shot derived seed.
double estimate_expectation_sampled(const Circuit& prep, const PauliSum& obs,
                                    std::uint64_t shots_per_group,
                                    const PauliGrouping& grouping,
                                    const NoiseModel* noise, std::uint64_t seed);

/// Gates rotating the group's measurement axes onto Z.
Circuit measurement_basis_change(int n_qubits, const std::vector<PauliAxis>& axes);

}  // namespace spinsim
