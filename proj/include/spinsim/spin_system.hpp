#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spinsim/pauli.hpp"

namespace spinsim {

/// NMR description of a homonuclear spin-1/2 system: per-nucleus chemical
/// shifts (ppm), scalar couplings (Hz), spectrometer frequency (MHz) and the
/// carrier offset (ppm).
struct SpinSystemSpec {
  std::vector<std::string> labels;
  std::vector<double> shifts_ppm;
  std::map<std::pair<std::size_t, std::size_t>, double> couplings_hz;  // key (i,j), i<j, 0-based
  double field_mhz = 0.0;
  double offset_ppm = 0.0;

  std::size_t num_spins() const { return shifts_ppm.size(); }

  /// Throws input_error when a structural invariant is violated.
  void validate() const;
};

struct AngularFrequencies {
  std::vector<double> w;  // rad/s, one per nucleus
};

/// Per-nucleus Larmor offsets w_i = 2*pi * field_mhz * (shift_i - offset).
AngularFrequencies angular_frequencies(const SpinSystemSpec& spec);

/// Pauli encoding of the spin Hamiltonian (rad/s): (w_k/2) Z_k per nucleus
/// plus (2*pi*J_ij/4) (X_iX_j + Y_iY_j + Z_iZ_j) once per unordered pair.
/// Qubit k hosts nucleus k; qubit 0 is the leftmost Kronecker factor (the
/// most significant basis-index bit). The result is Hermitian and traceless.
PauliSum build_hamiltonian(const SpinSystemSpec& spec);

/// Parses the JSON spin-system format documented in the README:
///   {"field_mhz": .., "offset_ppm": .., "nuclei": [{"label": .., "shift_ppm": ..}, ..],
///    "couplings": [{"i": 1, "j": 2, "j_hz": ..}, ..]}
/// Nucleus indices in couplings are 1-based positions in the nuclei list.
/// Throws input_error with a field diagnostic on malformed input.
SpinSystemSpec parse_spec(const std::string& text);

SpinSystemSpec load_spec_file(const std::string& path);

}  // namespace spinsim
