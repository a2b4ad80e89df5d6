#pragma once

#include <cstddef>
#include <vector>

#include "spinsim/pauli.hpp"

namespace spinsim {

/// Partition of a sum's non-identity terms into qubit-wise commuting groups:
/// within a group, the non-identity axes agree at every qubit position, so
/// one measurement circuit serves the whole group. Identity terms are kept
/// aside and contribute their coefficient exactly.
struct PauliGrouping {
  struct Group {
    std::vector<std::size_t> term_indices;     // indices into the source sum
    std::vector<PauliAxis> measurement_axes;   // merged axes (I where unconstrained)
  };
  std::vector<Group> groups;
  cplx identity_coefficient{0.0, 0.0};
};

/// Greedy first-fit grouping; deterministic given term order.
PauliGrouping group_terms(const PauliSum& h);

}  // namespace spinsim
