#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spinsim/circuit.hpp"
#include "spinsim/pauli.hpp"
#include "spinsim/simulator.hpp"

namespace spinsim {

/// Zero-noise extrapolation settings. fold_counts lists the per-gate fold
/// numbers n (noise scale 1 + 2n); they must be strictly increasing and
/// start at 0.
struct ZneConfig {
  std::vector<int> fold_counts = {0, 1, 2, 3, 4};
  std::uint64_t shots_per_scale = 10000;
  std::uint64_t seed = 0;
  int max_degree = 4;  // polynomial degree cap (linear/quadratic fallbacks via lower caps)

  void validate() const;
};

/// Per-gate unitary folding: every gate G becomes G (G~dagger G)^n. The
/// noiseless action is unchanged; gate count scales by 1 + 2n.
Circuit fold_circuit(const Circuit& c, int n);

/// Value at lambda = 0 of the unique polynomial through the (lambda, value)
/// points (Lagrange form). Needs >= 2 points with distinct lambdas.
double richardson_extrapolate(const std::vector<std::pair<double, double>>& points);

/// Least-squares polynomial fit of the given degree evaluated at lambda = 0;
/// equals Richardson when degree == points - 1.
double extrapolate_to_zero(const std::vector<std::pair<double, double>>& points, int degree);

/// Samples <obs> under the noise model at every fold count and extrapolates
/// the series to the zero-noise limit.
double mitigated_expectation(const Circuit& prep, const PauliSum& obs,
                             const NoiseModel& noise, const ZneConfig& cfg);

}  // namespace spinsim
