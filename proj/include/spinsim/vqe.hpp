#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "spinsim/circuit.hpp"
#include "spinsim/grouping.hpp"
#include "spinsim/optimize.hpp"
#include "spinsim/pauli.hpp"
#include "spinsim/simulator.hpp"
#include "spinsim/statevector.hpp"
#include "spinsim/zne.hpp"

namespace spinsim {

/// Parameterized circuit built from exponentials of Y_p X_q (with a Z on the
/// last spin when neither index is the last): N(N-1) parameters. The
/// parameter order lists index pairs in application order; for N = 2 that is
/// (2,1) then (1,2).
class XyAnsatz {
 public:
  explicit XyAnsatz(int n_spins);

  int n_spins() const { return n_; }
  int parameter_count() const { return n_ * (n_ - 1); }

  /// 1-based (p, q) pairs, first factor applied first.
  const std::vector<std::pair<int, int>>& parameter_pairs() const { return pairs_; }

  /// Generator axes of factor k: Y at p-1, X at q-1, Z at n-1 when applicable.
  std::vector<PauliAxis> factor_axes(std::size_t k) const;

  Circuit circuit(std::span<const double> theta) const;

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

Circuit build_xy_ansatz(int n_spins, std::span<const double> theta);

struct VqeOptions {
  std::uint64_t shots = 0;  // 0 = exact expectation values
  std::optional<NoiseModel> noise;
  std::optional<ZneConfig> mitigation;
  std::optional<Circuit> initial_prep;  // required for noisy/mitigated runs
  std::uint64_t seed = 0;
  OptimizerConfig optimizer;
};

struct VqeResult {
  double eigenvalue = 0.0;  // rad/s
  std::vector<double> theta_star;
  StateVector eigenvector;  // ansatz(theta_star) applied to the initial state
  std::vector<double> cost_history;  // best-so-far, non-increasing
  int evaluations = 0;
  bool converged = false;
  double final_cost = 0.0;
};

/// Minimizes <psi(theta)|H|psi(theta)>. In sampled mode the optimizer sees a
/// fixed-seed (common-random-numbers) estimator and the reported eigenvalue
/// is re-estimated at theta* with a fresh stream.
VqeResult vqe_minimize(const PauliSum& h, const XyAnsatz& ansatz,
                       const StateVector& initial_state, std::vector<double> theta0,
                       const VqeOptions& options);

/// Folded-spectrum search: minimizes <(H - wI)^2> and reports
/// w + sign * sqrt(cost*), the sign following w (negative root for w < 0).
VqeResult folded_vqe(const PauliSum& h, double w, const XyAnsatz& ansatz,
                     const StateVector& initial_state, std::vector<double> theta0,
                     const VqeOptions& options);

/// |<psi(thetaA)|psi(thetaB)>|^2 via the compose-and-uncompute circuit
/// (frequency of the all-zeros outcome); exact inner product when shots == 0.
double overlap_estimate(std::span<const double> theta_a, std::span<const double> theta_b,
                        const XyAnsatz& ansatz, const Circuit& initial_prep,
                        std::uint64_t shots, std::uint64_t seed);

struct DeflationLevel {
  VqeResult vqe;
  bool verified = false;  // matches the oracle's k-th eigenvalue (dense systems only)
};

/// Sequential orthogonality-penalty search for the k lowest eigenvalues:
/// level j minimizes <H> + sum_{i<j} beta_i |<psi|psi_i>|^2. Empty betas
/// default every beta_i to the eigen-range width.
std::vector<DeflationLevel> deflation_vqe(const PauliSum& h, int k,
                                          std::vector<double> betas, const XyAnsatz& ansatz,
                                          const StateVector& initial_state,
                                          std::vector<double> theta0,
                                          const VqeOptions& options,
                                          double verify_tol = 1.0);

/// Fixed preparation circuit for (0, 1, -1, 0)/sqrt(2) on two qubits.
Circuit prepare_singlet_like();

struct FoldedSweepPoint {
  double w = 0.0;
  VqeResult vqe;
  bool verified = false;  // det(H - lambda I) check on dense systems
};

/// Folded-spectrum search over a grid of w values between the eigen-range
/// bounds (spacing = range / grid_divisions). Each w runs one VQE per
/// initial-state candidate and keeps the lowest folded cost; estimates are
/// verified against the determinant test where the system is densifiable.
std::vector<FoldedSweepPoint> folded_sweep(const PauliSum& h, const XyAnsatz& ansatz,
                                           const std::vector<StateVector>& initial_candidates,
                                           const VqeOptions& options,
                                           int grid_divisions = 16,
                                           double verify_tol = 1e-3);

}  // namespace spinsim
