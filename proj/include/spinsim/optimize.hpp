#pragma once

#include <functional>
#include <vector>

namespace spinsim {

enum class OptMethod {
  LinearTrustRegion,  // derivative-free linear-model trust region
  NelderMead,         // simplex fallback
};

struct OptimizerConfig {
  OptMethod method = OptMethod::LinearTrustRegion;
  int max_evaluations = 500;
  double initial_step = 0.5;   // initial simplex scale / trust radius
  double step_end = 1e-4;      // terminal trust radius (convergence)
  double cost_tol = 1e-3;      // relative cost-change tolerance (Nelder-Mead)
};

struct OptimizeResult {
  std::vector<double> x;
  double fx = 0.0;
  int evaluations = 0;
  bool converged = false;
  std::vector<double> history;  // best-so-far cost per evaluation (non-increasing)
};

using CostFn = std::function<double(const std::vector<double>&)>;

OptimizeResult minimize(const CostFn& f, std::vector<double> x0, const OptimizerConfig& cfg);

}  // namespace spinsim
