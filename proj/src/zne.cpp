#include "spinsim/zne.hpp"

#include <cmath>

#include "spinsim/errors.hpp"
#include "spinsim/rng.hpp"

namespace spinsim {

void ZneConfig::validate() const {
  if (fold_counts.empty() || fold_counts.front() != 0)
    throw input_error("ZneConfig: fold_counts must start at 0");
  for (std::size_t i = 1; i < fold_counts.size(); ++i)
    if (fold_counts[i] <= fold_counts[i - 1])
      throw input_error("ZneConfig: fold_counts must be strictly increasing");
  if (shots_per_scale < 1) throw input_error("ZneConfig: shots_per_scale must be >= 1");
  if (max_degree < 1) throw input_error("ZneConfig: max_degree must be >= 1");
}

Circuit fold_circuit(const Circuit& c, int n) {
  if (n < 0) throw input_error("fold_circuit: fold count must be >= 0");
  Circuit out(c.num_qubits());
  for (const auto& g : c.gates()) {
    out.append(g);
    const Gate adj = g.adjoint();
    for (int i = 0; i < n; ++i) {
      out.append(adj);
      out.append(g);
    }
  }
  return out;
}

double richardson_extrapolate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw input_error("richardson_extrapolate: need at least two points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw input_error("richardson_extrapolate: duplicate lambda values");
  double out = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double w = 1.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      w *= (0.0 - points[j].first) / (points[i].first - points[j].first);
    }
    out += w * points[i].second;
  }
  return out;
}

double extrapolate_to_zero(const std::vector<std::pair<double, double>>& points, int degree) {
  const int m = static_cast<int>(points.size());
  if (degree >= m - 1) return richardson_extrapolate(points);
  // Least-squares fit of a degree-d polynomial; only the constant term is
  // needed. Normal equations are fine at these tiny sizes.
  const int k = degree + 1;
  std::vector<double> ata(k * k, 0.0), atb(k, 0.0);
  for (const auto& [lam, val] : points) {
    std::vector<double> row(k);
    double pw = 1.0;
    for (int c = 0; c < k; ++c) {
      row[c] = pw;
      pw *= lam;
    }
    for (int r = 0; r < k; ++r) {
      atb[r] += row[r] * val;
      for (int c = 0; c < k; ++c) ata[r * k + c] += row[r] * row[c];
    }
  }
  // Gaussian elimination with partial pivoting.
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int r = col + 1; r < k; ++r)
      if (std::abs(ata[r * k + col]) > std::abs(ata[piv * k + col])) piv = r;
    if (std::abs(ata[piv * k + col]) < 1e-300)
      throw numeric_error("extrapolate_to_zero: singular fit");
    if (piv != col) {
      for (int c = 0; c < k; ++c) std::swap(ata[piv * k + c], ata[col * k + c]);
      std::swap(atb[piv], atb[col]);
    }
    for (int r = col + 1; r < k; ++r) {
      const double f = ata[r * k + col] / ata[col * k + col];
      for (int c = col; c < k; ++c) ata[r * k + c] -= f * ata[col * k + c];
      atb[r] -= f * atb[col];
    }
  }
  for (int col = k; col-- > 0;) {
    for (int c = col + 1; c < k; ++c) atb[col] -= ata[col * k + c] * atb[c];
    atb[col] /= ata[col * k + col];
  }
  return atb[0];  // polynomial value at lambda = 0
}

double mitigated_expectation(const Circuit& prep, const PauliSum& obs,
                             const NoiseModel& noise, const ZneConfig& cfg) {
  cfg.validate();
  const PauliGrouping grouping = group_terms(canonicalize(obs));
  std::vector<std::pair<double, double>> points;
  points.reserve(cfg.fold_counts.size());
  for (std::size_t i = 0; i < cfg.fold_counts.size(); ++i) {
    const int n = cfg.fold_counts[i];
    const Circuit folded = fold_circuit(prep, n);
    const double est = estimate_expectation_sampled(
        folded, obs, cfg.shots_per_scale, grouping, &noise, split_seed(cfg.seed, i));
    points.emplace_back(1.0 + 2.0 * n, est);
  }
  const int degree = std::min<int>(static_cast<int>(points.size()) - 1, cfg.max_degree);
  return extrapolate_to_zero(points, degree);
}

}  // namespace spinsim
