#include "spinsim/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinsim/errors.hpp"

namespace spinsim {

namespace {

struct Tracker {
  const CostFn& f;
  int evaluations = 0;
  int budget;
  std::vector<double> best_x;
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> history;

  Tracker(const CostFn& fn, int max_evals) : f(fn), budget(max_evals) {}

  bool exhausted() const { return evaluations >= budget; }

  double eval(const std::vector<double>& x) {
    const double v = f(x);
    ++evaluations;
    if (v < best_f) {
      best_f = v;
      best_x = x;
    }
    history.push_back(best_f);
    return v;
  }
};

// Solve the n x n system A y = b in place (partial pivoting). Returns false
// when the system is numerically singular.
bool solve_inplace(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
    if (std::abs(a[piv * n + col]) < 1e-14) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double fct = a[r * n + col] / a[col * n + col];
      if (fct == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= fct * a[col * n + c];
      b[r] -= fct * b[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t c = col + 1; c < n; ++c) b[col] -= a[col * n + c] * b[c];
    b[col] /= a[col * n + col];
  }
  return true;
}

// Derivative-free linear-approximation trust region: interpolate a linear
// model through an n+1 point simplex, step against its gradient within the
// trust radius, and shrink the radius when the step fails to improve.
OptimizeResult linear_trust_region(Tracker& trk, std::vector<double> x0,
                                   const OptimizerConfig& cfg) {
  const std::size_t n = x0.size();
  double rho = cfg.initial_step;

  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
  auto build_simplex = [&](const std::vector<double>& center, double scale) {
    pts.assign(1, center);
    vals.assign(1, trk.eval(center));
    for (std::size_t i = 0; i < n && !trk.exhausted(); ++i) {
      auto p = center;
      p[i] += scale;
      pts.push_back(p);
      vals.push_back(trk.eval(p));
    }
  };
  build_simplex(x0, rho);

  while (!trk.exhausted() && rho > cfg.step_end && pts.size() == n + 1) {
    // Best vertex as the model origin.
    std::size_t ib = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      if (vals[i] < vals[ib]) ib = i;
    std::swap(pts[0], pts[ib]);
    std::swap(vals[0], vals[ib]);

    std::vector<double> a(n * n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a[i * n + j] = pts[i + 1][j] - pts[0][j];
      b[i] = vals[i + 1] - vals[0];
    }
    if (!solve_inplace(a, b, n)) {
      build_simplex(pts[0], rho);  // degenerate geometry: rebuild around best
      continue;
    }
    double gnorm = 0.0;
    for (double g : b) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm < 1e-300) {
      rho *= 0.5;
      build_simplex(pts[0], rho);
      continue;
    }

    auto cand = pts[0];
    for (std::size_t j = 0; j < n; ++j) cand[j] -= rho * b[j] / gnorm;
    const double fc = trk.eval(cand);

    if (fc < vals[0]) {
      // Replace the worst vertex and keep the radius.
      std::size_t iw = 0;
      for (std::size_t i = 1; i < pts.size(); ++i)
        if (vals[i] > vals[iw]) iw = i;
      pts[iw] = cand;
      vals[iw] = fc;
    } else {
      rho *= 0.5;
      build_simplex(pts[0], rho);
    }
  }

  OptimizeResult out;
  out.x = trk.best_x;
  out.fx = trk.best_f;
  out.evaluations = trk.evaluations;
  out.converged = rho <= cfg.step_end;
  out.history = std::move(trk.history);
  return out;
}

OptimizeResult nelder_mead(Tracker& trk, std::vector<double> x0, const OptimizerConfig& cfg) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  vals[0] = trk.eval(pts[0]);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i + 1][i] += cfg.initial_step;
    vals[i + 1] = trk.eval(pts[i + 1]);
  }

  bool converged = false;
  while (!trk.exhausted()) {
    std::vector<std::size_t> order(n + 1);
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> spts(n + 1);
    std::vector<double> svals(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      spts[i] = pts[order[i]];
      svals[i] = vals[order[i]];
    }
    pts = spts;
    vals = svals;

    const double spread = std::abs(vals[n] - vals[0]);
    double size = 0.0;
    for (std::size_t j = 0; j < n; ++j) size = std::max(size, std::abs(pts[n][j] - pts[0][j]));
    if (spread <= cfg.cost_tol * (std::abs(vals[0]) + 1e-12) && size <= cfg.step_end) {
      converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);

    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + coef * (pts[n][j] - centroid[j]);
      return p;
    };

    const auto refl = blend(-1.0);
    const double fr = trk.eval(refl);
    if (fr < vals[0]) {
      const auto exp_p = blend(-2.0);
      const double fe = trk.eval(exp_p);
      if (fe < fr) {
        pts[n] = exp_p;
        vals[n] = fe;
      } else {
        pts[n] = refl;
        vals[n] = fr;
      }
    } else if (fr < vals[n - 1]) {
      pts[n] = refl;
      vals[n] = fr;
    } else {
      const auto con = blend(fr < vals[n] ? -0.5 : 0.5);
      const double fcv = trk.eval(con);
      if (fcv < std::min(fr, vals[n])) {
        pts[n] = con;
        vals[n] = fcv;
      } else {
        for (std::size_t i = 1; i <= n && !trk.exhausted(); ++i) {
          for (std::size_t j = 0; j < n; ++j) pts[i][j] = 0.5 * (pts[i][j] + pts[0][j]);
          vals[i] = trk.eval(pts[i]);
        }
      }
    }
  }

  OptimizeResult out;
  out.x = trk.best_x;
  out.fx = trk.best_f;
  out.evaluations = trk.evaluations;
  out.converged = converged;
  out.history = std::move(trk.history);
  return out;
}

}  // namespace

OptimizeResult minimize(const CostFn& f, std::vector<double> x0, const OptimizerConfig& cfg) {
  if (x0.empty()) throw input_error("minimize: empty parameter vector");
  if (cfg.max_evaluations < static_cast<int>(x0.size()) + 2)
    throw input_error("minimize: evaluation budget too small");
  if (!(cfg.initial_step > 0.0) || !(cfg.step_end > 0.0) || !(cfg.cost_tol > 0.0))
    throw input_error("minimize: steps and tolerances must be positive");
  Tracker trk(f, cfg.max_evaluations);
  if (cfg.method == OptMethod::NelderMead) return nelder_mead(trk, std::move(x0), cfg);
  return linear_trust_region(trk, std::move(x0), cfg);
}

}  // namespace spinsim
