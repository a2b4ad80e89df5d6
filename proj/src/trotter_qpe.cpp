#include "spinsim/trotter_qpe.hpp"

#include <algorithm>
#include <cmath>

#include "spinsim/errors.hpp"
#include "spinsim/exact_diag.hpp"
#include "spinsim/rng.hpp"
#include "spinsim/simulator.hpp"

namespace spinsim {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
}  // namespace

ScaledHamiltonian scale_hamiltonian(const PauliSum& h) {
  const PauliSum canon = canonicalize(h);
  if (canon.empty()) throw input_error("scale_hamiltonian: zero Hamiltonian");
  const auto b = eigen_range_bounds(canon);
  const double bound = std::max(std::abs(b.lower), std::abs(b.upper));
  if (bound <= 0.0) throw input_error("scale_hamiltonian: degenerate bounds");
  const double c = 4.0 * bound;
  return {canon.scaled(cplx{1.0 / c, 0.0}), c};
}

void append_pauli_exponential(Circuit& c, const std::vector<PauliAxis>& axes,
                              double angle, int offset, int control) {
  std::vector<int> involved;
  for (std::size_t k = 0; k < axes.size(); ++k)
    if (axes[k] != PauliAxis::I) involved.push_back(offset + static_cast<int>(k));

  if (involved.empty()) {
    // exp(i*angle*I): a pure phase, kicked onto the control when present.
    if (control >= 0)
      c.append(Gate::phase(control, angle));
    else
      c.append(Gate::global_phase(angle));
    return;
  }

  // Basis changes onto Z: X via H, Y via Rx(pi/2) ... Rx(-pi/2) so that the
  // implemented operator is exactly exp(i*angle*P) for any Y count.
  Circuit pre(c.num_qubits());
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const int q = offset + static_cast<int>(k);
    if (axes[k] == PauliAxis::X) pre.append(Gate::h(q));
    if (axes[k] == PauliAxis::Y) pre.append(Gate::rx(q, kPi / 2.0));
  }
  for (std::size_t i = 0; i + 1 < involved.size(); ++i)
    pre.append(Gate::cnot(involved[i], involved[i + 1]));

  c.append(pre);
  const int last = involved.back();
  const double rz_angle = -2.0 * angle;
  if (control >= 0) {
    // Controlled-Rz as a phase pair; the sandwich needs no promotion since
    // it cancels itself when the core is absent.
    c.append(Gate::phase(control, angle));
    c.append(Gate::cphase(rz_angle, control, last));
  } else {
    c.append(Gate::rz(last, rz_angle));
  }
  c.append(pre.inverse());
}

Circuit trotter_step_circuit(const PauliSum& h, double t) {
  if (!h.is_hermitian()) throw input_error("trotter_step_circuit: Hamiltonian must be Hermitian");
  const PauliSum canon = canonicalize(h);
  Circuit c(static_cast<int>(canon.qubit_count()));
  for (const auto& term : canon.terms())
    append_pauli_exponential(c, term.axes, term.coefficient.real() * t);
  return c;
}

Circuit trotterized_unitary(const PauliSum& h, double t, int r) {
  if (r < 1) throw input_error("trotterized_unitary: r must be >= 1");
  const Circuit step = trotter_step_circuit(h, t / r);
  Circuit c(step.num_qubits());
  for (int i = 0; i < r; ++i) c.append(step);
  return c;
}

int required_ancillas(int n_bits, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw input_error("required_ancillas: epsilon must be in (0, 1)");
  return n_bits + static_cast<int>(std::ceil(std::log2(2.0 + 1.0 / (2.0 * epsilon))));
}

Circuit qpe_skeleton(int t_ancillas, int target_qubits,
                     const std::function<void(Circuit&, int ancilla, std::uint64_t reps)>&
                         emit_controlled_power) {
  if (t_ancillas < 1) throw input_error("qpe: need at least one ancilla");
  const int n = t_ancillas + target_qubits;
  Circuit c(n);
  for (int a = 0; a < t_ancillas; ++a) c.append(Gate::h(a));
  for (int a = 0; a < t_ancillas; ++a)
    emit_controlled_power(c, a, std::uint64_t{1} << a);

  // Inverse QFT, swap network elided: the measured bits come out reversed
  // and run_qpe reindexes them.
  for (int j = t_ancillas - 1; j >= 0; --j) {
    for (int k = t_ancillas - 1; k > j; --k)
      c.append(Gate::cphase(-kTwoPi / std::ldexp(1.0, k - j + 1), k, j));
    c.append(Gate::h(j));
  }
  return c;
}

Circuit qpe_circuit(const ScaledHamiltonian& sh, const QpeConfig& cfg) {
  if (cfg.t_ancillas < 1 || cfg.trotter_steps < 1)
    throw input_error("qpe_circuit: invalid configuration");
  const int m = static_cast<int>(sh.scaled.qubit_count());
  const int t = cfg.t_ancillas;
  const PauliSum canon = canonicalize(sh.scaled);

  return qpe_skeleton(t, m, [&](Circuit& c, int a, std::uint64_t reps) {
    // Controlled Trotterized exp(i 2 pi H_scaled) applied `reps` times, one
    // first-order step per trotter_steps slice, plus the quarter-turn shift.
    const double step_t = kTwoPi / cfg.trotter_steps;
    for (std::uint64_t rep = 0; rep < reps; ++rep)
      for (int s = 0; s < cfg.trotter_steps; ++s)
        for (const auto& term : canon.terms())
          append_pauli_exponential(c, term.axes, term.coefficient.real() * step_t, t, a);
    c.append(Gate::phase(a, kTwoPi * 0.25 * static_cast<double>(reps)));
  });
}

std::vector<PhaseEstimate> run_qpe(const PauliSum& h, const QpeConfig& cfg,
                                   const std::vector<StateVector>& initial_states) {
  const ScaledHamiltonian sh = scale_hamiltonian(h);
  const int m = static_cast<int>(h.qubit_count());
  const int t = cfg.t_ancillas;
  const Circuit circuit = qpe_circuit(sh, cfg);

  const bool can_verify = h.qubit_count() <= 12;
  DenseMatrix dense;
  if (can_verify) dense = to_dense(canonicalize(h));

  std::vector<int> ancilla_qubits(t);
  for (int a = 0; a < t; ++a) ancilla_qubits[a] = a;

  // raw register value -> sample count
  std::map<std::uint64_t, int> bin_hits;
  const std::uint64_t grid = std::uint64_t{1} << t;

  for (std::size_t si = 0; si < initial_states.size(); ++si) {
    const StateVector& init = initial_states[si];
    if (init.num_qubits() != m) throw input_error("run_qpe: initial state size mismatch");
    StateVector joint(t + m);
    joint[0] = 0.0;
    for (std::size_t j = 0; j < init.size(); ++j) joint[j] = init[j];
    apply_circuit_inplace(joint, circuit);

    const std::uint64_t draws =
        static_cast<std::uint64_t>(std::max(1, cfg.shots)) *
        static_cast<std::uint64_t>(std::max(1, cfg.max_attempts));
    const auto res = sample(joint, ancilla_qubits, draws, split_seed(cfg.seed, si));
    // Ancilla a carries phase significance 2^a; with the swap-less inverse
    // QFT above, the MSB-first register readout already equals x~ directly.
    for (const auto& [outcome, count] : res.counts)
      bin_hits[outcome] += static_cast<int>(count);
  }

  std::vector<PhaseEstimate> all;
  for (const auto& [x, hits] : bin_hits) {
    PhaseEstimate e;
    e.raw_index = x;
    double shifted = static_cast<double>(x) / static_cast<double>(grid);
    if (shifted > 0.75) shifted -= 1.0;  // wrap side lobes below the shifted origin
    e.phase = shifted - 0.25;
    e.eigenvalue = sh.c_scale * e.phase;
    e.hits = hits;
    e.verified = can_verify && verify_eigenvalue(dense, e.eigenvalue, cfg.verify_tol);
    all.push_back(e);
  }
  std::sort(all.begin(), all.end(),
            [](const PhaseEstimate& a, const PhaseEstimate& b) {
              return a.eigenvalue < b.eigenvalue;
            });

  // Merge adjacent-bin clusters (side lobes of one peak); the most sampled
  // bin speaks for the cluster. 1.5 cells covers float rounding of the
  // one-cell spacing without ever bridging distinct eigenvalues.
  const double cell = sh.c_scale / static_cast<double>(grid);
  std::vector<PhaseEstimate> merged;
  for (const auto& e : all) {
    if (!merged.empty() && e.eigenvalue - merged.back().eigenvalue <= 1.5 * cell) {
      PhaseEstimate& rep = merged.back();
      const int total = rep.hits + e.hits;
      if (e.hits > rep.hits) {
        const int keep = total;
        rep = e;
        rep.hits = keep;
      } else {
        rep.hits = total;
      }
    } else {
      merged.push_back(e);
    }
  }
  return merged;
}

std::vector<double> complete_by_trace(std::vector<double> found, double trace_value,
                                      std::size_t expected_count) {
  if (found.size() == expected_count) return found;
  if (found.size() + 1 != expected_count)
    throw numeric_error("complete_by_trace: exactly one eigenvalue may be missing (have " +
                        std::to_string(found.size()) + " of " +
                        std::to_string(expected_count) + ")");
  double sum = 0.0;
  for (double v : found) sum += v;
  found.push_back(trace_value - sum);
  return found;
}

}  // namespace spinsim
