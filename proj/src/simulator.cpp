#include "spinsim/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "spinsim/errors.hpp"
#include "spinsim/kernels.hpp"

namespace spinsim {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

cplx ipow(int p) {
  switch (p & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void apply_gate(StateVector& s, const Gate& g) {
  const auto& ops = kernels::active_ops();
  cplx* a = s.data();
  const std::size_t n = s.size();
  switch (g.kind) {
    case GateKind::H: {
      const cplx m[4] = {{kInvSqrt2, 0}, {kInvSqrt2, 0}, {kInvSqrt2, 0}, {-kInvSqrt2, 0}};
      ops.apply_1q(a, n, s.bitpos(g.target), m);
      break;
    }
    case GateKind::X:
      ops.apply_swap_masked(a, n, 0, s.bitpos(g.target));
      break;
    case GateKind::SDag:
      ops.apply_diag1(a, n, s.bitpos(g.target), {1, 0}, {0, -1});
      break;
    case GateKind::Rx: {
      const double c = std::cos(g.angle / 2), sn = std::sin(g.angle / 2);
      const cplx m[4] = {{c, 0}, {0, -sn}, {0, -sn}, {c, 0}};
      ops.apply_1q(a, n, s.bitpos(g.target), m);
      break;
    }
    case GateKind::Ry: {
      const double c = std::cos(g.angle / 2), sn = std::sin(g.angle / 2);
      const cplx m[4] = {{c, 0}, {-sn, 0}, {sn, 0}, {c, 0}};
      ops.apply_1q(a, n, s.bitpos(g.target), m);
      break;
    }
    case GateKind::Rz:
      ops.apply_diag1(a, n, s.bitpos(g.target), std::polar(1.0, -g.angle / 2),
                      std::polar(1.0, g.angle / 2));
      break;
    case GateKind::Phase:
      ops.apply_diag1(a, n, s.bitpos(g.target), {1, 0}, std::polar(1.0, g.angle));
      break;
    case GateKind::CNot:
      ops.apply_swap_masked(a, n, std::uint64_t{1} << s.bitpos(g.control),
                            s.bitpos(g.target));
      break;
    case GateKind::ControlledPhase:
      ops.apply_phase_masked(a, n,
                             (std::uint64_t{1} << s.bitpos(g.control)) |
                                 (std::uint64_t{1} << s.bitpos(g.target)),
                             std::polar(1.0, g.angle));
      break;
    case GateKind::GlobalPhase:
      ops.scale(a, n, std::polar(1.0, g.angle));
      break;
  }
}

void apply_pauli_error(StateVector& s, int axis, int qubit) {
  const auto& ops = kernels::active_ops();
  cplx* a = s.data();
  const std::size_t n = s.size();
  const int bp = s.bitpos(qubit);
  switch (axis) {
    case 0:  // X
      ops.apply_swap_masked(a, n, 0, bp);
      break;
    case 1: {  // Y
      const cplx m[4] = {{0, 0}, {0, -1}, {0, 1}, {0, 0}};
      ops.apply_1q(a, n, bp, m);
      break;
    }
    default:  // Z
      ops.apply_diag1(a, n, bp, {1, 0}, {-1, 0});
      break;
  }
}

struct StringMasks {
  std::uint64_t xflip = 0;
  std::uint64_t sign = 0;  // bits contributing (-1)^popcount (Y and Z axes)
  int ny = 0;
};

StringMasks masks_of(const PauliString& t, int n_qubits) {
  StringMasks m;
  for (int k = 0; k < n_qubits; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << (n_qubits - 1 - k);
    switch (t.axes[k]) {
      case PauliAxis::I: break;
      case PauliAxis::X: m.xflip |= bit; break;
      case PauliAxis::Y: m.xflip |= bit; m.sign |= bit; ++m.ny; break;
      case PauliAxis::Z: m.sign |= bit; break;
    }
  }
  return m;
}

}  // namespace

void apply_circuit_inplace(StateVector& state, const Circuit& c) {
  if (c.num_qubits() != state.num_qubits())
    throw input_error("apply_circuit: qubit count mismatch");
  for (const auto& g : c.gates()) apply_gate(state, g);
}

StateVector apply_circuit(const StateVector& state, const Circuit& c) {
  StateVector out(state);
  apply_circuit_inplace(out, c);
  return out;
}

void apply_noisy_circuit_inplace(StateVector& state, const Circuit& c,
                                 const NoiseModel& noise, Rng& rng) {
  if (noise.p1 < 0 || noise.p1 > 1 || noise.p2 < 0 || noise.p2 > 1)
    throw input_error("NoiseModel: probabilities must be in [0, 1]");
  if (c.num_qubits() != state.num_qubits())
    throw input_error("apply_noisy_circuit: qubit count mismatch");
  for (const auto& g : c.gates()) {
    apply_gate(state, g);
    const int touched = g.num_touched();
    if (touched == 0) continue;
    const double p = touched == 2 ? noise.p2 : noise.p1;
    if (p > 0.0 && rng.uniform() < p) {
      const int axis = static_cast<int>(rng.uniform_index(3));
      const int which = touched == 2 ? static_cast<int>(rng.uniform_index(2)) : 0;
      const int qubit = (touched == 2 && which == 0) ? g.control : g.target;
      apply_pauli_error(state, axis, qubit);
    }
  }
}

StateVector apply_noisy_circuit(const StateVector& state, const Circuit& c,
                                const NoiseModel& noise) {
  StateVector out(state);
  Rng rng(noise.seed);
  apply_noisy_circuit_inplace(out, c, noise, rng);
  return out;
}

cplx expectation_complex(const StateVector& state, const PauliSum& obs) {
  if (obs.qubit_count() != static_cast<std::size_t>(state.num_qubits()))
    throw input_error("expectation: qubit count mismatch");
  const auto& ops = kernels::active_ops();
  const cplx* a = state.data();
  const std::size_t n = state.size();
  cplx total{};
  for (const auto& t : obs.terms()) {
    const StringMasks m = masks_of(t, state.num_qubits());
    if (m.xflip == 0) {
      total += t.coefficient * ops.expect_diag_zmask(a, n, m.sign);
      continue;
    }
    // <psi|P|psi> with P|j> = i^ny (-1)^popcount(j & sign) |j ^ xflip>
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const cplx v = std::conj(a[j ^ m.xflip]) * a[j];
      acc += (std::popcount(j & m.sign) & 1) ? -v : v;
    }
    total += t.coefficient * ipow(m.ny) * acc;
  }
  return total;
}

double expectation(const StateVector& state, const PauliSum& obs) {
  return expectation_complex(state, obs).real();
}

ShotResult sample(const StateVector& state, const std::vector<int>& qubits,
                  std::uint64_t shots, std::uint64_t seed) {
  if (shots < 1) throw input_error("sample: shots must be >= 1");
  const int n = state.num_qubits();
  for (int q : qubits)
    if (q < 0 || q >= n) throw input_error("sample: qubit index out of range");

  // Marginal over the listed qubits, first qubit = most significant bit.
  const std::size_t bins = std::size_t{1} << qubits.size();
  std::vector<double> prob(bins, 0.0);
  for (std::size_t j = 0; j < state.size(); ++j) {
    std::size_t out = 0;
    for (std::size_t k = 0; k < qubits.size(); ++k)
      out = (out << 1) | ((j >> state.bitpos(qubits[k])) & 1);
    prob[out] += std::norm(state[j]);
  }
  std::vector<double> cdf(bins);
  double run = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    run += prob[b];
    cdf[b] = run;
  }
  cdf[bins - 1] = std::max(cdf[bins - 1], 1.0);

  ShotResult result;
  result.shots = shots;
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::uint64_t out = static_cast<std::uint64_t>(it - cdf.begin());
    ++result.counts[std::min<std::uint64_t>(out, bins - 1)];
  }
  return result;
}

Circuit measurement_basis_change(int n_qubits, const std::vector<PauliAxis>& axes) {
  Circuit c(n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    switch (axes[q]) {
      case PauliAxis::I:
      case PauliAxis::Z:
        break;
      case PauliAxis::X:
        c.append(Gate::h(q));
        break;
      case PauliAxis::Y:
        c.append(Gate::sdag(q));
        c.append(Gate::h(q));
        break;
    }
  }
  return c;
}

double estimate_expectation_sampled(const Circuit& prep, const PauliSum& obs,
                                    std::uint64_t shots_per_group,
                                    const PauliGrouping& grouping,
                                    const NoiseModel* noise, std::uint64_t seed) {
  if (shots_per_group < 1)
    throw input_error("estimate_expectation_sampled: shots must be >= 1");
  const int n = prep.num_qubits();
  double total = grouping.identity_coefficient.real();

  std::vector<int> all_qubits(n);
  for (int q = 0; q < n; ++q) all_qubits[q] = q;

  for (std::size_t gi = 0; gi < grouping.groups.size(); ++gi) {
    const auto& group = grouping.groups[gi];
    Circuit meas = measurement_basis_change(n, group.measurement_axes);
    const std::uint64_t group_seed = split_seed(seed, gi);

    // Outcome-bit mask (from the MSB-first outcome index) per term.
    std::vector<std::uint64_t> term_masks;
    std::vector<double> term_coeffs;
    term_masks.reserve(group.term_indices.size());
    for (std::size_t ti : group.term_indices) {
      const auto& t = obs.terms()[ti];
      std::uint64_t mask = 0;
      for (int q = 0; q < n; ++q)
        if (t.axes[q] != PauliAxis::I) mask |= std::uint64_t{1} << (n - 1 - q);
      term_masks.push_back(mask);
      term_coeffs.push_back(t.coefficient.real());
    }

    std::vector<std::int64_t> parity_sums(term_masks.size(), 0);
    if (noise != nullptr && (noise->p1 > 0 || noise->p2 > 0)) {
      Circuit full(n);
      full.append(prep);
      full.append(meas);
      StateVector base(n);
      for (std::uint64_t shot = 0; shot < shots_per_group; ++shot) {
        Rng rng(split_seed(group_seed, shot));
        StateVector st = base;
        apply_noisy_circuit_inplace(st, full, *noise, rng);
        const auto res = sample(st, all_qubits, 1, rng.next_u64());
        const std::uint64_t out = res.counts.begin()->first;
        for (std::size_t k = 0; k < term_masks.size(); ++k)
          parity_sums[k] += (std::popcount(out & term_masks[k]) & 1) ? -1 : 1;
      }
    } else {
      StateVector st(n);
      apply_circuit_inplace(st, prep);
      apply_circuit_inplace(st, meas);
      const auto res = sample(st, all_qubits, shots_per_group, group_seed);
      for (const auto& [out, count] : res.counts)
        for (std::size_t k = 0; k < term_masks.size(); ++k) {
          const std::int64_t sgn = (std::popcount(out & term_masks[k]) & 1) ? -1 : 1;
          parity_sums[k] += sgn * static_cast<std::int64_t>(count);
        }
    }

    for (std::size_t k = 0; k < term_masks.size(); ++k)
      total += term_coeffs[k] * static_cast<double>(parity_sums[k]) /
               static_cast<double>(shots_per_group);
  }
  return total;
}

}  // namespace spinsim
