#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "spinsim/errors.hpp"
#include "spinsim/simulator.hpp"
#include "test_helpers.hpp"

using namespace spinsim;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kInvSqrt2 = 0.70710678118654752440;

StateVector singlet_like() {
  return StateVector::from_amplitudes({0.0, kInvSqrt2, -kInvSqrt2, 0.0});
}
}  // namespace

TEST_CASE("elementary gate actions") {
  StateVector s(1);
  Circuit c(1);
  c.append(Gate::h(0));
  apply_circuit_inplace(s, c);
  CHECK(std::abs(s[0] - kInvSqrt2) < 1e-12);
  CHECK(std::abs(s[1] - kInvSqrt2) < 1e-12);

  // CNOT on (|00> + |10>)/sqrt(2) -> Bell
  StateVector b = StateVector::from_amplitudes({kInvSqrt2, 0.0, kInvSqrt2, 0.0});
  Circuit cn(2);
  cn.append(Gate::cnot(0, 1));
  apply_circuit_inplace(b, cn);
  CHECK(std::abs(b[0] - kInvSqrt2) < 1e-12);
  CHECK(std::abs(b[3] - kInvSqrt2) < 1e-12);
  CHECK(std::abs(b[1]) + std::abs(b[2]) < 1e-12);
}

TEST_CASE("every gate kind matches its dense matrix and round-trips") {
  Rng rng(123);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    Circuit c(n);
    const int q0 = static_cast<int>(rng.uniform_index(n));
    int q1 = static_cast<int>(rng.uniform_index(n));
    if (q1 == q0) q1 = (q0 + 1) % n;
    const double ang = 2.0 * rng.normal();
    switch (trial % 10) {
      case 0: c.append(Gate::h(q0)); break;
      case 1: c.append(Gate::x(q0)); break;
      case 2: c.append(Gate::sdag(q0)); break;
      case 3: c.append(Gate::rx(q0, ang)); break;
      case 4: c.append(Gate::ry(q0, ang)); break;
      case 5: c.append(Gate::rz(q0, ang)); break;
      case 6: c.append(Gate::phase(q0, ang)); break;
      case 7: c.append(Gate::cnot(q0, q1)); break;
      case 8: c.append(Gate::cphase(ang, q0, q1)); break;
      case 9: c.append(Gate::global_phase(ang)); break;
    }
    const auto init = oracles::random_state(n, 500 + trial);
    const auto got = apply_circuit(init, c);
    const auto expect = oracles::apply_circuit_dense(c, init.amplitudes());
    for (std::size_t i = 0; i < got.size(); ++i)
      CHECK(std::abs(got[i] - expect[i]) < 1e-12);

    // norm preserved; inverse restores
    CHECK(std::abs(got.norm_sq() - 1.0) < 1e-10);
    const auto back = apply_circuit(got, c.inverse());
    for (std::size_t i = 0; i < back.size(); ++i)
      CHECK(std::abs(back[i] - init[i]) < 1e-10);
  }
}

TEST_CASE("ZZ-exponential circuit vs dense matrix exponential") {
  // exp(i (Z x Z) t) = CNOT (I x Rz(-2t)) CNOT
  const double t = 0.37;
  Circuit c(2);
  c.append(Gate::cnot(0, 1));
  c.append(Gate::rz(1, -2.0 * t));
  c.append(Gate::cnot(0, 1));

  PauliSum zz(2);
  zz.add("ZZ", {1, 0});
  const auto u = oracles::expm_i(oracles::dense_of_sum(zz), t);
  const auto init = oracles::random_state(2, 98);
  const auto got = apply_circuit(init, c);
  const auto expect = u.apply(init.amplitudes());
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(got[i] - expect[i]) < 1e-9);
}

TEST_CASE("exact expectations") {
  StateVector zero(1);
  PauliSum z(1);
  z.add("Z", {1, 0});
  CHECK(expectation(zero, z) == doctest::Approx(1.0));

  StateVector bell = StateVector::from_amplitudes({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
  PauliSum zz(2), zi(2);
  zz.add("ZZ", {1, 0});
  zi.add("ZI", {1, 0});
  CHECK(expectation(bell, zz) == doctest::Approx(1.0));
  CHECK(expectation(bell, zi) == doctest::Approx(0.0));

  // quadratic-form oracle v'Hv on the reference initial state
  const auto h = helpers::sulfanol_hamiltonian();
  const auto hd = oracles::dense_of_sum(h);
  const auto v = singlet_like();
  const auto hv = hd.apply(v.amplitudes());
  cplx quad{};
  for (std::size_t i = 0; i < 4; ++i) quad += std::conj(v[i]) * hv[i];
  CHECK(expectation(v, h) == doctest::Approx(quad.real()).epsilon(1e-12));
  CHECK(expectation(v, h) == doctest::Approx(-10.9327424345).epsilon(1e-9));

  // random states and observables against the dense quadratic form
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const int n = 1 + static_cast<int>(seed % 4);
    const auto obs = oracles::random_hermitian_sum(n, 5, 7000 + seed);
    const auto st = oracles::random_state(n, 7100 + seed);
    const auto od = oracles::dense_of_sum(obs);
    const auto ov = od.apply(st.amplitudes());
    cplx expect{};
    for (std::size_t i = 0; i < st.size(); ++i) expect += std::conj(st[i]) * ov[i];
    CHECK(expectation(st, obs) == doctest::Approx(expect.real()).epsilon(1e-9));
    CHECK(std::abs(expectation_complex(st, obs).imag()) < 1e-10);
  }
}

TEST_CASE("qubit 0 is the most significant basis bit") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k < n; ++k) {
      std::string axes(n, 'I');
      axes[k] = 'Z';
      PauliSum zk(n);
      zk.add(axes, {1, 0});
      const auto st = oracles::random_state(n, 40 * n + k);
      const auto zd = oracles::dense_of_sum(zk);
      const auto zv = zd.apply(st.amplitudes());
      cplx expect{};
      for (std::size_t i = 0; i < st.size(); ++i) expect += std::conj(st[i]) * zv[i];
      CHECK(expectation(st, zk) == doctest::Approx(expect.real()).epsilon(1e-10));
    }
  }
}

TEST_CASE("sampling") {
  SUBCASE("deterministic state gives a single outcome") {
    StateVector zero(2);
    const auto res = sample(zero, {0, 1}, 100, 7);
    REQUIRE(res.counts.size() == 1);
    CHECK(res.counts.at(0) == 100);
  }
  SUBCASE("H|0> balances within 5 sigma at a million shots") {
    StateVector s(1);
    Circuit c(1);
    c.append(Gate::h(0));
    apply_circuit_inplace(s, c);
    const std::uint64_t shots = 1000000;
    const auto res = sample(s, {0}, shots, 99);
    const double n0 = static_cast<double>(res.counts.at(0));
    CHECK(std::abs(n0 - 5e5) < 5.0 * std::sqrt(0.25 * shots));
  }
  SUBCASE("Bell state only yields 00 and 11") {
    StateVector bell = StateVector::from_amplitudes({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    const auto res = sample(bell, {0, 1}, 2000, 5);
    for (const auto& [out, cnt] : res.counts) {
      (void)cnt;
      CHECK((out == 0 || out == 3));
    }
  }
  SUBCASE("same seed, same counts") {
    const auto st = oracles::random_state(3, 321);
    const auto a = sample(st, {0, 1, 2}, 500, 42);
    const auto b = sample(st, {0, 1, 2}, 500, 42);
    CHECK(a.counts == b.counts);
  }
  SUBCASE("marginal over a subset") {
    // (|00> + |11>)/sqrt2 marginal on qubit 1 alone is 50/50
    StateVector bell = StateVector::from_amplitudes({kInvSqrt2, 0.0, 0.0, kInvSqrt2});
    const auto res = sample(bell, {1}, 200000, 11);
    CHECK(std::abs(static_cast<double>(res.counts.at(0)) - 1e5) < 5.0 * std::sqrt(0.25 * 2e5));
  }
}

TEST_CASE("sampled estimator") {
  SUBCASE("identity observable is exact") {
    PauliSum obs(2);
    obs.add("II", {3.25, 0});
    Circuit prep(2);
    prep.append(Gate::h(0));
    const auto grouping = group_terms(obs);
    CHECK(estimate_expectation_sampled(prep, obs, 10, grouping, nullptr, 1) ==
          doctest::Approx(3.25));
  }
  SUBCASE("agrees with the exact expectation within 5 sigma") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto obs = oracles::random_hermitian_sum(2, 4, 8800 + seed);
      if (obs.empty()) continue;
      Circuit prep(2);
      Rng rng(seed);
      prep.append(Gate::ry(0, rng.normal()));
      prep.append(Gate::cnot(0, 1));
      prep.append(Gate::rx(1, rng.normal()));

      StateVector st(2);
      apply_circuit_inplace(st, prep);
      const double exact = expectation(st, obs);

      const std::uint64_t shots = 100000;
      const auto grouping = group_terms(obs);
      const double est =
          estimate_expectation_sampled(prep, obs, shots, grouping, nullptr, 300 + seed);

      double var_bound = 0.0;  // per-shot worst case: sum |c_k| squared total
      double csum = 0.0;
      for (const auto& t : obs.terms())
        if (!t.is_identity()) csum += std::abs(t.coefficient);
      var_bound = csum * csum;
      CHECK(std::abs(est - exact) < 5.0 * std::sqrt(var_bound / shots) + 1e-9);
    }
  }
  SUBCASE("unbiased over repetitions") {
    const auto obs = oracles::random_hermitian_sum(2, 4, 4321);
    Circuit prep(2);
    prep.append(Gate::ry(0, 0.7));
    prep.append(Gate::cnot(0, 1));
    StateVector st(2);
    apply_circuit_inplace(st, prep);
    const double exact = expectation(st, obs);

    const int reps = 100;
    const std::uint64_t shots = 2000;
    double mean = 0.0;
    std::vector<double> vals(reps);
    for (int r = 0; r < reps; ++r) {
      vals[r] = estimate_expectation_sampled(prep, obs, shots, group_terms(obs), nullptr,
                                             split_seed(1234, r));
      mean += vals[r] / reps;
    }
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean) / (reps - 1);
    const double sem = std::sqrt(var / reps);
    CHECK(std::abs(mean - exact) < 3.0 * sem + 1e-12);
  }
}

TEST_CASE("noise model") {
  SUBCASE("zero noise equals the exact circuit") {
    Circuit c(2);
    c.append(Gate::h(0));
    c.append(Gate::cnot(0, 1));
    c.append(Gate::rz(1, 0.3));
    const StateVector init(2);
    const NoiseModel off{0.0, 0.0, 9};
    const auto noisy = apply_noisy_circuit(init, c, off);
    const auto clean = apply_circuit(init, c);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(noisy[i] - clean[i]) < 1e-15);
  }
  SUBCASE("p1 = 1 always injects an error on a one-gate circuit") {
    Circuit c(1);
    c.append(Gate::x(0));
    const NoiseModel always{1.0, 1.0, 0};
    // after X the state is |1>; any injected Pauli either flips it back or
    // only changes the phase, so the outcome distribution reveals the error
    int flips = 0, stays = 0;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
      NoiseModel nm = always;
      nm.seed = seed;
      const auto st = apply_noisy_circuit(StateVector(1), c, nm);
      if (std::abs(st[0]) > 0.5)
        ++flips;  // X error flipped back
      else
        ++stays;  // Y or Z error (phase only)
    }
    CHECK(flips > 0);
    CHECK(stays > 0);
  }
  SUBCASE("expectation decays monotonically with the error rate") {
    Circuit c(1);
    c.append(Gate::h(0));
    c.append(Gate::h(0));
    PauliSum z(1);
    z.add("Z", {1, 0});
    auto mean_z = [&](double p) {
      double acc = 0.0;
      const int traj = 6000;
      for (int i = 0; i < traj; ++i) {
        NoiseModel nm{p, p, split_seed(777, i)};
        acc += expectation(apply_noisy_circuit(StateVector(1), c, nm), z);
      }
      return acc / traj;
    };
    const double clean = mean_z(0.0);
    const double lo = mean_z(0.01);
    const double hi = mean_z(0.05);
    CHECK(clean == doctest::Approx(1.0));
    CHECK(lo < clean);
    CHECK(hi < lo);
  }
}

TEST_CASE("sampled estimate of the reference two-spin cost at theta = 0") {
  const auto h = helpers::sulfanol_hamiltonian();
  Circuit prep(2);
  prep.append(Gate::x(1));
  prep.append(Gate::h(0));
  prep.append(Gate::cnot(0, 1));
  prep.append(Gate::phase(0, 3.14159265358979323846));
  StateVector st(2);
  apply_circuit_inplace(st, prep);
  const double exact = expectation(st, h);
  CHECK(exact == doctest::Approx(-10.9327424345).epsilon(1e-9));

  const std::uint64_t shots = 10000;
  const double est =
      estimate_expectation_sampled(prep, h, shots, group_terms(h), nullptr, 17);
  // per-shot sigma is dominated by the (a - b) Z-combination here
  const double sigma = 5000.0 / std::sqrt(static_cast<double>(shots));
  CHECK(std::abs(est - exact) < 5.0 * sigma);
}

TEST_CASE("circuit text listing round-trips the gate data") {
  Circuit c(3);
  c.append(Gate::h(0));
  c.append(Gate::cnot(1, 2));
  c.append(Gate::rz(2, -0.75));
  c.append(Gate::global_phase(0.25));
  const std::string text = c.to_text();
  CHECK(text.find("qubits 3") != std::string::npos);
  CHECK(text.find("h 0") != std::string::npos);
  CHECK(text.find("cnot 1 2") != std::string::npos);
  CHECK(text.find("rz 2 -0.75") != std::string::npos);
  CHECK(text.find("gphase") != std::string::npos);
}

TEST_CASE("grouping") {
  SUBCASE("qubit-wise commuting example collapses to one circuit") {
    PauliSum s(2);
    s.add("ZI", {1, 0});
    s.add("IZ", {1, 0});
    s.add("ZZ", {1, 0});
    CHECK(group_terms(s).groups.size() == 1);
  }
  SUBCASE("conflicting axes split") {
    PauliSum s(2);
    s.add("ZI", {1, 0});
    s.add("XX", {1, 0});
    CHECK(group_terms(s).groups.size() == 2);
  }
  SUBCASE("sulfanol splits into three groups") {
    const auto g = group_terms(helpers::sulfanol_hamiltonian());
    REQUIRE(g.groups.size() == 3);
    CHECK(g.groups[0].term_indices.size() == 3);  // ZI, IZ, ZZ
    CHECK(g.groups[1].term_indices.size() == 1);  // XX
    CHECK(g.groups[2].term_indices.size() == 1);  // YY
  }
}
