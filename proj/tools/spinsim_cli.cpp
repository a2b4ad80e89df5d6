// spinsim: build spin-system Hamiltonians, solve them classically or with
// the simulated quantum backends, and synthesize FID/spectrum CSVs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spinsim/errors.hpp"
#include "spinsim/exact_diag.hpp"
#include "spinsim/simulator.hpp"
#include "spinsim/spectrum.hpp"
#include "spinsim/spin_system.hpp"
#include "spinsim/trotter_qpe.hpp"
#include "spinsim/vqe.hpp"
#include "spinsim/zne.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kInvSqrt2 = 0.70710678118654752440;

using namespace spinsim;

struct CommonArgs {
  std::string input;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::uint64_t resolved_seed = 0;

  void resolve_seed() {
    if (seed) {
      resolved_seed = *seed;
    } else {
      std::random_device rd;
      resolved_seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
  }

  std::filesystem::path out_path(const std::string& name) const {
    std::filesystem::path dir = out_dir;
    if (dir.empty()) {
      if (const char* env = std::getenv("SPINSIM_OUT")) dir = env;
      else dir = ".";
    }
    std::filesystem::create_directories(dir);
    return dir / name;
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string csv_header(const std::string& config, std::uint64_t seed) {
  std::ostringstream os;
  os << "# spinsim " << kVersion << " config=" << std::hex << fnv1a(config) << std::dec
     << " seed=" << seed << "\n";
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw input_error("cannot open output file: " + path.string());
  out << content;
  if (!out) throw input_error("failed writing output file: " + path.string());
}

StateVector default_vqe_initial(int n_spins) {
  if (n_spins == 2)
    return StateVector::from_amplitudes({0.0, kInvSqrt2, -kInvSqrt2, 0.0});
  return StateVector(n_spins);
}

std::vector<StateVector> sweep_candidates(int n_spins) {
  std::vector<StateVector> out;
  out.push_back(default_vqe_initial(n_spins));
  out.push_back(StateVector(n_spins));  // |0...0>
  out.push_back(StateVector::basis(n_spins, (std::size_t{1} << n_spins) - 1));
  return out;
}

struct EigenSource {
  EigenDecomposition decomposition;
  std::string description;
};

// --- subcommand payloads ---

struct HamiltonianCmd {
  CommonArgs common;
  std::string dense_csv;

  int run() {
    const auto spec = load_spec_file(common.input);
    const auto h = build_hamiltonian(spec);
    std::cout << "spin system: " << spec.num_spins() << " nuclei, field "
              << spec.field_mhz << " MHz, offset " << spec.offset_ppm << " ppm\n";
    std::cout << "hamiltonian terms (rad/s):\n";
    for (const auto& t : h.terms())
      std::cout << "  " << t.axes_string() << "  " << fmt(t.coefficient.real()) << "\n";
    if (!dense_csv.empty()) {
      const auto d = to_dense(h);
      std::ostringstream os;
      os << csv_header("hamiltonian " + common.input, 0);
      for (std::size_t r = 0; r < d.dim(); ++r) {
        for (std::size_t c = 0; c < d.dim(); ++c) {
          if (c) os << ",";
          os << fmt(d.at(r, c).real());
        }
        os << "\n";
      }
      write_file(common.out_path(dense_csv), os.str());
      std::cout << "dense matrix written to " << common.out_path(dense_csv).string() << "\n";
    }
    return 0;
  }
};

struct EigCmd {
  CommonArgs common;
  std::string backend = "exact";
  int ancillas = 12;
  int trotter = 10;
  int states = 6;
  int attempts = 10;
  std::uint64_t shots = 0;
  int levels = 2;
  bool w_sweep = false;
  std::optional<double> w_value;
  double noise_p1 = 0.0;
  double noise_p2 = 0.0;
  bool zne = false;
  std::string fold_counts = "0,1,2,3,4";

  VqeOptions vqe_options(int n_spins) const {
    VqeOptions opts;
    opts.shots = shots;
    opts.seed = common.resolved_seed;
    if (noise_p1 > 0.0 || noise_p2 > 0.0) {
      if (n_spins != 2)
        throw input_error("noisy VQE needs the two-spin preparation circuit");
      opts.noise = NoiseModel{noise_p1, noise_p2, common.resolved_seed};
      opts.initial_prep = prepare_singlet_like();
      if (opts.shots == 0) opts.shots = 10000;
    }
    if (zne) {
      ZneConfig cfg;
      cfg.fold_counts = parse_folds(fold_counts);
      cfg.shots_per_scale = opts.shots > 0 ? opts.shots : 10000;
      opts.mitigation = cfg;
      if (!opts.initial_prep && n_spins == 2) opts.initial_prep = prepare_singlet_like();
    }
    return opts;
  }

  static std::vector<int> parse_folds(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      out.push_back(std::stoi(tok));
    }
    if (out.empty()) throw input_error("--fold-counts: empty list");
    return out;
  }

  int run() {
    const auto spec = load_spec_file(common.input);
    const auto h = build_hamiltonian(spec);
    const int n = static_cast<int>(spec.num_spins());

    if (backend == "exact") {
      const auto dec = eigen_decompose(to_dense(h));
      std::cout << "eigenvalues (rad/s):\n";
      for (double lam : dec.eigenvalues) std::cout << "  " << fmt(lam) << "\n";
      std::cout << "eigenvectors (columns):\n";
      for (std::size_t r = 0; r < dec.vectors.dim(); ++r) {
        std::cout << " ";
        for (std::size_t c = 0; c < dec.vectors.dim(); ++c)
          std::cout << " " << fmt(dec.vectors.at(r, c).real());
        std::cout << "\n";
      }
      return 0;
    }

    if (backend == "qpe") {
      QpeConfig cfg;
      cfg.t_ancillas = ancillas;
      cfg.trotter_steps = trotter;
      cfg.shots = static_cast<int>(std::max<std::uint64_t>(shots, 1));
      cfg.max_attempts = attempts;
      cfg.seed = common.resolved_seed;
      std::vector<StateVector> inits;
      Rng rng(split_seed(common.resolved_seed, 999));
      for (int s = 0; s < states; ++s) {
        std::vector<cplx> amps(std::size_t{1} << n);
        for (auto& a : amps) a = {rng.normal(), rng.normal()};
        inits.push_back(StateVector::from_amplitudes(std::move(amps), true));
      }
      const auto estimates = run_qpe(h, cfg, inits);
      std::cout << "qpe estimates (seed " << common.resolved_seed << "):\n";
      std::cout << "  raw_bin  phase  eigenvalue_rad_s  hits  verified\n";
      for (const auto& e : estimates)
        std::cout << "  " << e.raw_index << "  " << fmt(e.phase) << "  "
                  << fmt(e.eigenvalue) << "  " << e.hits << "  "
                  << (e.verified ? "yes" : "no") << "\n";
      return 0;
    }

    const XyAnsatz ansatz(n);
    const auto opts = vqe_options(n);

    if (backend == "vqe") {
      const auto res = vqe_minimize(h, ansatz, default_vqe_initial(n),
                                    std::vector<double>(ansatz.parameter_count(), 0.0), opts);
      std::cout << "vqe eigenvalue: " << fmt(res.eigenvalue) << " rad/s ("
                << (res.converged ? "converged" : "not converged") << ", "
                << res.evaluations << " evaluations, seed " << common.resolved_seed
                << ")\n";
      std::cout << "theta*:";
      for (double t : res.theta_star) std::cout << " " << fmt(t);
      std::cout << "\neigenvector:";
      for (std::size_t i = 0; i < res.eigenvector.size(); ++i)
        std::cout << " " << fmt(res.eigenvector[i].real());
      std::cout << "\ncost history (best-so-far):";
      for (std::size_t i = 0; i < res.cost_history.size(); i += 10)
        std::cout << " " << fmt(res.cost_history[i]);
      std::cout << " " << fmt(res.cost_history.back()) << "\n";
      return res.converged ? 0 : 3;
    }

    if (backend == "vqe-folded") {
      if (!w_sweep && !w_value)
        throw input_error("--backend vqe-folded needs --w or --w-sweep");
      if (w_sweep) {
        const auto points = folded_sweep(h, ansatz, sweep_candidates(n), opts);
        std::cout << "w_rad_s  eigenvalue_rad_s  folded_cost  converged  verified\n";
        for (const auto& p : points)
          std::cout << fmt(p.w) << "  " << fmt(p.vqe.eigenvalue) << "  "
                    << fmt(p.vqe.final_cost) << "  " << (p.vqe.converged ? "yes" : "no")
                    << "  " << (p.verified ? "yes" : "no") << "\n";
        return 0;
      }
      const auto res = folded_vqe(h, *w_value, ansatz, default_vqe_initial(n),
                                  std::vector<double>(ansatz.parameter_count(), 0.0), opts);
      std::cout << "folded vqe at w=" << fmt(*w_value) << ": eigenvalue "
                << fmt(res.eigenvalue) << " rad/s ("
                << (res.converged ? "converged" : "not converged") << ")\n";
      return res.converged ? 0 : 3;
    }

    if (backend == "vqe-deflation") {
      const auto out = deflation_vqe(h, levels, {}, ansatz, default_vqe_initial(n),
                                     std::vector<double>(ansatz.parameter_count(), 0.0),
                                     opts);
      std::cout << "level  eigenvalue_rad_s  converged  verified\n";
      for (std::size_t i = 0; i < out.size(); ++i)
        std::cout << i << "  " << fmt(out[i].vqe.eigenvalue) << "  "
                  << (out[i].vqe.converged ? "yes" : "no") << "  "
                  << (out[i].verified ? "yes" : "no") << "\n";
      return 0;
    }

    throw input_error("unknown backend: " + backend);
  }
};

struct SpectrumCmd {
  CommonArgs common;
  std::string backend = "exact";
  int d = 4096;
  double sw = 0.0;  // 0: auto from the 12 ppm window
  double t2 = 0.5;
  double ppm_min = -1e300, ppm_max = 1e300;
  std::uint64_t shots = 0;
  bool use_fft = true;
  bool literal_time_axis = false;

  EigenSource eigen_source(const SpinSystemSpec& spec, const PauliSum& h) const {
    if (backend == "exact")
      return {eigen_decompose(to_dense(h)), "exact diagonalization"};
    if (backend == "vqe") {
      const int n = static_cast<int>(spec.num_spins());
      const XyAnsatz ansatz(n);
      VqeOptions opts;
      opts.shots = shots;
      opts.seed = common.resolved_seed;
      const auto points = folded_sweep(h, ansatz, sweep_candidates(n), opts);
      // cluster verified estimates, ascending
      std::vector<const FoldedSweepPoint*> verified;
      for (const auto& p : points)
        if (p.verified) verified.push_back(&p);
      std::sort(verified.begin(), verified.end(),
                [](auto* a, auto* b) { return a->vqe.eigenvalue < b->vqe.eigenvalue; });
      const std::size_t dim = std::size_t{1} << n;
      std::vector<const FoldedSweepPoint*> unique;
      for (auto* p : verified)
        if (unique.empty() ||
            std::abs(p->vqe.eigenvalue - unique.back()->vqe.eigenvalue) > 1.0)
          unique.push_back(p);
      if (unique.size() != dim)
        throw numeric_error("vqe backend recovered " + std::to_string(unique.size()) +
                            " of " + std::to_string(dim) + " eigenpairs");
      EigenDecomposition dec;
      dec.vectors = DenseMatrix(dim);
      for (std::size_t k = 0; k < dim; ++k) {
        dec.eigenvalues.push_back(unique[k]->vqe.eigenvalue);
        for (std::size_t r = 0; r < dim; ++r)
          dec.vectors.at(r, k) = unique[k]->vqe.eigenvector[r];
      }
      return {std::move(dec), "vqe folded-spectrum sweep"};
    }
    throw input_error("spectrum backend must be exact or vqe");
  }

  int run() {
    const auto spec = load_spec_file(common.input);
    const auto h = build_hamiltonian(spec);
    const auto source = eigen_source(spec, h);

    const double spectral_width = sw > 0.0 ? sw : 12.0 * spec.field_mhz;
    FidOptions fopts;
    fopts.t2_seconds = t2;
    fopts.literal_time_axis = literal_time_axis;
    const auto fid = compute_fid(source.decomposition, d, spectral_width, fopts);
    const auto spectrum = fid_to_spectrum(fid, spec, use_fft);

    const std::string config = "spectrum " + backend + " d=" + std::to_string(d) +
                               " sw=" + fmt(spectral_width) + " t2=" + fmt(t2);
    const std::string header = csv_header(config, common.resolved_seed);

    // All contents are rendered before the first write so a failure cannot
    // leave a partial output set behind.
    std::ostringstream fid_csv;
    fid_csv << header << "t_seconds,re,im\n";
    for (int j = 0; j < d; ++j) {
      const double t = literal_time_axis ? j * spectral_width : j / spectral_width;
      fid_csv << fmt(t) << "," << fmt(fid.points[j].real()) << ","
              << fmt(fid.points[j].imag()) << "\n";
    }

    std::ostringstream spec_csv;
    spec_csv << header << "hz,ppm,intensity\n";
    double max_intensity = 0.0;
    for (std::size_t k = 0; k < spectrum.hz.size(); ++k) {
      if (spectrum.ppm[k] < ppm_min || spectrum.ppm[k] > ppm_max) continue;
      spec_csv << fmt(spectrum.hz[k]) << "," << fmt(spectrum.ppm[k]) << ","
               << fmt(spectrum.intensity[k]) << "\n";
      max_intensity = std::max(max_intensity, spectrum.intensity[k]);
    }

    const auto peaks = peak_list(spectrum, 0.05 * std::max(max_intensity, 1e-300));
    std::ostringstream peaks_csv;
    peaks_csv << header << "ppm,intensity\n";
    for (const auto& [ppm, inten] : peaks) {
      if (ppm < ppm_min || ppm > ppm_max) continue;
      peaks_csv << fmt(ppm) << "," << fmt(inten) << "\n";
    }

    write_file(common.out_path("fid.csv"), fid_csv.str());
    write_file(common.out_path("spectrum.csv"), spec_csv.str());
    write_file(common.out_path("peaks.csv"), peaks_csv.str());

    std::cout << "eigen source: " << source.description << "\n";
    std::cout << "wrote " << common.out_path("fid.csv").string() << ", "
              << common.out_path("spectrum.csv").string() << ", "
              << common.out_path("peaks.csv").string() << "\n";
    std::cout << "peaks (ppm, intensity):\n";
    for (const auto& [ppm, inten] : peaks)
      std::cout << "  " << fmt(ppm) << "  " << fmt(inten) << "\n";
    return 0;
  }
};

struct ZneDemoCmd {
  CommonArgs common;
  std::uint64_t shots = 10000;
  double noise_p1 = 0.001;
  double noise_p2 = 0.01;
  std::string fold_counts = "0,1,2,3,4";

  int run() {
    const auto spec = load_spec_file(common.input);
    if (spec.num_spins() != 2)
      throw input_error("zne-demo uses the two-spin preparation circuit");
    const auto h = build_hamiltonian(spec);

    // converge in exact mode, then compare estimators at theta*
    const XyAnsatz ansatz(2);
    VqeOptions exact_opts;
    const auto ground =
        vqe_minimize(h, ansatz, default_vqe_initial(2), {0.0, 0.0}, exact_opts);
    Circuit prep = prepare_singlet_like();
    prep.append(ansatz.circuit(ground.theta_star));
    StateVector st(2);
    apply_circuit_inplace(st, prep);
    const double ideal = expectation(st, h);

    const NoiseModel noise{noise_p1, noise_p2, common.resolved_seed};
    ZneConfig cfg;
    cfg.fold_counts = EigCmd::parse_folds(fold_counts);
    cfg.shots_per_scale = shots;
    cfg.seed = common.resolved_seed;
    cfg.validate();

    const auto grouping = group_terms(h);
    std::ostringstream csv;
    csv << csv_header("zne-demo p1=" + fmt(noise_p1) + " p2=" + fmt(noise_p2) +
                          " shots=" + std::to_string(shots),
                      common.resolved_seed);
    csv << "kind,lambda,value\n";
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < cfg.fold_counts.size(); ++i) {
      const int nf = cfg.fold_counts[i];
      const auto folded = fold_circuit(prep, nf);
      NoiseModel nm = noise;
      const double est = estimate_expectation_sampled(folded, h, shots, grouping, &nm,
                                                      split_seed(cfg.seed, i));
      points.emplace_back(1.0 + 2.0 * nf, est);
      csv << "scale," << fmt(1.0 + 2.0 * nf) << "," << fmt(est) << "\n";
    }
    const double unmitigated = points.front().second;
    const double mitigated = extrapolate_to_zero(
        points, std::min<int>(static_cast<int>(points.size()) - 1, cfg.max_degree));
    csv << "ideal,0," << fmt(ideal) << "\n";
    csv << "unmitigated,1," << fmt(unmitigated) << "\n";
    csv << "mitigated,0," << fmt(mitigated) << "\n";
    write_file(common.out_path("zne.csv"), csv.str());

    std::cout << "ideal        " << fmt(ideal) << "\n";
    std::cout << "unmitigated  " << fmt(unmitigated) << "  (error "
              << fmt(std::abs(unmitigated - ideal)) << ")\n";
    std::cout << "mitigated    " << fmt(mitigated) << "  (error "
              << fmt(std::abs(mitigated - ideal)) << ")\n";
    std::cout << "wrote " << common.out_path("zne.csv").string() << "\n";
    return 0;
  }
};

void add_common(CLI::App* cmd, CommonArgs& common, bool needs_seed) {
  cmd->add_option("--input", common.input, "spin-system JSON file")->required();
  cmd->add_option("--out", common.out_dir,
                  "output directory (default: $SPINSIM_OUT or the working directory)");
  if (needs_seed)
    cmd->add_option("--seed", common.seed,
                    "RNG seed; auto-generated and recorded in outputs when omitted");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin-system NMR simulation toolkit"};
  app.require_subcommand(1);

  HamiltonianCmd ham;
  auto* ham_cmd = app.add_subcommand("hamiltonian", "print the Pauli-encoded Hamiltonian");
  add_common(ham_cmd, ham.common, false);
  ham_cmd->add_option("--dense", ham.dense_csv, "also write the dense matrix CSV");

  EigCmd eig;
  auto* eig_cmd = app.add_subcommand("eig", "compute eigenvalues with a chosen backend");
  add_common(eig_cmd, eig.common, true);
  eig_cmd->add_option("--backend", eig.backend,
                      "exact | qpe | vqe | vqe-folded | vqe-deflation");
  eig_cmd->add_option("--ancillas", eig.ancillas, "qpe estimation qubits");
  eig_cmd->add_option("--trotter", eig.trotter, "qpe Trotter steps");
  eig_cmd->add_option("--states", eig.states, "qpe random initial states");
  eig_cmd->add_option("--max-attempts", eig.attempts, "qpe attempts per initial state");
  eig_cmd->add_option("--shots", eig.shots, "shots per estimate (0 = exact expectations)");
  eig_cmd->add_option("--levels", eig.levels, "deflation levels");
  eig_cmd->add_flag("--w-sweep", eig.w_sweep, "folded: sweep w across the eigen range");
  eig_cmd->add_option("--w", eig.w_value, "folded: single w value (rad/s)");
  eig_cmd->add_option("--noise-p1", eig.noise_p1, "depolarizing rate per 1-qubit gate");
  eig_cmd->add_option("--noise-p2", eig.noise_p2, "depolarizing rate per 2-qubit gate");
  eig_cmd->add_flag("--zne", eig.zne, "mitigate sampled costs by zero-noise extrapolation");
  eig_cmd->add_option("--fold-counts", eig.fold_counts, "zne fold counts (comma list)");

  SpectrumCmd spec_cmd_data;
  auto* spec_cmd = app.add_subcommand("spectrum", "synthesize the FID and 1H spectrum");
  add_common(spec_cmd, spec_cmd_data.common, true);
  spec_cmd->add_option("--backend", spec_cmd_data.backend, "exact | vqe");
  spec_cmd->add_option("--d", spec_cmd_data.d, "FID points");
  spec_cmd->add_option("--sw", spec_cmd_data.sw, "spectral width in Hz");
  spec_cmd->add_option("--t2", spec_cmd_data.t2, "apodization T2 in seconds (0 = none)");
  spec_cmd->add_option("--ppm-min", spec_cmd_data.ppm_min, "crop: lowest ppm kept");
  spec_cmd->add_option("--ppm-max", spec_cmd_data.ppm_max, "crop: highest ppm kept");
  spec_cmd->add_option("--shots", spec_cmd_data.shots, "vqe backend shots (0 = exact)");
  spec_cmd->add_flag("!--no-fft", spec_cmd_data.use_fft,
                     "use the direct O(d^2) transform instead of the radix-2 path");
  spec_cmd->add_flag("--literal-time-axis", spec_cmd_data.literal_time_axis,
                     "read the FID time axis literally as t_j = j * SW");

  ZneDemoCmd zne_demo;
  auto* zne_cmd = app.add_subcommand("zne-demo",
                                     "ideal / unmitigated / mitigated cost comparison");
  add_common(zne_cmd, zne_demo.common, true);
  zne_cmd->add_option("--shots", zne_demo.shots, "shots per noise scale");
  zne_cmd->add_option("--noise-p1", zne_demo.noise_p1, "depolarizing rate per 1-qubit gate");
  zne_cmd->add_option("--noise-p2", zne_demo.noise_p2, "depolarizing rate per 2-qubit gate");
  zne_cmd->add_option("--fold-counts", zne_demo.fold_counts, "fold counts (comma list)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ham_cmd->parsed()) return ham.run();
    if (eig_cmd->parsed()) {
      eig.common.resolve_seed();
      return eig.run();
    }
    if (spec_cmd->parsed()) {
      spec_cmd_data.common.resolve_seed();
      return spec_cmd_data.run();
    }
    if (zne_cmd->parsed()) {
      zne_demo.common.resolve_seed();
      return zne_demo.run();
    }
  } catch (const input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 4;
  } catch (const numeric_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
