#include "spinsim/spin_system.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "spinsim/errors.hpp"

namespace spinsim {

namespace {
constexpr double kTwoPi = 6.283185307179586477;
}

void SpinSystemSpec::validate() const {
  if (shifts_ppm.empty()) throw input_error("spin system: nucleus list is empty");
  if (!(field_mhz > 0.0)) throw input_error("spin system: field_mhz must be positive");
  if (!labels.empty() && labels.size() != shifts_ppm.size())
    throw input_error("spin system: label/shift count mismatch");
  for (const auto& [key, j_hz] : couplings_hz) {
    (void)j_hz;
    const auto [i, j] = key;
    if (i >= j) throw input_error("spin system: coupling indices must satisfy i < j");
    if (j >= shifts_ppm.size())
      throw input_error("spin system: coupling references nucleus " + std::to_string(j + 1) +
                        " of " + std::to_string(shifts_ppm.size()));
  }
}

AngularFrequencies angular_frequencies(const SpinSystemSpec& spec) {
  spec.validate();
  AngularFrequencies out;
  out.w.reserve(spec.num_spins());
  for (double d : spec.shifts_ppm) out.w.push_back(kTwoPi * spec.field_mhz * (d - spec.offset_ppm));
  return out;
}

PauliSum build_hamiltonian(const SpinSystemSpec& spec) {
  const auto freqs = angular_frequencies(spec);
  const std::size_t n = spec.num_spins();
  PauliSum h(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<PauliAxis> axes(n, PauliAxis::I);
    axes[k] = PauliAxis::Z;
    h.add(PauliString(std::move(axes), cplx{freqs.w[k] / 2.0, 0.0}));
  }
  for (const auto& [key, j_hz] : spec.couplings_hz) {
    const auto [i, j] = key;
    const double c = kTwoPi * j_hz / 4.0;
    for (PauliAxis ax : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
      std::vector<PauliAxis> axes(n, PauliAxis::I);
      axes[i] = ax;
      axes[j] = ax;
      h.add(PauliString(std::move(axes), cplx{c, 0.0}));
    }
  }
  return canonicalize(h);
}

namespace {

using nlohmann::json;

double require_number(const json& obj, const char* key, const char* ctx) {
  if (!obj.contains(key))
    throw input_error(std::string(ctx) + ": missing field '" + key + "'");
  if (!obj[key].is_number())
    throw input_error(std::string(ctx) + ": field '" + key + "' must be a number");
  return obj[key].get<double>();
}

}  // namespace

SpinSystemSpec parse_spec(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("spin-system file: JSON syntax error: ") + e.what());
  }
  if (!root.is_object()) throw input_error("spin-system file: top level must be an object");

  SpinSystemSpec spec;
  spec.field_mhz = require_number(root, "field_mhz", "spin-system file");
  spec.offset_ppm = require_number(root, "offset_ppm", "spin-system file");

  if (!root.contains("nuclei") || !root["nuclei"].is_array())
    throw input_error("spin-system file: missing 'nuclei' array");
  std::size_t idx = 0;
  for (const auto& nuc : root["nuclei"]) {
    ++idx;
    const std::string ctx = "nuclei[" + std::to_string(idx) + "]";
    if (!nuc.is_object()) throw input_error(ctx + ": must be an object");
    spec.shifts_ppm.push_back(require_number(nuc, "shift_ppm", ctx.c_str()));
    spec.labels.push_back(nuc.value("label", "H" + std::to_string(idx)));
  }
  if (spec.shifts_ppm.empty()) throw input_error("spin-system file: nucleus list is empty");

  if (root.contains("couplings")) {
    if (!root["couplings"].is_array())
      throw input_error("spin-system file: 'couplings' must be an array");
    idx = 0;
    for (const auto& cpl : root["couplings"]) {
      ++idx;
      const std::string ctx = "couplings[" + std::to_string(idx) + "]";
      const auto iv = require_number(cpl, "i", ctx.c_str());
      const auto jv = require_number(cpl, "j", ctx.c_str());
      const double j_hz = require_number(cpl, "j_hz", ctx.c_str());
      const long i1 = std::lround(iv), j1 = std::lround(jv);
      if (i1 < 1 || j1 < 1 || static_cast<std::size_t>(i1) > spec.shifts_ppm.size() ||
          static_cast<std::size_t>(j1) > spec.shifts_ppm.size())
        throw input_error(ctx + ": nucleus index out of range (have " +
                          std::to_string(spec.shifts_ppm.size()) + " nuclei)");
      if (i1 == j1) throw input_error(ctx + ": self-coupling (i == j) is not allowed");
      const auto key = std::make_pair(static_cast<std::size_t>(std::min(i1, j1) - 1),
                                      static_cast<std::size_t>(std::max(i1, j1) - 1));
      auto [it, inserted] = spec.couplings_hz.emplace(key, j_hz);
      if (!inserted && it->second != j_hz)
        throw input_error(ctx + ": conflicting duplicate for pair (" + std::to_string(i1) +
                          "," + std::to_string(j1) + ")");
    }
  }

  spec.validate();
  return spec;
}

SpinSystemSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open spin-system file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

}  // namespace spinsim
