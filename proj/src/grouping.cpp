#include "spinsim/grouping.hpp"

namespace spinsim {

PauliGrouping group_terms(const PauliSum& h) {
  PauliGrouping out;
  const std::size_t n = h.qubit_count();
  for (std::size_t ti = 0; ti < h.terms().size(); ++ti) {
    const auto& t = h.terms()[ti];
    if (t.is_identity()) {
      out.identity_coefficient += t.coefficient;
      continue;
    }
    bool placed = false;
    for (auto& g : out.groups) {
      bool fits = true;
      for (std::size_t q = 0; q < n; ++q) {
        const PauliAxis a = g.measurement_axes[q], b = t.axes[q];
        if (a != PauliAxis::I && b != PauliAxis::I && a != b) {
          fits = false;
          break;
        }
      }
      if (fits) {
        g.term_indices.push_back(ti);
        for (std::size_t q = 0; q < n; ++q)
          if (t.axes[q] != PauliAxis::I) g.measurement_axes[q] = t.axes[q];
        placed = true;
        break;
      }
    }
    if (!placed) {
      PauliGrouping::Group g;
      g.term_indices.push_back(ti);
      g.measurement_axes = t.axes;
      out.groups.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace spinsim
