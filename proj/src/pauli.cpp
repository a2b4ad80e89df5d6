#include "spinsim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "spinsim/errors.hpp"

namespace spinsim {

namespace {

constexpr cplx kOne{1.0, 0.0};
constexpr cplx kImag{0.0, 1.0};

// Result axis of sigma_a * sigma_b, indexed [a][b].
constexpr PauliAxis kProdAxis[4][4] = {
    {PauliAxis::I, PauliAxis::X, PauliAxis::Y, PauliAxis::Z},
    {PauliAxis::X, PauliAxis::I, PauliAxis::Z, PauliAxis::Y},
    {PauliAxis::Y, PauliAxis::Z, PauliAxis::I, PauliAxis::X},
    {PauliAxis::Z, PauliAxis::Y, PauliAxis::X, PauliAxis::I},
};

// Phase of sigma_a * sigma_b as a power of i, indexed [a][b]:
// XY = iZ, YX = -iZ (i.e. i^3), and cyclic.
constexpr int kProdPhasePow[4][4] = {
    {0, 0, 0, 0},
    {0, 0, 1, 3},
    {0, 3, 0, 1},
    {0, 1, 3, 0},
};

cplx ipow(int p) {
  switch (p & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

char axis_char(PauliAxis a) {
  static constexpr char kChars[4] = {'I', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(a)];
}

PauliAxis axis_from_char(char c) {
  switch (c) {
    case 'I': return PauliAxis::I;
    case 'X': return PauliAxis::X;
    case 'Y': return PauliAxis::Y;
    case 'Z': return PauliAxis::Z;
    default: throw input_error(std::string("unknown Pauli axis character '") + c + "'");
  }
}

PauliString PauliString::parse(const std::string& text, cplx c) {
  PauliString s;
  s.axes.reserve(text.size());
  for (char ch : text) s.axes.push_back(axis_from_char(ch));
  s.coefficient = c;
  return s;
}

bool PauliString::is_identity() const {
  return std::all_of(axes.begin(), axes.end(),
                     [](PauliAxis a) { return a == PauliAxis::I; });
}

std::string PauliString::axes_string() const {
  std::string out;
  out.reserve(axes.size());
  for (PauliAxis a : axes) out.push_back(axis_char(a));
  return out;
}

PauliString multiply(const PauliString& a, const PauliString& b) {
  if (a.axes.size() != b.axes.size())
    throw input_error("PauliString multiply: length mismatch");
  PauliString out;
  out.axes.resize(a.axes.size());
  int phase_pow = 0;
  for (std::size_t k = 0; k < a.axes.size(); ++k) {
    const int ia = static_cast<int>(a.axes[k]);
    const int ib = static_cast<int>(b.axes[k]);
    out.axes[k] = kProdAxis[ia][ib];
    phase_pow += kProdPhasePow[ia][ib];
  }
  out.coefficient = a.coefficient * b.coefficient * ipow(phase_pow);
  return out;
}

PauliSum PauliSum::from_terms(std::size_t qubit_count, std::vector<PauliString> terms) {
  PauliSum s(qubit_count);
  for (auto& t : terms) s.add(std::move(t));
  return s;
}

void PauliSum::add(PauliString term) {
  if (term.axes.size() != n_)
    throw input_error("PauliSum: term length does not match qubit count");
  terms_.push_back(std::move(term));
}

void PauliSum::add(const std::string& axes, cplx c) { add(PauliString::parse(axes, c)); }

PauliSum& PauliSum::operator+=(const PauliSum& rhs) {
  if (rhs.n_ != n_) throw input_error("PauliSum: qubit count mismatch");
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  return *this;
}

PauliSum PauliSum::scaled(cplx s) const {
  PauliSum out(*this);
  for (auto& t : out.terms_) t.coefficient *= s;
  return out;
}

bool PauliSum::is_hermitian(double tol) const {
  const PauliSum c = canonicalize(*this, 0.0);
  for (const auto& t : c.terms())
    if (std::abs(t.coefficient.imag()) > tol) return false;
  return true;
}

std::string PauliSum::to_string() const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    if (std::abs(t.coefficient.imag()) > 1e-14)
      os << "(" << t.coefficient.real() << (t.coefficient.imag() < 0 ? "" : "+")
         << t.coefficient.imag() << "i)";
    else
      os << t.coefficient.real();
    os << "*" << t.axes_string();
  }
  if (first) os << "0";
  return os.str();
}

PauliSum canonicalize(const PauliSum& s, double tol) {
  std::unordered_map<std::string, std::size_t> index;
  std::vector<PauliString> merged;
  merged.reserve(s.size());
  for (const auto& t : s.terms()) {
    const std::string key = t.axes_string();
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, merged.size());
      merged.push_back(t);
    } else {
      merged[it->second].coefficient += t.coefficient;
    }
  }
  PauliSum out(s.qubit_count());
  for (auto& t : merged)
    if (std::abs(t.coefficient) > tol) out.add(std::move(t));
  return out;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.qubit_count() != b.qubit_count())
    throw input_error("PauliSum multiply: qubit count mismatch");
  PauliSum prod(a.qubit_count());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) prod.add(multiply(ta, tb));
  return canonicalize(prod);
}

DenseMatrix to_dense(const PauliSum& s, std::size_t max_qubits) {
  const std::size_t n = s.qubit_count();
  if (n > max_qubits)
    throw resource_error("to_dense: " + std::to_string(n) +
                         " qubits exceeds the dense cap of " + std::to_string(max_qubits));
  const std::size_t dim = std::size_t{1} << n;
  DenseMatrix m(dim);
  // Each Pauli string has exactly one nonzero entry per column: for column j,
  // the row is j with X/Y bits flipped and the value is a phase times the
  // coefficient.
  for (const auto& t : s.terms()) {
    std::uint64_t xflip = 0, sign_mask = 0;
    int ny = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t bit = std::uint64_t{1} << (n - 1 - k);  // qubit 0 = MSB
      switch (t.axes[k]) {
        case PauliAxis::I: break;
        case PauliAxis::X: xflip |= bit; break;
        case PauliAxis::Y: xflip |= bit; sign_mask |= bit; ++ny; break;
        case PauliAxis::Z: sign_mask |= bit; break;
      }
    }
    const cplx base = t.coefficient * ipow(ny);
    for (std::uint64_t col = 0; col < dim; ++col) {
      const std::uint64_t row = col ^ xflip;
      const bool neg = std::popcount(col & sign_mask) & 1;
      m.at(row, col) += neg ? -base : base;
    }
  }
  return m;
}

double trace(const PauliSum& s) {
  const double dim = std::ldexp(1.0, static_cast<int>(s.qubit_count()));
  cplx c{};
  for (const auto& t : s.terms())
    if (t.is_identity()) c += t.coefficient;
  return c.real() * dim;
}

double trace_of_square(const PauliSum& s) {
  const PauliSum c = canonicalize(s, 0.0);
  double sum = 0.0;
  for (const auto& t : c.terms()) {
    if (std::abs(t.coefficient.imag()) > 1e-9 * (1.0 + std::abs(t.coefficient)))
      throw input_error("trace_of_square: sum is not Hermitian");
    sum += t.coefficient.real() * t.coefficient.real();
  }
  return std::ldexp(sum, static_cast<int>(c.qubit_count()));
}

EigenRangeBounds eigen_range_bounds(const PauliSum& s) {
  const double dim = std::ldexp(1.0, static_cast<int>(s.qubit_count()));
  const double m = trace(s) / dim;
  const double ms = trace_of_square(s) / dim;
  const double var = std::max(0.0, ms - m * m);
  const double r = std::sqrt(var) * std::sqrt(dim - 1.0);
  return {m - r, m + r};
}

PauliSum square_shifted(const PauliSum& s, double w) {
  PauliSum shifted = canonicalize(s);
  shifted.add(std::string(s.qubit_count(), 'I'), cplx{-w, 0.0});
  shifted = canonicalize(shifted);
  return multiply(shifted, shifted);
}

double trotter_error_bound(const PauliSum& s, double t, int r) {
  if (r < 1) throw input_error("trotter_error_bound: r must be >= 1");
  const PauliSum c = canonicalize(s);
  const auto& terms = c.terms();
  const double dim = std::ldexp(1.0, static_cast<int>(c.qubit_count()));
  double total = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    PauliSum inner(c.qubit_count());
    for (std::size_t k = j + 1; k < terms.size(); ++k) {
      inner.add(multiply(terms[k], terms[j]));
      PauliString ba = multiply(terms[j], terms[k]);
      ba.coefficient = -ba.coefficient;
      inner.add(std::move(ba));
    }
    double csum = 0.0;
    for (const auto& term : canonicalize(inner).terms()) csum += std::norm(term.coefficient);
    total += std::sqrt(dim * csum);
  }
  return t * t / (2.0 * r) * total;
}

}  // namespace spinsim
