#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "spinsim/dense.hpp"

namespace spinsim {

enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(PauliAxis a);
PauliAxis axis_from_char(char c);

/// One weighted tensor product of single-qubit Pauli operators. The axes
/// vector has one entry per qubit; the accumulated scalar (including phases
/// picked up during multiplication) lives in `coefficient`.
struct PauliString {
  std::vector<PauliAxis> axes;
  cplx coefficient{1.0, 0.0};

  PauliString() = default;
  PauliString(std::vector<PauliAxis> ax, cplx c) : axes(std::move(ax)), coefficient(c) {}

  /// Parse e.g. "XIZ"; one character per qubit.
  static PauliString parse(const std::string& text, cplx c = cplx{1.0, 0.0});

  std::size_t num_qubits() const { return axes.size(); }
  bool is_identity() const;
  std::string axes_string() const;
};

/// Exact product a*b; the single-axis phase table folds into the coefficient.
PauliString multiply(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings over a fixed qubit count: the universal
/// operator representation used across the toolkit. Hermitian iff every
/// canonical coefficient is real.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(std::size_t qubit_count) : n_(qubit_count) {}

  static PauliSum from_terms(std::size_t qubit_count, std::vector<PauliString> terms);

  std::size_t qubit_count() const { return n_; }
  const std::vector<PauliString>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  void add(PauliString term);
  void add(const std::string& axes, cplx c);
  PauliSum& operator+=(const PauliSum& rhs);
  PauliSum scaled(cplx s) const;

  bool is_hermitian(double tol = 1e-9) const;
  std::string to_string() const;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> terms_;
};

/// Merges duplicate axis sequences (first-occurrence order is kept) and drops
/// terms whose merged coefficient is below `tol`.
PauliSum canonicalize(const PauliSum& s, double tol = 1e-12);

/// Generic product of two sums (canonicalized).
PauliSum multiply(const PauliSum& a, const PauliSum& b);

/// Kronecker realization; throws resource_error beyond `max_qubits`.
DenseMatrix to_dense(const PauliSum& s, std::size_t max_qubits = 12);

/// 2^n times the all-identity coefficient; no densification. Exact for
/// Hermitian sums (the value is real by construction there).
double trace(const PauliSum& s);

/// tr(H^2) = 2^n * sum_k c_k^2 for a Hermitian sum, using the trace
/// orthogonality of distinct Pauli strings. Throws on non-Hermitian input.
double trace_of_square(const PauliSum& s);

struct EigenRangeBounds {
  double lower;
  double upper;
};

/// Mean/variance eigenvalue bracket m +- sigma*sqrt(2^n - 1) with
/// m = tr(H)/2^n and sigma^2 = tr(H^2)/2^n - m^2. Guaranteed to contain the
/// whole spectrum of a Hermitian sum.
EigenRangeBounds eigen_range_bounds(const PauliSum& s);

/// Canonicalized Pauli form of (H - w*I)^2, built by generic term-by-term
/// multiplication. Hermitian with nonnegative spectrum.
PauliSum square_shifted(const PauliSum& s, double w);

/// First-order product-formula error bound
///   (t^2 / 2r) * sum_j || sum_{k>j} [H_k, H_j] ||_F
/// with commutators evaluated in exact Pauli algebra. Frobenius norms use the
/// trace orthogonality identity ||sum c_m P_m||_F = sqrt(2^n sum |c_m|^2),
/// which equals the norm of the dense realization.
double trotter_error_bound(const PauliSum& s, double t, int r);

}  // namespace spinsim
