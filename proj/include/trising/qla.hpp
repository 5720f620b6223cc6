#pragma once

// Dense complex linear algebra for few-qubit Hilbert spaces (dim <= 8 in
// practice, though nothing below hard-codes that).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace trising {

using cplx = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given dimension.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; throws UsageError unless rows.size() == dim*dim.
  ComplexMatrix(std::size_t dim, std::vector<cplx> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const cplx> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  cplx trace() const;
  /// Largest |entry|.
  double max_abs() const;
  double frobenius_norm() const;
  /// max |A - A^dagger| entry.
  double hermiticity_defect() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// max |a - b| entry; dims must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Pure state on n qubits (2^n amplitudes), unit norm to 1e-12.
class StateVector {
 public:
  /// Throws ValidationError if the size is not a power of two >= 2 or the
  /// norm deviates from 1 by more than 1e-12.
  explicit StateVector(std::vector<cplx> amplitudes);
  /// Normalizes first; throws ValidationError on a zero vector.
  static StateVector normalized(std::vector<cplx> amplitudes);
  static StateVector basis(std::size_t n_qubits, std::size_t index);

  std::size_t dim() const { return amps_.size(); }
  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const cplx> amplitudes() const { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const;
  /// <this|other>
  cplx inner(const StateVector& other) const;
  /// |psi><psi|
  ComplexMatrix projector() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  StateVector(std::vector<cplx> amplitudes, std::size_t n_qubits);
  friend StateVector apply(const ComplexMatrix& u, const StateVector& psi);

  std::vector<cplx> amps_;
  std::size_t n_qubits_ = 0;
};

/// U|psi>, renormalized only by rounding (no explicit normalization).
StateVector apply(const ComplexMatrix& u, const StateVector& psi);

/// Hermitian, unit-trace, PSD operator with an explicit subsystem layout.
/// Subsystem 0 is the most significant factor of the basis index.
class DensityMatrix {
 public:
  /// Validates: Hermitian to 1e-10, trace 1 +/- 1e-10, eigenvalues >= -1e-9,
  /// product of subsystem dims == matrix dim.
  DensityMatrix(ComplexMatrix m, std::vector<std::size_t> subsystem_dims);
  /// All-qubit layout inferred from the dimension.
  explicit DensityMatrix(const ComplexMatrix& m);
  static DensityMatrix from_state(const StateVector& psi);

  /// Skips the spectral check; for results of operations that preserve
  /// validity (partial trace of a valid state, etc.).
  static DensityMatrix trusted(ComplexMatrix m, std::vector<std::size_t> subsystem_dims);

  const ComplexMatrix& matrix() const { return m_; }
  const std::vector<std::size_t>& subsystem_dims() const { return dims_; }
  std::size_t dim() const { return m_.dim(); }
  std::size_t n_subsystems() const { return dims_.size(); }
  /// tr(rho^2)
  double purity() const;

 private:
  DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims, bool validate);

  ComplexMatrix m_;
  std::vector<std::size_t> dims_;
};

// Pauli matrices and friends.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Kronecker product in order; factors[0] is the most significant.
ComplexMatrix tensor(std::span<const ComplexMatrix> factors);
ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors);

/// `op` acting on `site` of an n-qubit register, identity elsewhere.
ComplexMatrix embed_single_qubit(const ComplexMatrix& op, std::size_t site, std::size_t n_qubits);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]

  /// Column k as a state (normalized by construction).
  std::vector<cplx> column(std::size_t k) const;
};

/// Cyclic complex Jacobi. Eigenvectors follow the phase convention: the
/// largest-magnitude component (first one on ties) is real and positive.
EigenSystem hermitian_eig(const ComplexMatrix& h);

/// exp(-i H s)
ComplexMatrix exp_minus_i(const ComplexMatrix& h, double s);
ComplexMatrix exp_minus_i(const EigenSystem& eig, double s);

/// Trace out every subsystem not in `keep`; kept subsystems retain their
/// original order regardless of the order in `keep`.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// Same index arithmetic on a raw (possibly unnormalized) operator.
ComplexMatrix partial_trace_raw(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep);

/// Transpose with respect to subsystem `party` only.
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t party);
ComplexMatrix partial_transpose_raw(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                    std::size_t party);

/// Eigenvalues below this magnitude contribute nothing to the entropy.
inline constexpr double kEntropyClamp = 1e-12;
/// More negative than this and the input is rejected.
inline constexpr double kNegativeEigenvalueFloor = -1e-9;

/// Von Neumann entropy in bits.
double von_neumann_entropy(const DensityMatrix& rho);
/// Entropy (bits) of an already-computed spectrum with the same clamp rules.
double spectrum_entropy(std::span<const double> eigenvalues);

/// tr(a b) / sqrt(tr(a^2) tr(b^2)). Throws ValidationError on zero purity.
double fidelity(const DensityMatrix& rho_th, const DensityMatrix& rho_exp);

}  // namespace trising
