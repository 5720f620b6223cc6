#include "trising/qla.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trising/errors.hpp"

namespace trising {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kNormTol = 1e-12;
constexpr double kJacobiOffTol = 1e-13;
constexpr int kJacobiMaxSweeps = 100;

bool is_power_of_two(std::size_t n) { return n >= 2 && (n & (n - 1)) == 0; }

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

std::vector<std::size_t> qubit_dims(std::size_t dim) {
  if (!is_power_of_two(dim)) {
    throw UsageError("cannot infer qubit layout for dimension " + std::to_string(dim));
  }
  return std::vector<std::size_t>(log2_exact(dim), 2);
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw UsageError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
  }
}

// Strides of a row-major multi-index over `dims`.
std::vector<std::size_t> strides_of(std::span<const std::size_t> dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

std::vector<std::size_t> checked_keep(std::span<const std::size_t> dims,
                                      std::span<const std::size_t> keep) {
  if (keep.empty()) throw UsageError("partial_trace: keep set is empty");
  std::vector<std::size_t> k(keep.begin(), keep.end());
  std::sort(k.begin(), k.end());
  if (std::adjacent_find(k.begin(), k.end()) != k.end()) {
    throw UsageError("partial_trace: duplicate subsystem index in keep set");
  }
  if (k.back() >= dims.size()) {
    throw UsageError("partial_trace: subsystem index " + std::to_string(k.back()) +
                     " out of range for " + std::to_string(dims.size()) + " subsystems");
  }
  return k;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> rows)
    : dim_(dim), data_(std::move(rows)) {
  if (data_.size() != dim_ * dim_) {
    throw UsageError("ComplexMatrix: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                     std::to_string(data_.size()));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<cplx> amplitudes, std::size_t n_qubits)
    : amps_(std::move(amplitudes)), n_qubits_(n_qubits) {}

StateVector::StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
  if (!is_power_of_two(amps_.size())) {
    throw ValidationError("StateVector: size " + std::to_string(amps_.size()) +
                          " is not 2^n with n >= 1");
  }
  n_qubits_ = log2_exact(amps_.size());
  const double nrm = norm();
  if (!std::isfinite(nrm) || std::abs(nrm - 1.0) > kNormTol) {
    throw ValidationError("StateVector: norm " + std::to_string(nrm) + " is not 1");
  }
}

StateVector StateVector::normalized(std::vector<cplx> amplitudes) {
  double s = 0.0;
  for (const auto& z : amplitudes) s += std::norm(z);
  if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("StateVector: zero or non-finite vector");
  const double inv = 1.0 / std::sqrt(s);
  for (auto& z : amplitudes) z *= inv;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t n_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (n_qubits == 0 || index >= dim) throw UsageError("StateVector::basis: index out of range");
  std::vector<cplx> a(dim);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& z : amps_) s += std::norm(z);
  return std::sqrt(s);
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw UsageError("StateVector::inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

ComplexMatrix StateVector::projector() const {
  ComplexMatrix p(dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) p(i, j) = amps_[i] * std::conj(amps_[j]);
  return p;
}

StateVector apply(const ComplexMatrix& u, const StateVector& psi) {
  if (u.dim() != psi.dim()) throw UsageError("apply: dimension mismatch");
  std::vector<cplx> out(psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < psi.dim(); ++j) s += u(i, j) * psi.amps_[j];
    out[i] = s;
  }
  return StateVector(std::move(out), psi.n_qubits());
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims, bool validate)
    : m_(std::move(m)), dims_(std::move(dims)) {
  const std::size_t prod =
      std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  if (dims_.empty() || prod != m_.dim()) {
    throw UsageError("DensityMatrix: subsystem dims do not multiply to matrix dimension " +
                     std::to_string(m_.dim()));
  }
  if (!validate) return;
  if (!m_.is_finite()) throw ValidationError("DensityMatrix: non-finite entries");
  if (const double d = m_.hermiticity_defect(); d > kHermitianTol) {
    throw ValidationError("DensityMatrix: not Hermitian (defect " + std::to_string(d) + ")");
  }
  if (const cplx t = m_.trace(); std::abs(t - 1.0) > kTraceTol) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(t.real()) + " != 1");
  }
  const auto eig = hermitian_eig(m_);
  if (eig.values.front() < kNegativeEigenvalueFloor) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(eig.values.front()));
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::vector<std::size_t> subsystem_dims)
    : DensityMatrix(std::move(m), std::move(subsystem_dims), true) {}

DensityMatrix::DensityMatrix(const ComplexMatrix& m) : DensityMatrix(m, qubit_dims(m.dim()), true) {}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
  return DensityMatrix(psi.projector(), std::vector<std::size_t>(psi.n_qubits(), 2), false);
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m, std::vector<std::size_t> subsystem_dims) {
  return DensityMatrix(std::move(m), std::move(subsystem_dims), false);
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  double s = 0.0;
  for (const auto& z : m_.data()) s += std::norm(z);
  return s;
}

// ---------------------------------------------------------------------------
// Paulis and tensor products

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, cplx(0, -1), cplx(0, 1), 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix tensor(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw UsageError("tensor: empty factor list");
  ComplexMatrix acc = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const ComplexMatrix& b = factors[f];
    const std::size_t na = acc.dim(), nb = b.dim();
    ComplexMatrix r(na * nb);
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t j = 0; j < na; ++j) {
        const cplx a = acc(i, j);
        if (a == cplx{}) continue;
        for (std::size_t k = 0; k < nb; ++k)
          for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a * b(k, l);
      }
    acc = std::move(r);
  }
  return acc;
}

ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors) {
  return tensor(std::span<const ComplexMatrix>(factors.begin(), factors.size()));
}

ComplexMatrix embed_single_qubit(const ComplexMatrix& op, std::size_t site, std::size_t n_qubits) {
  if (op.dim() != 2) throw UsageError("embed_single_qubit: operator must be 2x2");
  if (site >= n_qubits) throw UsageError("embed_single_qubit: site out of range");
  std::vector<ComplexMatrix> f(n_qubits, ComplexMatrix::identity(2));
  f[site] = op;
  return tensor(f);
}

// ---------------------------------------------------------------------------
// Eigensolver

std::vector<cplx> EigenSystem::column(std::size_t k) const {
  std::vector<cplx> c(vectors.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = vectors(i, k);
  return c;
}

EigenSystem hermitian_eig(const ComplexMatrix& h) {
  const std::size_t n = h.dim();
  if (n == 0) throw UsageError("hermitian_eig: empty matrix");
  if (!h.is_finite()) throw ValidationError("hermitian_eig: non-finite entries");
  if (const double d = h.hermiticity_defect(); d > kHermitianTol) {
    throw ValidationError("hermitian_eig: matrix is not Hermitian (defect " + std::to_string(d) +
                          ")");
  }

  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };
  // Absolute 1e-13 target, relaxed to rounding level for large-norm inputs
  // where the absolute target is below what doubles can resolve.
  const double target = std::max(kJacobiOffTol, 1e-15 * h.frobenius_norm());

  for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm() >= target; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = apq / mag;  // e^{i phi}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // W = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on columns (p, q)
        const cplx wqp = -s * std::conj(phase);
        const cplx wqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // A <- A W
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + wqp * akq;
          a(k, q) = s * akp + wqq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- W^dagger A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(wqp) * aqk;
          a(q, k) = s * apk + std::conj(wqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;
        for (std::size_t k = 0; k < n; ++k) {  // V <- V W
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + wqp * vkq;
          v(k, q) = s * vkp + wqq * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    double best = -1.0;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(v(i, src));
      if (m > best + 1e-12) {
        best = m;
        arg = i;
      }
    }
    const cplx fix = std::conj(v(arg, src)) / std::abs(v(arg, src));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * fix;
    out.vectors(arg, k) = std::abs(v(arg, src));
  }
  return out;
}

ComplexMatrix exp_minus_i(const EigenSystem& eig, double s) {
  const std::size_t n = eig.vectors.dim();
  std::vector<cplx> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, -eig.values[k] * s);
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += eig.vectors(i, k) * phases[k] * std::conj(eig.vectors(j, k));
      r(i, j) = acc;
    }
  return r;
}

ComplexMatrix exp_minus_i(const ComplexMatrix& h, double s) {
  if (s == 0.0) {
    // still validate the operator
    (void)hermitian_eig(h);
    return ComplexMatrix::identity(h.dim());
  }
  return exp_minus_i(hermitian_eig(h), s);
}

// ---------------------------------------------------------------------------
// Partial trace / transpose

ComplexMatrix partial_trace_raw(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep_in) {
  const auto keep = checked_keep(dims, keep_in);
  const std::size_t nsub = dims.size();
  std::vector<bool> kept(nsub, false);
  for (auto k : keep) kept[k] = true;

  std::vector<std::size_t> kdims, tdims;
  for (std::size_t k = 0; k < nsub; ++k) (kept[k] ? kdims : tdims).push_back(dims[k]);
  const std::size_t dk = std::accumulate(kdims.begin(), kdims.end(), std::size_t{1}, std::multiplies<>());
  const std::size_t dt = std::accumulate(tdims.begin(), tdims.end(), std::size_t{1}, std::multiplies<>());
  const auto full_strides = strides_of(dims);

  // Full index of (kept multi-index a, traced multi-index b).
  auto full_index = [&](std::size_t a, std::size_t b) {
    std::size_t idx = 0;
    for (std::size_t k = nsub; k-- > 0;) {
      std::size_t digit;
      if (kept[k]) {
        digit = a % dims[k];
        a /= dims[k];
      } else {
        digit = b % dims[k];
        b /= dims[k];
      }
      idx += digit * full_strides[k];
    }
    return idx;
  };

  std::vector<std::size_t> lut(dk * dt);
  for (std::size_t a = 0; a < dk; ++a)
    for (std::size_t b = 0; b < dt; ++b) lut[a * dt + b] = full_index(a, b);

  ComplexMatrix r(dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      cplx s = 0.0;
      for (std::size_t b = 0; b < dt; ++b) s += m(lut[i * dt + b], lut[j * dt + b]);
      r(i, j) = s;
    }
  return r;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const auto& dims = rho.subsystem_dims();
  const auto sorted = checked_keep(dims, keep);
  std::vector<std::size_t> kdims;
  for (auto k : sorted) kdims.push_back(dims[k]);
  if (sorted.size() == dims.size()) return rho;
  return DensityMatrix::trusted(partial_trace_raw(rho.matrix(), dims, sorted), std::move(kdims));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

ComplexMatrix partial_transpose_raw(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                    std::size_t party) {
  if (party >= dims.size()) {
    throw UsageError("partial_transpose: party " + std::to_string(party) + " out of range for " +
                     std::to_string(dims.size()) + " subsystems");
  }
  const auto strides = strides_of(dims);
  const std::size_t st = strides[party], d = dims[party];
  const std::size_t n = m.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t di = (i / st) % d;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t dj = (j / st) % d;
      // swap the party's digits between row and column
      const std::size_t i2 = i - di * st + dj * st;
      const std::size_t j2 = j - dj * st + di * st;
      r(i2, j2) = m(i, j);
    }
  }
  return r;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t party) {
  return partial_transpose_raw(rho.matrix(), rho.subsystem_dims(), party);
}

// ---------------------------------------------------------------------------
// Entropy and fidelity

double spectrum_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p < kNegativeEigenvalueFloor) {
      throw ValidationError("entropy: eigenvalue " + std::to_string(p) + " below -1e-9");
    }
    if (p <= kEntropyClamp) continue;
    s -= p * std::log2(p);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return spectrum_entropy(hermitian_eig(rho.matrix()).values);
}

double fidelity(const DensityMatrix& rho_th, const DensityMatrix& rho_exp) {
  if (rho_th.dim() != rho_exp.dim()) throw UsageError("fidelity: dimension mismatch");
  const double pa = rho_th.purity(), pb = rho_exp.purity();
  if (!(pa > 0.0) || !(pb > 0.0)) throw ValidationError("fidelity: zero-purity input");
  if (rho_th.matrix() == rho_exp.matrix()) return 1.0;
  // tr(A B) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij) for Hermitian B
  cplx t = 0.0;
  const auto a = rho_th.matrix().data(), b = rho_exp.matrix().data();
  for (std::size_t k = 0; k < a.size(); ++k) t += a[k] * std::conj(b[k]);
  return t.real() / std::sqrt(pa * pb);
}

}  // namespace trising
