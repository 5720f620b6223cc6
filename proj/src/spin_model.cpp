#include "trising/spin_model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "trising/errors.hpp"

namespace trising {

namespace {

constexpr double kDegeneracyRel = 1e-8;
constexpr double kCouplingZero = 1e-10;
constexpr double kGapUnderflow = 1e-10;
// Eigenvalues closer than this are treated as one level when projecting.
constexpr double kLevelMerge = 1e-9;

const ComplexMatrix& field_sum() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s(8);
    for (std::size_t i = 0; i < kSpins; ++i) s += embed_single_qubit(pauli_x(), i, kSpins);
    return s;
  }();
  return m;
}

void check_h(double h, bool strictly_positive) {
  if (!std::isfinite(h) || h < 0.0 || (strictly_positive && h == 0.0)) {
    throw ConfigError("transverse field h must be " +
                      std::string(strictly_positive ? "> 0" : ">= 0") + ", got " +
                      std::to_string(h));
  }
}

}  // namespace

const char* to_string(Regime r) {
  return r == Regime::frustrated ? "frustrated" : "nonfrustrated";
}

double regime_sign(Regime r) { return r == Regime::frustrated ? 1.0 : -1.0; }

const ComplexMatrix& ising_bonds() {
  static const ComplexMatrix m = [] {
    const auto z = pauli_z(), id = ComplexMatrix::identity(2);
    return tensor({z, z, id}) + tensor({id, z, z}) + tensor({z, id, z});
  }();
  return m;
}

ComplexMatrix field_term(double h) { return field_sum() * cplx(h); }

ComplexMatrix ising_term(double J) { return ising_bonds() * cplx(J); }

ComplexMatrix build_hamiltonian(const ModelParams& p) {
  check_h(p.h, false);
  if (!std::isfinite(p.J)) throw ConfigError("Ising coupling J must be finite");
  return field_term(p.h) + ising_term(p.J);
}

StateVector all_minus_state() {
  std::vector<cplx> a(8);
  const double amp = 1.0 / std::sqrt(8.0);
  for (std::size_t i = 0; i < 8; ++i) a[i] = (std::popcount(i) % 2 == 0) ? amp : -amp;
  return StateVector(std::move(a));
}

GroundState ground_state(const ModelParams& p) {
  check_h(p.h, true);
  const auto eig = hermitian_eig(build_hamiltonian(p));
  GroundState g{eig.values[0], StateVector::normalized(eig.column(0)),
                eig.values[1] - eig.values[0], false};
  g.near_degenerate = g.gap < kDegeneracyRel * p.h;
  return g;
}

SpectrumPoint spectrum_point(const ModelParams& p, double dJ_dt) {
  check_h(p.h, true);
  const auto eig = hermitian_eig(build_hamiltonian(p));
  const std::size_t n = eig.values.size();

  SpectrumPoint sp{p.J / p.h, eig.values, StateVector::normalized(eig.column(0)), {}, 0.0, -1};

  // v = dH/dt |0>
  const auto g = eig.column(0);
  std::vector<cplx> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += ising_bonds()(i, j) * g[j];
    v[i] = dJ_dt * s;
  }

  // Skip eigenvectors degenerate with the ground state; they belong to E0.
  std::size_t k = 1;
  while (k < n && eig.values[k] - eig.values[0] < kLevelMerge) ++k;
  if (k > 1) {
    double leak = 0.0;
    for (std::size_t q = 1; q < k; ++q) {
      cplx ov = 0.0;
      for (std::size_t i = 0; i < n; ++i) ov += std::conj(eig.vectors(i, q)) * v[i];
      leak += std::norm(ov);
    }
    if (std::sqrt(leak) >= kCouplingZero) {
      throw DegenerateGapError("adiabatic_epsilon: coupled level degenerate with ground state at J/h = " +
                               std::to_string(p.J / p.h));
    }
  }

  while (k < n) {
    const double e = eig.values[k];
    double weight = 0.0;
    std::size_t mult = 0;
    for (; k < n && eig.values[k] - e < kLevelMerge; ++k, ++mult) {
      cplx ov = 0.0;
      for (std::size_t i = 0; i < n; ++i) ov += std::conj(eig.vectors(i, k)) * v[i];
      weight += std::norm(ov);
    }
    double elem = std::sqrt(weight);
    if (elem < kCouplingZero) elem = 0.0;
    sp.levels.push_back({e, elem, mult});
  }

  for (std::size_t l = 0; l < sp.levels.size(); ++l) {
    const auto& lv = sp.levels[l];
    if (lv.matrix_element == 0.0) continue;
    const double gap = lv.energy - eig.values[0];
    if (gap < kGapUnderflow) {
      throw DegenerateGapError("adiabatic_epsilon: gap underflow at J/h = " + std::to_string(p.J / p.h));
    }
    const double eps = lv.matrix_element / (gap * gap);
    if (eps > sp.epsilon) {
      sp.epsilon = eps;
      sp.dominant_level = static_cast<int>(l);
    }
  }
  return sp;
}

double adiabatic_epsilon(const ModelParams& p, double dJ_dt) {
  if (dJ_dt == 0.0) {
    check_h(p.h, true);
    return 0.0;
  }
  return spectrum_point(p, dJ_dt).epsilon;
}

}  // namespace trising
