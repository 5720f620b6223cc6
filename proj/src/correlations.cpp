#include "trising/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>

#include "trising/errors.hpp"

namespace trising {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBranchFloor = 1e-12;
constexpr double kDiscordFloor = -1e-9;

struct Reduced {
  DensityMatrix rho;
  std::size_t measured_pos;  // position of the measured party in rho's layout
  std::vector<std::size_t> remainder_pos;
};

Reduced reduce(const DensityMatrix& rho, const BipartiteSplit& split) {
  const std::size_t n = rho.n_subsystems();
  if (split.measured >= n) {
    throw UsageError("split: measured party " + std::to_string(split.measured) + " out of range");
  }
  if (split.remainder.empty()) throw UsageError("split: remainder is empty");
  std::vector<std::size_t> keep{split.measured};
  for (auto r : split.remainder) {
    if (r >= n) throw UsageError("split: remainder party " + std::to_string(r) + " out of range");
    if (r == split.measured) throw UsageError("split: measured party also listed in remainder");
    keep.push_back(r);
  }
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw UsageError("split: duplicate party in remainder");
  }
  Reduced out{partial_trace(rho, keep), 0, {}};
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] == split.measured) {
      out.measured_pos = i;
    } else {
      out.remainder_pos.push_back(i);
    }
  }
  return out;
}

// Up to 4x4 Hermitian operator in a fixed buffer; the conditional states of a
// qubit measurement never exceed this size.
struct SmallHermitian {
  std::size_t n = 0;
  std::array<cplx, 16> a{};
  cplx& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

// Eigenvalues (unordered). Closed form for 2x2, otherwise the same cyclic
// complex Jacobi rotation as hermitian_eig without eigenvectors.
std::array<double, 4> small_spectrum(SmallHermitian m) {
  const std::size_t n = m.n;
  std::array<double, 4> ev{};
  if (n == 1) {
    ev[0] = m(0, 0).real();
    return ev;
  }
  if (n == 2) {
    const double a = m(0, 0).real(), d = m(1, 1).real();
    const double mid = 0.5 * (a + d);
    const double rad = std::hypot(0.5 * (a - d), std::abs(m(0, 1)));
    ev[0] = mid - rad;
    ev[1] = mid + rad;
    return ev;
  }
  double fro = 0.0;
  for (std::size_t i = 0; i < n * n; ++i) fro += std::norm(m.a[i]);
  const double target = std::max(1e-13, 1e-15 * std::sqrt(fro));
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += std::norm(m(i, j));
    if (std::sqrt(off) < target) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = apq / mag;
        const double app = m(p, p).real(), aqq = m(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cplx wqp = -s * std::conj(phase);
        const cplx wqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = m(k, p), akq = m(k, q);
          m(k, p) = c * akp + wqp * akq;
          m(k, q) = s * akp + wqq * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = m(p, k), aqk = m(q, k);
          m(p, k) = c * apk + std::conj(wqp) * aqk;
          m(q, k) = s * apk + std::conj(wqq) * aqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = app - t * mag;
        m(q, q) = aqq + t * mag;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) ev[i] = m(i, i).real();
  return ev;
}

double entropy_of_unnormalized(const SmallHermitian& sigma, double p) {
  if (p < kBranchFloor) return 0.0;
  auto ev = small_spectrum(sigma);
  // Rounding-level negatives of the unnormalized branch would be amplified
  // by 1/p; they carry no information.
  for (std::size_t i = 0; i < sigma.n; ++i) ev[i] = (ev[i] < 0.0 && ev[i] > -kBranchFloor) ? 0.0 : ev[i] / p;
  return spectrum_entropy(std::span<const double>(ev.data(), sigma.n));
}

// Blocks rho^{ab} = (<a|_A (x) I) rho (|b>_A (x) I) for the measured qubit A,
// so that <n|_A rho |n>_A = sum_ab conj(n_a) n_b rho^{ab}.
struct MeasurementBlocks {
  std::array<SmallHermitian, 4> block;  // 00, 01, 10, 11
  SmallHermitian marginal;              // rho_B = block00 + block11
};

MeasurementBlocks measurement_blocks(const Reduced& r) {
  const auto& dims = r.rho.subsystem_dims();
  if (dims[r.measured_pos] != 2) throw UsageError("discord: measured party must be a qubit");
  const std::size_t n = r.rho.dim(), db = n / 2;
  std::size_t stride = 1;
  for (std::size_t k = r.measured_pos + 1; k < dims.size(); ++k) stride *= dims[k];

  // Full index of (measured digit a, remainder index i).
  auto full = [&](std::size_t a, std::size_t i) {
    const std::size_t hi = i / stride, lo = i % stride;
    return hi * 2 * stride + a * stride + lo;
  };
  if (db > 4) throw UsageError("discord: unmeasured side larger than two qubits");
  MeasurementBlocks mb;
  for (auto& b : mb.block) b.n = db;
  mb.marginal.n = db;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t i = 0; i < db; ++i)
        for (std::size_t j = 0; j < db; ++j)
          mb.block[2 * a + b](i, j) = r.rho.matrix()(full(a, i), full(b, j));
  for (std::size_t k = 0; k < db * db; ++k) mb.marginal.a[k] = mb.block[0].a[k] + mb.block[3].a[k];
  return mb;
}

double conditional_entropy_blocks(const MeasurementBlocks& mb, double theta, double phi) {
  const cplx n0 = std::cos(theta / 2.0);
  const cplx n1 = std::polar(std::sin(theta / 2.0), phi);
  const cplx w00 = std::norm(n0), w11 = std::norm(n1);
  const cplx w01 = std::conj(n0) * n1, w10 = std::conj(n1) * n0;
  const std::size_t db = mb.marginal.n;
  SmallHermitian sigma, sigma_perp;
  sigma.n = sigma_perp.n = db;
  double p = 0.0, q = 0.0;
  for (std::size_t k = 0; k < db * db; ++k) {
    sigma.a[k] = w00 * mb.block[0].a[k] + w01 * mb.block[1].a[k] + w10 * mb.block[2].a[k] +
                 w11 * mb.block[3].a[k];
    // The orthogonal outcome is what remains of the marginal.
    sigma_perp.a[k] = mb.marginal.a[k] - sigma.a[k];
  }
  for (std::size_t i = 0; i < db; ++i) {
    p += sigma(i, i).real();
    q += sigma_perp(i, i).real();
  }
  return (p >= kBranchFloor ? p * entropy_of_unnormalized(sigma, p) : 0.0) +
         (q >= kBranchFloor ? q * entropy_of_unnormalized(sigma_perp, q) : 0.0);
}

// Map to theta in [0, pi], phi in [0, 2 pi) describing the same ray.
std::pair<double, double> canonical_angles(double theta, double phi) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0.0) theta += kTwoPi;
  if (theta > std::numbers::pi) {
    theta = kTwoPi - theta;
    phi += std::numbers::pi;
  }
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  return {theta, phi};
}

struct Candidate {
  double value;
  double theta;
  double phi;
};

Candidate minimize_conditional_entropy(const MeasurementBlocks& mb, const DiscordSearch& s) {
  if (s.theta_points < 2 || s.phi_points < 1 || s.refine_starts < 1 || !(s.final_step > 0.0)) {
    throw ConfigError("discord search: invalid grid or refinement settings");
  }
  std::vector<Candidate> grid;
  grid.reserve(static_cast<std::size_t>(s.theta_points) * s.phi_points);
  for (int i = 0; i < s.theta_points; ++i) {
    const double theta = std::numbers::pi * i / (s.theta_points - 1);
    for (int j = 0; j < s.phi_points; ++j) {
      const double phi = kTwoPi * j / s.phi_points;
      grid.push_back({conditional_entropy_blocks(mb, theta, phi), theta, phi});
    }
  }
  const std::size_t starts = std::min<std::size_t>(s.refine_starts, grid.size());
  // Ties broken by grid order so the candidate set is input-independent.
  std::partial_sort(grid.begin(), grid.begin() + starts, grid.end(),
                    [](const Candidate& a, const Candidate& b) {
                      if (a.value != b.value) return a.value < b.value;
                      if (a.theta != b.theta) return a.theta < b.theta;
                      return a.phi < b.phi;
                    });

  const double step0 = s.initial_step > 0.0 ? s.initial_step : std::numbers::pi / s.phi_points;
  Candidate best = grid.front();
  for (std::size_t c = 0; c < starts; ++c) {
    Candidate cur = grid[c];
    for (double step = step0; step >= s.final_step;) {
      const std::array<std::pair<double, double>, 4> moves{
          {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}};
      Candidate trial_best = cur;
      for (const auto& [dt, dp] : moves) {
        const double v = conditional_entropy_blocks(mb, cur.theta + dt, cur.phi + dp);
        if (v < trial_best.value) trial_best = {v, cur.theta + dt, cur.phi + dp};
      }
      if (trial_best.value < cur.value) {
        cur = trial_best;
      } else {
        step *= 0.5;
      }
    }
    if (cur.value < best.value) best = cur;
  }
  const auto [t, p] = canonical_angles(best.theta, best.phi);
  return {best.value, t, p};
}

}  // namespace

double negativity(const DensityMatrix& rho, const BipartiteSplit& split) {
  const auto r = reduce(rho, split);
  const auto ev = hermitian_eig(partial_transpose(r.rho, r.measured_pos)).values;
  double n = 0.0;
  for (double x : ev)
    if (x < 0.0) n -= x;
  return n;
}

double conditional_entropy(const DensityMatrix& rho, const BipartiteSplit& split, double theta,
                           double phi) {
  const auto r = reduce(rho, split);
  return conditional_entropy_blocks(measurement_blocks(r), theta, phi);
}

DiscordResult quantum_discord(const DensityMatrix& rho, const BipartiteSplit& split,
                              const DiscordSearch& search) {
  const auto r = reduce(rho, split);
  const auto mb = measurement_blocks(r);

  const double s_a = von_neumann_entropy(partial_trace(r.rho, {r.measured_pos}));
  const auto marginal_ev = small_spectrum(mb.marginal);
  const double s_b = spectrum_entropy(std::span<const double>(marginal_ev.data(), mb.marginal.n));
  const double s_ab = von_neumann_entropy(r.rho);

  const auto best = minimize_conditional_entropy(mb, search);
  DiscordResult out;
  out.mutual_information = s_a + s_b - s_ab;
  out.classical_correlation = s_b - best.value;
  out.discord = std::max(out.mutual_information - out.classical_correlation, kDiscordFloor);
  out.theta = best.theta;
  out.phi = best.phi;
  return out;
}

namespace {

void require_three_qubits(const DensityMatrix& rho) {
  const auto& d = rho.subsystem_dims();
  if (d.size() != 3 || d[0] != 2 || d[1] != 2 || d[2] != 2) {
    throw UsageError("monogamy score requires a three-qubit state");
  }
}

const BipartiteSplit kSplit1_23{0, {1, 2}};
const BipartiteSplit kSplit12{0, {1}};
const BipartiteSplit kSplit13{0, {2}};

}  // namespace

MonogamyTerms negativity_monogamy(const DensityMatrix& rho123) {
  require_three_qubits(rho123);
  MonogamyTerms t;
  t.whole = negativity(rho123, kSplit1_23);
  t.q12 = negativity(rho123, kSplit12);
  t.q13 = negativity(rho123, kSplit13);
  t.score = t.whole * t.whole - t.q12 * t.q12 - t.q13 * t.q13;
  return t;
}

double entanglement_monogamy_score(const DensityMatrix& rho123) {
  return negativity_monogamy(rho123).score;
}

MonogamyTerms discord_monogamy(const DensityMatrix& rho123, const DiscordSearch& search) {
  require_three_qubits(rho123);
  MonogamyTerms t;
  t.whole = quantum_discord(rho123, kSplit1_23, search).discord;
  t.q12 = quantum_discord(rho123, kSplit12, search).discord;
  t.q13 = quantum_discord(rho123, kSplit13, search).discord;
  t.score = t.whole - t.q12 - t.q13;
  return t;
}

double discord_monogamy_score(const DensityMatrix& rho123, const DiscordSearch& search) {
  return discord_monogamy(rho123, search).score;
}

}  // namespace trising
