#include "qutrit/single.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "parallel.hpp"
#include "qutrit/elliptic.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/su3.hpp"

namespace qutrit::single {
namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

Mat3 commutator(const Mat3& a, const Mat3& b) { return a * b - b * a; }

// Adaptive Simpson on a matrix-valued integrand, absolute tolerance.
template <class F>
Mat3 simpson_step(const F& f, double a, double b, const Mat3& fa, const Mat3& fm, const Mat3& fb,
                  const Mat3& whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const Mat3 flm = f(lm);
  const Mat3 frm = f(rm);
  const Mat3 left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const Mat3 right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const Mat3 delta = left + right - whole;
  if (depth <= 0 || delta.cwiseAbs().maxCoeff() <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
Mat3 adaptive_simpson(const F& f, double a, double b, double tol) {
  if (b == a) return Mat3::Zero();
  // A few fixed panels first so oscillatory integrands are not under-sampled.
  constexpr int kPanels = 8;
  Mat3 total = Mat3::Zero();
  const double w = (b - a) / kPanels;
  Mat3 fa = f(a);
  for (int p = 0; p < kPanels; ++p) {
    const double lo = a + p * w;
    const double hi = p + 1 == kPanels ? b : lo + w;
    const Mat3 fm = f(0.5 * (lo + hi));
    const Mat3 fb = f(hi);
    const Mat3 whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += simpson_step(f, lo, hi, fa, fm, fb, whole, tol / kPanels, 40);
    fa = fb;
  }
  return total;
}

}  // namespace

HamiltonianCoeffs HamiltonianCoeffs::from_field(double h1, double h2, double h3, double Q, double d) {
  HamiltonianCoeffs c;
  c.h = {2 * h1, 2 * h2, 2 * h3, 0.0, 0.0, 2 * Q / kSqrt3, 0.0, 2 * d};
  return c;
}

void FieldConfig::validate() const {
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("field: elliptic modulus outside [0, 1]");
  for (double v : {omega1, omega, omega0, Q, d}) {
    if (!std::isfinite(v)) throw DomainError("field: non-finite frequency");
  }
}

Mat3 density_from_bloch(const BlochVector& v) {
  const double* R = v.R.data();
  const Complex i = kI;
  const double s12 = std::sqrt(12.0);
  const double s18 = std::sqrt(18.0);
  Mat3 rho;
  rho(0, 0) = 1.0 / 3 + R[3] / kSqrt6 + R[6] / s18;
  rho(0, 1) = (R[1] + R[7] - i * (R[2] + R[5])) / s12;
  rho(0, 2) = (-i * R[4] + R[8]) / kSqrt6;
  rho(1, 0) = (R[1] + R[7] + i * (R[2] + R[5])) / s12;
  rho(1, 1) = 1.0 / 3 - 2 * R[6] / s18;
  rho(1, 2) = (R[1] - R[7] - i * (R[2] - R[5])) / s12;
  rho(2, 0) = (i * R[4] + R[8]) / kSqrt6;
  rho(2, 1) = (R[1] - R[7] + i * (R[2] - R[5])) / s12;
  rho(2, 2) = 1.0 / 3 - R[3] / kSqrt6 + R[6] / s18;
  return rho;
}

BlochVector bloch_from_density(const Mat3& rho) {
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw ValidationError("bloch_from_density: trace " + std::to_string(tr.real()) + " is not 1");
  }
  BlochVector v;
  const double scale = std::sqrt(1.5);
  for (int i = 1; i < 9; ++i) v[i] = scale * (rho * su3::basis_matrix(i)).trace().real();
  return v;
}

Mat3 hamiltonian(double h1, double h2, double h3, double Q, double d) {
  const Mat3& S1 = su3::spin(1);
  const Mat3& S2 = su3::spin(2);
  const Mat3& S3 = su3::spin(3);
  const Mat3 E = Mat3::Identity();
  return h1 * S1 + h2 * S2 + h3 * S3 + Q * (S3 * S3 - 2.0 / 3.0 * E) + d * (S1 * S1 - S2 * S2);
}

std::array<double, 8> bloch_rhs(const BlochVector& v, const HamiltonianCoeffs& h) {
  std::array<double, 8> out{};
  for (const su3::Entry& e : su3::nonzero_e()) {
    out[e.c - 1] += e.value * h.h[e.a - 1] * v[e.b];
  }
  return out;
}

Vec3 consistent_field(double t, const FieldConfig& cfg) {
  const auto j = elliptic::jacobi(cfg.omega * t, cfg.k);
  return {cfg.omega1 * j.cn, cfg.omega1 * j.sn, cfg.omega0 * j.dn};
}

Mat3 rotating_frame(double t, double k, double omega) {
  const auto j = elliptic::jacobi(omega * t, k);
  const Complex f(j.cn, j.sn);
  Mat3 a = Mat3::Zero();
  a(0, 0) = f;
  a(1, 1) = 1.0;
  a(2, 2) = 1.0 / f;
  return a;
}

Mat3 spin1_rotation_x(double theta) {
  const Mat3& S1 = su3::spin(1);
  return Mat3::Identity() - kI * std::sin(theta) * S1 + (std::cos(theta) - 1.0) * (S1 * S1);
}

Mat3 resonance_solution(const Mat3& rho0, double t, const FieldConfig& cfg) {
  cfg.validate();
  const double scale = std::max({1.0, std::abs(cfg.omega), std::abs(cfg.omega0)});
  if (std::abs(cfg.omega - cfg.omega0) > 1e-12 * scale) {
    throw ContractViolation("resonance_solution: requires omega == omega0");
  }
  if (cfg.Q != 0.0 || cfg.d != 0.0) {
    throw ContractViolation("resonance_solution: requires zero anisotropy");
  }
  const Mat3 U = spin1_rotation_x(cfg.omega1 * t);
  const Mat3 a = rotating_frame(t, cfg.k, cfg.omega);
  return a.inverse() * U * rho0 * U.adjoint() * a;
}

History free_rotation(const Mat3& rho0, double omega1) {
  return [rho0, omega1](double t) {
    const Mat3 U = spin1_rotation_x(omega1 * t);
    return Mat3(U * rho0 * U.adjoint());
  };
}

Mat3 perturbation_term(int order, const History& previous, double t, const FieldConfig& cfg,
                       double tolerance) {
  if (order < 1) throw DomainError("perturbation_term: order must be >= 1");
  const double delta = cfg.detuning();
  if (delta == 0.0 || t == 0.0) return Mat3::Zero();
  const Mat3& S3 = su3::spin(3);
  auto integrand = [&](double tp) {
    const Mat3 U = spin1_rotation_x(-cfg.omega1 * (tp - t));  // e^{i w1 (t'-t) S1}
    const double dn = elliptic::jacobi(cfg.omega * tp, cfg.k).dn;
    return Mat3(U * (dn * commutator(S3, previous(tp))) * U.adjoint());
  };
  // The integral is scaled by |delta|, so tighten the quadrature accordingly.
  const Mat3 integral = adaptive_simpson(integrand, 0.0, t, tolerance / std::max(1.0, std::abs(delta)));
  return -kI * delta * integral;
}

History perturbation_history(int order, const Mat3& rho0, const FieldConfig& cfg, double tolerance) {
  if (order < 0) throw DomainError("perturbation_history: negative order");
  History h = free_rotation(rho0, cfg.omega1);
  for (int l = 1; l <= order; ++l) {
    h = [prev = h, l, cfg, tolerance](double t) { return perturbation_term(l, prev, t, cfg, tolerance); };
  }
  return h;
}

Mat3 perturbation_solution(int order, const Mat3& rho0, double t, const FieldConfig& cfg, double tolerance) {
  Mat3 r = Mat3::Zero();
  for (int l = 0; l <= order; ++l) r += perturbation_history(l, rho0, cfg, tolerance)(t);
  const Mat3 a = rotating_frame(t, cfg.k, cfg.omega);
  return a.inverse() * r * a;
}

Mat3 appendix_b_offresonance(double t, double delta, double omega1, double omega) {
  const double Om = std::sqrt(omega1 * omega1 + delta * delta);
  if (Om == 0.0) {
    Mat3 rho = Mat3::Zero();
    rho(2, 2) = 1.0;
    return rho;
  }
  const double Om4 = Om * Om * Om * Om;
  const double s = std::sin(Om * t / 2);
  const double c = std::cos(Om * t / 2);
  const double w2 = omega1 * omega1;
  const double d2 = delta * delta;
  const double g = 2 * d2 + w2 * (1 + std::cos(Om * t));
  const Complex e1 = std::exp(-kI * omega * t);
  const Complex e2 = std::exp(-2.0 * kI * omega * t);
  const Complex i = kI;

  Mat3 rho;
  rho(0, 0) = w2 * w2 / Om4 * std::pow(s, 4);
  rho(0, 1) = -kSqrt2 * w2 * omega1 / Om4 * s * s * s * e1 * (i * Om * c + delta * s);
  rho(0, 2) = -w2 / (2 * Om4) * s * s * e2 *
              (w2 - 2.0 * i * delta * Om * std::sin(Om * t) + (2 * d2 + w2) * std::cos(Om * t));
  rho(1, 1) = w2 * s * s / Om4 * g;
  rho(1, 2) = -omega1 / (kSqrt2 * Om4) * e1 * g * (delta * s * s + i * Om / 2.0 * std::sin(Om * t));
  rho(2, 2) = g * g / (4 * Om4);
  rho(1, 0) = std::conj(rho(0, 1));
  rho(2, 0) = std::conj(rho(0, 2));
  rho(2, 1) = std::conj(rho(1, 2));
  return rho;
}

ResonanceState parse_resonance_state(std::string_view label) {
  if (label == "stochastic") return ResonanceState::stochastic;
  if (label == "middle") return ResonanceState::middle;
  if (label == "mixed" || label == "coherent") return ResonanceState::mixed;
  throw DomainError("unknown resonance state label '" + std::string(label) + "'");
}

Mat3 resonance_initial_state(ResonanceState which) {
  Mat3 rho = Mat3::Zero();
  switch (which) {
    case ResonanceState::stochastic:
      rho.setConstant(1.0 / 3.0);
      break;
    case ResonanceState::middle:
      rho(1, 1) = 1.0;
      break;
    case ResonanceState::mixed:
      rho.diagonal() << 0.25, 0.5, 0.25;
      break;
  }
  return rho;
}

Mat3 appendix_b_resonance_state(ResonanceState which, double t, double omega1, double omega, double k) {
  const auto j = elliptic::jacobi(omega * t, k);
  const Complex f(j.cn, j.sn);
  const Complex fi = 1.0 / f;
  const Complex i = kI;
  const double c2 = std::cos(2 * omega1 * t);
  const double s2 = std::sin(2 * omega1 * t);
  const double ss = std::pow(std::sin(omega1 * t), 2);
  const double cc = std::pow(std::cos(omega1 * t), 2);
  Mat3 m;
  switch (which) {
    case ResonanceState::stochastic:
      m(0, 0) = (c2 + 3) / 12;
      m(0, 1) = fi * (i * kSqrt2 * s2 + 4.0) / 12.0;
      m(0, 2) = fi * fi * (c2 + 3) / 12.0;
      m(1, 0) = f * (4.0 - i * kSqrt2 * s2) / 12.0;
      m(1, 1) = (3 - c2) / 6;
      m(1, 2) = fi * (4.0 - i * kSqrt2 * s2) / 12.0;
      m(2, 0) = f * f * (c2 + 3) / 12.0;
      m(2, 1) = f * (i * kSqrt2 * s2 + 4.0) / 12.0;
      m(2, 2) = (c2 + 3) / 12;
      break;
    case ResonanceState::middle:
      m(0, 0) = ss / 2;
      m(0, 1) = -i * fi * s2 / (2 * kSqrt2);
      m(0, 2) = fi * fi * ss / 2.0;
      m(1, 0) = i * f * s2 / (2 * kSqrt2);
      m(1, 1) = cc;
      m(1, 2) = i * fi * s2 / (2 * kSqrt2);
      m(2, 0) = f * f * ss / 2.0;
      m(2, 1) = -i * f * s2 / (2 * kSqrt2);
      m(2, 2) = ss / 2;
      break;
    case ResonanceState::mixed:
      m(0, 0) = (5 - c2) / 16;
      m(0, 1) = -i * fi * s2 / (8 * kSqrt2);
      m(0, 2) = fi * fi * ss / 8.0;
      m(1, 0) = i * f * s2 / (8 * kSqrt2);
      m(1, 1) = (c2 + 3) / 8;
      m(1, 2) = i * fi * s2 / (8 * kSqrt2);
      m(2, 0) = f * f * ss / 8.0;
      m(2, 1) = -i * f * s2 / (8 * kSqrt2);
      m(2, 2) = (5 - c2) / 16;
      break;
  }
  return m;
}

MotionInvariants motion_invariants(const BlochVector& v) {
  const double* R = v.R.data();
  MotionInvariants inv;
  inv.b = v.length();
  inv.I1 = R[1] * R[1] - R[2] * R[2] + R[5] * R[5] - R[7] * R[7] -
           2 * std::sqrt(2.0 / 3.0) * (1 - kSqrt2 * R[6]) * R[8];
  inv.I2 = R[5] * R[7] - R[1] * R[2] + 2 / kSqrt3 * (1 / kSqrt2 - R[6]) * R[4];
  const Mat3 rho = density_from_bloch(v);
  const Mat3 rho2 = rho * rho;
  const double tr2 = rho2.trace().real();
  const double tr3 = (rho2 * rho).trace().real();
  inv.det = (tr3 - tr2) / 3 + (2 - inv.b * inv.b) / 18;
  return inv;
}

Vec3 spin_expectations(const BlochVector& v) {
  // Tr(rho S_i) = (2/sqrt6) R_i for the C_a normalization.
  const double s = 2.0 / kSqrt6;
  return {s * v[1], s * v[2], s * v[3]};
}

ode::State pack(const BlochVector& v) {
  ode::State y(8);
  for (int i = 0; i < 8; ++i) y(i) = v[i + 1];
  return y;
}

BlochVector unpack(const ode::State& y) {
  if (y.size() != 8) throw DomainError("single::unpack: expected 8 components");
  BlochVector v;
  for (int i = 0; i < 8; ++i) v[i + 1] = y(i);
  return v;
}

ode::Rhs bloch_system(const FieldConfig& cfg) {
  cfg.validate();
  return [cfg](double t, const ode::State& y, ode::State& dy) {
    const Vec3 h = consistent_field(t, cfg);
    const auto coeffs = HamiltonianCoeffs::from_field(h[0], h[1], h[2], cfg.Q, cfg.d);
    dy.setZero(8);
    for (const su3::Entry& e : su3::nonzero_e()) {
      const double hv = coeffs.h[e.a - 1];
      if (hv != 0.0) dy(e.c - 1) += e.value * hv * y(e.b - 1);
    }
  };
}

ode::Trajectory evolve_bloch(const BlochVector& v0, const FieldConfig& cfg, double t_end,
                             const ode::IntegratorConfig& icfg) {
  return ode::integrate(bloch_system(cfg), pack(v0), {0.0, t_end}, icfg);
}

Vec3 populations(const BlochVector& v) {
  const double s6 = kSqrt6;
  const double s18 = std::sqrt(18.0);
  return {1.0 / 3 + v[3] / s6 + v[6] / s18, 1.0 / 3 - 2 * v[6] / s18, 1.0 / 3 - v[3] / s6 + v[6] / s18};
}

double default_horizon(double omega) { return 400.0 * 2.0 * std::numbers::pi / std::abs(omega); }

AveragedPopulations averaged_populations(const FieldConfig& cfg, const AveragingOptions& opts) {
  cfg.validate();
  const double tau = opts.tau.value_or(default_horizon(cfg.omega));
  if (!(tau > 0.0)) throw DomainError("averaged_populations: tau must be positive");
  if (opts.samples_per_period < 2) throw DomainError("averaged_populations: need >= 2 samples per period");

  const double period = 2.0 * std::numbers::pi / std::abs(cfg.omega);
  const auto n = static_cast<long>(std::ceil(tau / period * opts.samples_per_period));
  ode::IntegratorConfig icfg = opts.integrator;
  icfg.output_times.resize(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) icfg.output_times[static_cast<std::size_t>(i)] = tau * static_cast<double>(i) / n;

  BlochVector minus;  // |-1>
  minus[3] = -std::sqrt(1.5);
  minus[6] = 1.0 / kSqrt2;
  const auto traj = evolve_bloch(minus, cfg, tau, icfg);

  double plus = 0.0, zero = 0.0;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const double w = (i == 0 || i + 1 == traj.states.size()) ? 0.5 : 1.0;
    const Vec3 p = populations(unpack(traj.states[i]));
    plus += w * p[0];
    zero += w * p[1];
  }
  const double norm = static_cast<double>(traj.states.size() - 1);
  return {cfg.omega0 / cfg.omega, plus / norm, zero / norm};
}

std::vector<AveragedPopulations> averaged_populations(const FieldConfig& cfg, const AveragingOptions& opts,
                                                      const std::vector<double>& ratios, int jobs) {
  std::vector<AveragedPopulations> out(ratios.size());
  detail::parallel_for(ratios.size(), jobs, [&](std::size_t i) {
    FieldConfig c = cfg;
    c.omega0 = ratios[i] * cfg.omega;
    out[i] = averaged_populations(c, opts);
    out[i].omega0_over_omega = ratios[i];
  });
  return out;
}

}  // namespace qutrit::single
