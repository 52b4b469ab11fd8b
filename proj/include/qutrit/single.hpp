#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qutrit/ode.hpp"
#include "qutrit/types.hpp"

/// One spin-1 particle: H = h.S + Q(S_3^2 - 2/3 E) + d(S_1^2 - S_2^2).
namespace qutrit::single {

/// Expansion of H over C_1..C_8: h = 2 (h_1, h_2, h_3, 0, 0, Q/sqrt3, 0, d),
/// so that H = (1/2) sum_i h_i C_i. Stored 0-based: h[0] multiplies C_1.
struct HamiltonianCoeffs {
  std::array<double, 8> h{};

  static HamiltonianCoeffs from_field(double h1, double h2, double h3, double Q = 0.0, double d = 0.0);
};

/// Drive parameters of the elliptic ("consistent") field
/// h(t) = (w1 cn(wt|k), w1 sn(wt|k), w0 dn(wt|k)) plus anisotropy.
struct FieldConfig {
  double omega1 = 0.0;
  double omega = 1.0;
  double omega0 = 1.0;
  double k = 0.0;
  double Q = 0.0;
  double d = 0.0;

  double detuning() const { return omega0 - omega; }
  void validate() const;
};

Mat3 density_from_bloch(const BlochVector& v);

/// R_i = sqrt(3/2) Tr(rho C_i). Throws ValidationError if |Tr rho - 1| > 1e-10.
BlochVector bloch_from_density(const Mat3& rho);

Mat3 hamiltonian(double h1, double h2, double h3, double Q = 0.0, double d = 0.0);

/// dR_l/dt = e_ijl h_i R_j for l = 1..8 (returned 0-based).
std::array<double, 8> bloch_rhs(const BlochVector& v, const HamiltonianCoeffs& h);

Vec3 consistent_field(double t, const FieldConfig& cfg);

/// alpha_1 = diag(f, 1, 1/f) with f = cn(wt|k) + i sn(wt|k).
Mat3 rotating_frame(double t, double k, double omega);

/// exp(-i theta S_1), closed form for spin 1.
Mat3 spin1_rotation_x(double theta);

/// Exact evolution at resonance (omega == omega0, no anisotropy):
/// rho(t) = alpha_1^{-1} e^{-i w1 t S_1} rho0 e^{i w1 t S_1} alpha_1.
/// Throws ContractViolation off resonance or with anisotropy.
Mat3 resonance_solution(const Mat3& rho0, double t, const FieldConfig& cfg);

/// A rotating-frame matrix function r(t).
using History = std::function<Mat3(double)>;

/// Zeroth order: free rotation r0(t) = e^{-i w1 t S_1} rho0 e^{i w1 t S_1}.
History free_rotation(const Mat3& rho0, double omega1);

/// Quadrature tolerance of the perturbation integrals.
inline constexpr double kPerturbationTolerance = 1e-10;

/// l-th term of the detuning expansion of the rotating-frame solution:
/// r_l(t) = -i delta int_0^t e^{i w1 (t'-t) S_1} dn(w t'|k) [S_3, r_{l-1}(t')] e^{-i w1 (t'-t) S_1} dt'
/// with r_{l-1} supplied as `previous` (order >= 1).
Mat3 perturbation_term(int order, const History& previous, double t, const FieldConfig& cfg,
                       double tolerance = kPerturbationTolerance);

/// History of the l-th term, built recursively from r0 (nested quadrature).
History perturbation_history(int order, const Mat3& rho0, const FieldConfig& cfg,
                             double tolerance = kPerturbationTolerance);

/// r0 + r1 + ... + r_order at time t, mapped back to the lab frame.
Mat3 perturbation_solution(int order, const Mat3& rho0, double t, const FieldConfig& cfg,
                           double tolerance = kPerturbationTolerance);

/// Closed form for the initial state |-1> at detuning delta in the circular
/// field (k = 0), lab frame.
Mat3 appendix_b_offresonance(double t, double delta, double omega1, double omega);

enum class ResonanceState {
  stochastic,  // (|1> + |0> + |-1>) / sqrt3
  middle,      // |0>
  mixed,       // diag(1/4, 1/2, 1/4)
};

/// Parses "stochastic", "middle", "mixed" (alias "coherent"); DomainError otherwise.
ResonanceState parse_resonance_state(std::string_view label);

/// Initial density matrix of each tabulated resonance case.
Mat3 resonance_initial_state(ResonanceState which);

/// Closed-form density matrices at exact resonance in the elliptic field.
Mat3 appendix_b_resonance_state(ResonanceState which, double t, double omega1, double omega, double k);

struct MotionInvariants {
  double b = 0.0;
  double I1 = 0.0;  // quadric pure-state invariants from (rho^2 - rho)_13 = 0
  double I2 = 0.0;
  double det = 0.0;  // (Tr rho^3 - Tr rho^2)/3 + (2 - b^2)/18
};

MotionInvariants motion_invariants(const BlochVector& v);

/// (<S_x>, <S_y>, <S_z>) = Tr(rho S_i).
Vec3 spin_expectations(const BlochVector& v);

/// Packs R_1..R_8 as an ODE state and back.
ode::State pack(const BlochVector& v);
BlochVector unpack(const ode::State& y);

/// Equation-of-motion right-hand side for the elliptic drive.
ode::Rhs bloch_system(const FieldConfig& cfg);

/// Numeric Bloch trajectory of the driven qutrit.
ode::Trajectory evolve_bloch(const BlochVector& v0, const FieldConfig& cfg, double t_end,
                             const ode::IntegratorConfig& icfg = {});

/// Level populations: (|1>, |0>, |-1>).
Vec3 populations(const BlochVector& v);

struct AveragedPopulations {
  double omega0_over_omega = 0.0;
  double p_plus = 0.0;
  double p_zero = 0.0;
};

/// Default averaging horizon: 400 drive periods 2 pi / omega.
double default_horizon(double omega);

struct AveragingOptions {
  std::optional<double> tau;     // averaging horizon; unset selects default_horizon
  int samples_per_period = 32;   // trapezoid nodes per 2 pi / omega
  ode::IntegratorConfig integrator{};
};

/// Time averages of the |1> and |0> populations over [0, tau], starting in |-1>.
/// Throws DomainError when tau <= 0.
AveragedPopulations averaged_populations(const FieldConfig& cfg, const AveragingOptions& opts);

/// Same for every omega0/omega ratio in the grid; fans out over `jobs` threads,
/// results in grid order.
std::vector<AveragedPopulations> averaged_populations(const FieldConfig& cfg, const AveragingOptions& opts,
                                                      const std::vector<double>& ratios, int jobs);

}  // namespace qutrit::single
