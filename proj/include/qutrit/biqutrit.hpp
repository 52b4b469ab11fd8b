#pragma once

#include <array>
#include <functional>
#include <vector>

#include "qutrit/linalg.hpp"
#include "qutrit/ode.hpp"
#include "qutrit/types.hpp"

/// Two coupled qutrits. Kronecker products put the first qutrit in the most
/// significant position: basis index 3*a + b for |a> (x) |b>, with each
/// factor ordered |1>, |0>, |-1>.
namespace qutrit::biqutrit {

/// Instantaneous fields on both qutrits plus anisotropy and exchange.
struct PairFields {
  Vec3 h{};     // first qutrit
  Vec3 hbar{};  // second qutrit
  double Q = 0.0, d = 0.0;
  double Qbar = 0.0, dbar = 0.0;
  double J = 0.0;
};

/// Elliptic drive on both qutrits with a shared frequency and modulus:
/// h = (w1 cn, w1 sn, w0 dn), hbar = (v1 cn, v1 sn, v0 dn), all at (omega t|k).
struct PairConfig {
  double omega1 = 0.0, omega0 = 0.0;
  double varpi1 = 0.0, varpi0 = 0.0;
  double omega = 1.0;
  double k = 0.0;
  double Q = 0.0, d = 0.0, Qbar = 0.0, dbar = 0.0;
  double J = 0.0;

  void validate() const;
  bool anisotropic() const { return Q != 0.0 || d != 0.0 || Qbar != 0.0 || dbar != 0.0; }
};

PairFields pair_fields(const PairConfig& cfg, double t);

/// Expansion coefficients h_ab of H_2 = (1/2) h_ab C_a (x) C_b:
/// h_p0 = sqrt6 (h, 0, 0, Q/sqrt3, 0, d), h_0p likewise, h_11 = h_22 = h_33 = 2J.
using CoeffTensor = Eigen::Matrix<double, 9, 9>;
CoeffTensor coefficients(const PairFields& f);

Mat9 hamiltonian2(const PairFields& f);

/// rho = (1/6) R_ab C_a (x) C_b.
Mat9 density_from_tensor(const BlochTensor& R);

/// R_ab = (3/2) Tr(rho C_a (x) C_b). ValidationError if |Tr rho - 1| > 1e-10.
BlochTensor tensor_from_density(const Mat9& rho);

/// Generalized Bloch length sqrt(sum R_ab^2 - 1); 2 sqrt2 for pure states.
double bloch_length(const BlochTensor& R);

/// Right-hand side of the 80-equation system (entry (0,0) is left zero).
BlochTensor bloch2_rhs(const BlochTensor& R, const CoeffTensor& h);

/// Row-major over (a, b) with (0, 0) omitted.
ode::State pack(const BlochTensor& R);
BlochTensor unpack(const ode::State& y);

using FieldSchedule = std::function<PairFields(double t)>;

ode::Rhs bloch2_system(FieldSchedule fields);

/// Time-independent Hamiltonian in the frame rotated by alpha_2 = alpha_1 (x) alpha_1:
/// w1 S1(x)E + v1 E(x)S1 + D(w0 - w) S3(x)E + D(v0 - w) E(x)S3 + J S.S with D = 1.
/// Throws ContractViolation when any anisotropy constant is nonzero.
Mat9 transformed_hamiltonian(const PairConfig& cfg);

/// alpha_1(t) (x) alpha_1(t).
Mat9 pair_rotating_frame(double t, double k, double omega);

/// Exact propagation rho(t) = alpha_2^{-1} e^{-i Ht t} rho0 e^{i Ht t} alpha_2.
///
/// Valid for circular polarization (k = 0), and for any k at the common
/// resonance omega = omega0 = varpi0 where the dn-weighted detunings vanish.
/// Throws ContractViolation outside these conditions or with anisotropy.
class ExactPairEvolution {
 public:
  explicit ExactPairEvolution(const PairConfig& cfg);

  Mat9 density(const Mat9& rho0, double t) const;
  VecX state(const VecX& psi0, double t) const;
  const linalg::EigenSystem& spectrum() const { return eig_; }

 private:
  PairConfig cfg_;
  linalg::EigenSystem eig_;
};

/// True when ExactPairEvolution accepts the configuration.
bool exact_solution_applies(const PairConfig& cfg);

Mat9 exact_solution_circular(const Mat9& rho0, double t, const PairConfig& cfg);

/// Closed-form correlation tensor for the initial state (|11> + |00> + |-1-1>)/sqrt3
/// at the resonance omega = omega0 = varpi0 = h, varpi1 = omega1; u = (h t|k).
BlochTensor appendix_c_correlations(double t, double J, double omega1, double h, double k);

/// E = (1/3) h_ab R_ab, equal to Tr(H_2 rho).
double energy(const BlochTensor& R, const CoeffTensor& h);

/// Longitudinal pulse amplitude 2 (theta((t-17)(t-60)) + theta((40-t)(57-t)(t-60)))
/// with theta(0) = 1. The first qutrit sees +h3, the second -h3.
double impulse_amplitude(double t);
PairFields impulse_field(double t, double J);

/// Times where the pulse train switches.
std::vector<double> impulse_discontinuities();

/// Spectrum of H_2 in static opposite fields h = -hbar = (0, 0, w0), no
/// anisotropy, ascending: J, J, +-p twice with p = sqrt(J^2 + w0^2), and the
/// roots of x^3 + 2J x^2 - (J^2 + 4 w0^2) x - 2J^3 = 0.
std::array<double, 9> opposite_field_spectrum(double J, double omega0);


}  // namespace qutrit::biqutrit
