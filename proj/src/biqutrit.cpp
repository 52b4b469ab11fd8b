#include "qutrit/biqutrit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "qutrit/elliptic.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/single.hpp"
#include "qutrit/su3.hpp"

namespace qutrit::biqutrit {
namespace {

const double kSqrt2_3 = std::sqrt(2.0 / 3.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

Mat9 kron3(const Mat3& a, const Mat3& b) { return linalg::kron(a, b); }

struct ProductBasis {
  std::array<Mat9, 81> m;
  ProductBasis() {
    for (int a = 0; a < 9; ++a)
      for (int b = 0; b < 9; ++b) m[9 * a + b] = kron3(su3::basis_matrix(a), su3::basis_matrix(b));
  }
  const Mat9& operator()(int a, int b) const { return m[static_cast<std::size_t>(9 * a + b)]; }
};

const ProductBasis& product_basis() {
  static const ProductBasis basis;
  return basis;
}

// Nonzero g_rln grouped by the first index r.
struct GByFirst {
  std::array<std::vector<su3::Entry>, 9> rows;
  GByFirst() {
    for (const su3::Entry& e : su3::nonzero_g()) rows[static_cast<std::size_t>(e.a)].push_back(e);
  }
};

const GByFirst& g_by_first() {
  static const GByFirst table;
  return table;
}

Mat3 single_part(const Vec3& h, double Q, double d) { return single::hamiltonian(h[0], h[1], h[2], Q, d); }

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

void PairConfig::validate() const {
  if (!(k >= 0.0 && k <= 1.0)) throw DomainError("pair: elliptic modulus outside [0, 1]");
  for (double v : {omega1, omega0, varpi1, varpi0, omega, Q, d, Qbar, dbar, J}) {
    if (!std::isfinite(v)) throw DomainError("pair: non-finite parameter");
  }
}

PairFields pair_fields(const PairConfig& cfg, double t) {
  const auto j = elliptic::jacobi(cfg.omega * t, cfg.k);
  PairFields f;
  f.h = {cfg.omega1 * j.cn, cfg.omega1 * j.sn, cfg.omega0 * j.dn};
  f.hbar = {cfg.varpi1 * j.cn, cfg.varpi1 * j.sn, cfg.varpi0 * j.dn};
  f.Q = cfg.Q;
  f.d = cfg.d;
  f.Qbar = cfg.Qbar;
  f.dbar = cfg.dbar;
  f.J = cfg.J;
  return f;
}

CoeffTensor coefficients(const PairFields& f) {
  CoeffTensor h = CoeffTensor::Zero();
  const std::array<double, 8> first{f.h[0], f.h[1], f.h[2], 0.0, 0.0, f.Q / kSqrt3, 0.0, f.d};
  const std::array<double, 8> second{f.hbar[0], f.hbar[1], f.hbar[2], 0.0, 0.0, f.Qbar / kSqrt3, 0.0, f.dbar};
  for (int p = 1; p < 9; ++p) {
    h(p, 0) = kSqrt6 * first[static_cast<std::size_t>(p - 1)];
    h(0, p) = kSqrt6 * second[static_cast<std::size_t>(p - 1)];
  }
  for (int i = 1; i <= 3; ++i) h(i, i) = 2.0 * f.J;
  return h;
}

Mat9 hamiltonian2(const PairFields& f) {
  const Mat3 E = Mat3::Identity();
  Mat9 H = kron3(single_part(f.h, f.Q, f.d), E) + kron3(E, single_part(f.hbar, f.Qbar, f.dbar));
  for (int i = 1; i <= 3; ++i) H += f.J * kron3(su3::spin(i), su3::spin(i));
  return H;
}

Mat9 density_from_tensor(const BlochTensor& R) {
  const auto& basis = product_basis();
  Mat9 rho = Mat9::Zero();
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b)
      if (R(a, b) != 0.0) rho += R(a, b) * basis(a, b);
  return rho / 6.0;
}

BlochTensor tensor_from_density(const Mat9& rho) {
  const Complex tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw ValidationError("tensor_from_density: trace " + std::to_string(tr.real()) + " is not 1");
  }
  const auto& basis = product_basis();
  BlochTensor R;
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < 9; ++b) {
      // Tr(rho M) without forming the product.
      R(a, b) = 1.5 * (rho.transpose().cwiseProduct(basis(a, b))).sum().real();
    }
  R(0, 0) = 1.0;
  return R;
}

double bloch_length(const BlochTensor& R) { return std::sqrt(std::max(0.0, R.squaredNorm() - 1.0)); }

BlochTensor bloch2_rhs(const BlochTensor& R, const CoeffTensor& h) {
  BlochTensor out = BlochTensor::Zero();
  const auto& g = g_by_first().rows;
  for (const su3::Entry& e : su3::nonzero_e()) {
    const int p = e.a, i = e.b, c = e.c;
    const double v = e.value;

    // Single-particle rows: c plays the role of m.
    double first = h(p, 0) * R(i, 0);
    double second = h(0, p) * R(0, i);
    for (int l = 1; l < 9; ++l) {
      first += h(p, l) * R(i, l);
      second += h(l, p) * R(l, i);
    }
    out(c, 0) += kSqrt2_3 * v * first;
    out(0, c) += kSqrt2_3 * v * second;

    // Correlations, first bracket with m = c.
    for (int n = 1; n < 9; ++n) out(c, n) += v * kSqrt2_3 * (h(p, n) * R(i, 0) + h(p, 0) * R(i, n));
    for (int r = 1; r < 9; ++r) {
      const double hpr = h(p, r);
      if (hpr == 0.0) continue;
      for (const su3::Entry& ge : g[static_cast<std::size_t>(r)]) out(c, ge.c) += v * ge.value * hpr * R(i, ge.b);
    }
    // Second bracket with n = c.
    for (int m = 1; m < 9; ++m) out(m, c) += v * kSqrt2_3 * (h(m, p) * R(0, i) + h(0, p) * R(m, i));
    for (int r = 1; r < 9; ++r) {
      const double hrp = h(r, p);
      if (hrp == 0.0) continue;
      for (const su3::Entry& ge : g[static_cast<std::size_t>(r)]) out(ge.c, c) += v * ge.value * hrp * R(ge.b, i);
    }
  }
  return out;
}

ode::State pack(const BlochTensor& R) {
  ode::State y(80);
  for (int k = 1; k < 81; ++k) y(k - 1) = R(k / 9, k % 9);
  return y;
}

BlochTensor unpack(const ode::State& y) {
  if (y.size() != 80) throw DomainError("biqutrit::unpack: expected 80 components");
  BlochTensor R;
  R(0, 0) = 1.0;
  for (int k = 1; k < 81; ++k) R(k / 9, k % 9) = y(k - 1);
  return R;
}

ode::Rhs bloch2_system(FieldSchedule fields) {
  return [fields = std::move(fields)](double t, const ode::State& y, ode::State& dy) {
    const BlochTensor d = bloch2_rhs(unpack(y), coefficients(fields(t)));
    dy.resize(80);
    for (int k = 1; k < 81; ++k) dy(k - 1) = d(k / 9, k % 9);
  };
}

Mat9 transformed_hamiltonian(const PairConfig& cfg) {
  cfg.validate();
  if (cfg.anisotropic()) throw ContractViolation("transformed_hamiltonian: anisotropy must be zero");
  const Mat3 E = Mat3::Identity();
  const Mat3& S1 = su3::spin(1);
  const Mat3& S3 = su3::spin(3);
  Mat9 H = cfg.omega1 * kron3(S1, E) + cfg.varpi1 * kron3(E, S1) + (cfg.omega0 - cfg.omega) * kron3(S3, E) +
           (cfg.varpi0 - cfg.omega) * kron3(E, S3);
  for (int i = 1; i <= 3; ++i) H += cfg.J * kron3(su3::spin(i), su3::spin(i));
  return H;
}

Mat9 pair_rotating_frame(double t, double k, double omega) {
  const Mat3 a = single::rotating_frame(t, k, omega);
  return kron3(a, a);
}

bool exact_solution_applies(const PairConfig& cfg) {
  return !cfg.anisotropic() && (cfg.k == 0.0 || (near(cfg.omega, cfg.omega0) && near(cfg.omega, cfg.varpi0)));
}

ExactPairEvolution::ExactPairEvolution(const PairConfig& cfg) : cfg_(cfg) {
  cfg.validate();
  if (cfg.anisotropic()) throw ContractViolation("exact pair solution: anisotropy must be zero");
  if (!exact_solution_applies(cfg)) {
    throw ContractViolation("exact pair solution: k != 0 requires omega == omega0 == varpi0");
  }
  eig_ = linalg::jacobi_eigen(transformed_hamiltonian(cfg));
}

Mat9 ExactPairEvolution::density(const Mat9& rho0, double t) const {
  const MatX U = linalg::propagator(eig_, t);
  const Mat9 a = pair_rotating_frame(t, cfg_.k, cfg_.omega);
  // alpha_2 is diagonal and unitary, so alpha_2^{-1} = alpha_2^H.
  return a.adjoint() * U * rho0 * U.adjoint() * a;
}

VecX ExactPairEvolution::state(const VecX& psi0, double t) const {
  if (psi0.size() != 9) throw DomainError("exact pair solution: expected a 9-component state");
  const Mat9 a = pair_rotating_frame(t, cfg_.k, cfg_.omega);
  return a.adjoint() * linalg::propagate(eig_, psi0, t);
}

Mat9 exact_solution_circular(const Mat9& rho0, double t, const PairConfig& cfg) {
  return ExactPairEvolution(cfg).density(rho0, t);
}

BlochTensor appendix_c_correlations(double t, double J, double omega1, double h, double k) {
  const auto j = elliptic::jacobi(h * t, k);
  const double sn = j.sn, cn = j.cn;
  const double c3 = std::cos(3 * J * t);
  const double s3 = std::sin(3 * J * t);
  const double sh = std::pow(std::sin(1.5 * J * t), 2);
  const double cw = std::cos(omega1 * t);
  const double sw = std::sin(omega1 * t);
  const double cw2 = cw * cw;
  const double c2w = std::cos(2 * omega1 * t);
  const double s2w = std::sin(2 * omega1 * t);
  const double c4w = std::cos(4 * omega1 * t);
  const double s4w = std::sin(4 * omega1 * t);
  const double cm = std::cos((3 * J - 2 * omega1) * t);
  const double cp = std::cos((3 * J + 2 * omega1) * t);
  const double D = cn * cn - sn * sn;
  const double r23 = kSqrt2_3;
  const double q3 = kSqrt3;

  BlochTensor R = BlochTensor::Zero();
  R(0, 0) = 1.0;
  // single-particle functions R_0m
  R(0, 4) = 8.0 / 3 * r23 * cw2 * cn * sn * sh;
  R(0, 5) = -4.0 / 3 * r23 * cn * sh * s2w;
  R(0, 6) = 2.0 / 9 * std::sqrt(2.0) * (3 * c2w - 1) * sh;
  R(0, 7) = 4.0 / 3 * r23 * sn * s2w * sh;
  R(0, 8) = 4.0 / 3 * r23 * cw2 * (1 - 2 * sn * sn) * sh;
  // R_1n
  R(1, 1) = (16 + 12 * (c3 + 2) * D * cw2 + 2 * c3 - 3 * cm - 12 * c2w - 3 * cp) / 36;
  R(1, 2) = 2.0 / 3 * (c3 + 2) * cn * sn * cw2;
  R(1, 3) = (c3 + 2) * sn * s2w / 3;
  R(1, 4) = sn * s3 * s2w / 3;
  R(1, 5) = (2 * D * cw2 + 3 * c2w - 1) * s3 / 6;
  R(1, 6) = cn * s3 * s2w / q3;
  R(1, 7) = -2.0 / 3 * cw2 * cn * sn * s3;
  R(1, 8) = R(1, 6) / q3;
  // R_2n
  R(2, 2) = (-6 * (c3 + 2) * D * cw2 + c3 - 3 * (c3 + 2) * c2w + 8) / 18;
  R(2, 3) = -(c3 + 2) * cn * s2w / 3;
  R(2, 4) = R(1, 6) / q3;
  R(2, 5) = -R(1, 7);
  R(2, 6) = q3 * R(1, 4);
  R(2, 7) = (2 * D * cw2 - 3 * c2w + 1) * s3 / 6;
  R(2, 8) = -R(2, 6) / q3;
  // R_3n
  R(3, 3) = (-2 * c3 + 3 * cm + 12 * c2w + 3 * cp + 2) / 18;
  R(3, 4) = -2.0 / 3 * cw2 * D * s3;
  R(3, 5) = -R(1, 4);
  R(3, 6) = 0.0;
  R(3, 7) = -cn * s3 * s2w / 3;
  R(3, 8) = 4.0 / 3 * cw2 * cn * sn * s3;
  // R_4n
  const double cnsn = cn * sn;
  R(4, 4) = (-72 * (1 - 8 * cnsn * cnsn) * cw2 * cw2 + 8 * c3 - 12 * (2 * c3 + 1) * c2w + 9 * c4w + 19) / 72;
  R(4, 5) = sn * (24 * (sn * sn - 3 * cn * cn) * sw * cw2 * cw + 2 * (2 * c3 + 1) * s2w - 3 * s4w) / 12;
  R(4, 6) = -2.0 / (3 * q3) * cw2 * (2 * c3 - 9 * c2w + 7) * cnsn;
  R(4, 7) = cn * (-24 * (cn * cn - 3 * sn * sn) * sw * cw2 * cw - 2 * (2 * c3 + 1) * s2w + 3 * s4w) / 12;
  R(4, 8) = 4 * cw2 * cw2 * cnsn * D;
  // R_5n
  R(5, 5) = (-6 * (c3 + 6 * c2w - 4) * D * cw2 - c3 + 3 * (c3 + 2) * c2w - 9 * c4w + 1) / 18;
  R(5, 6) = cn * (4 * sh * s2w - 9 * s4w) / (6 * q3);
  R(5, 7) = (2 * c3 + cm + 4 * c2w + 6 * c4w + cp - 2) * cnsn / 6;
  R(5, 8) = cn * (-24 * (cn * cn - 3 * sn * sn) * sw * cw2 * cw + 2 * (2 * c3 + 1) * s2w - 3 * s4w) / 12;
  // R_6n
  R(6, 6) = (-4 * c3 + 6 * cm - 12 * c2w + 27 * c4w + 6 * cp + 13) / 36;
  R(6, 7) = sn * (2 * (c3 - 1) * s2w + 9 * s4w) / (6 * q3);
  R(6, 8) = cw2 * (-2 * c3 + 9 * c2w - 7) * D / (3 * q3);
  // R_7n
  R(7, 7) = ((c3 - 1) * (3 * D - 1) + 9 * c4w * (D - 1) + 3 * (c3 + 2) * c2w * (D + 1)) / 18;
  R(7, 8) = sn * (6 * (3 * cn * cn - sn * sn) * cw2 + 2 * c3 - 3 * c2w + 1) * s2w / 6;
  // R_8n
  R(8, 8) = (72 * (1 - 8 * cnsn * cnsn) * cw2 * cw2 + 8 * c3 - 12 * (2 * c3 + 1) * c2w + 9 * c4w + 19) / 72;

  // Permutation symmetry R_ab = R_ba fills the lower triangle and R_m0.
  for (int a = 0; a < 9; ++a)
    for (int b = 0; b < a; ++b) R(a, b) = R(b, a);
  return R;
}

double energy(const BlochTensor& R, const CoeffTensor& h) { return h.cwiseProduct(R).sum() / 3.0; }

double impulse_amplitude(double t) {
  auto theta = [](double x) { return x >= 0.0 ? 1.0 : 0.0; };
  return 2.0 * (theta((t - 17) * (t - 60)) + theta((40 - t) * (57 - t) * (t - 60)));
}

PairFields impulse_field(double t, double J) {
  PairFields f;
  const double h3 = impulse_amplitude(t);
  f.h = {0.0, 0.0, h3};
  f.hbar = {0.0, 0.0, -h3};
  f.J = J;
  return f;
}

std::vector<double> impulse_discontinuities() { return {17.0, 40.0, 57.0, 60.0}; }

std::array<double, 9> opposite_field_spectrum(double J, double omega0) {
  const double p = std::sqrt(J * J + omega0 * omega0);
  // Roots of x^3 + b x^2 + c x + d by the trigonometric form; all three are real.
  const double b = 2 * J, c = -(J * J + 4 * omega0 * omega0), d = -2 * J * J * J;
  const double a1 = c - b * b / 3;
  const double a0 = 2 * b * b * b / 27 - b * c / 3 + d;
  std::array<double, 9> ev{J, J, -p, -p, p, p};
  if (a1 == 0.0) {
    ev[6] = ev[7] = ev[8] = std::cbrt(-a0) - b / 3;
  } else {
    const double m = 2 * std::sqrt(-a1 / 3);
    const double arg = std::clamp(3 * a0 / (a1 * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3;
    for (int k = 0; k < 3; ++k)
      ev[static_cast<std::size_t>(6 + k)] = m * std::cos(phi - 2 * std::numbers::pi * k / 3) - b / 3;
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace qutrit::biqutrit
