#include "qutrit/elliptic.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qutrit/errors.hpp"

namespace qutrit::elliptic {
namespace {

constexpr int kMaxAgmSteps = 32;
constexpr double kAgmTolerance = 1e-15;

void check_modulus(double k) {
  if (!(k >= 0.0 && k <= 1.0)) {
    throw DomainError("elliptic: modulus k=" + std::to_string(k) + " outside [0, 1]");
  }
}

}  // namespace

double complete_K(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("elliptic: complete_K needs 0 <= k < 1, got k=" + std::to_string(k));
  }
  double a = 1.0;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  for (int n = 0; n < kMaxAgmSteps && std::abs(a - b) > kAgmTolerance * a; ++n) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return std::numbers::pi / (a + b);
}

EllipticTriple jacobi(double u, double k) {
  check_modulus(k);
  EllipticTriple r;
  r.u = u;
  r.k = k;
  if (k == 0.0) {
    r.sn = std::sin(u);
    r.cn = std::cos(u);
    r.dn = 1.0;
    return r;
  }
  if (k == 1.0) {
    r.sn = std::tanh(u);
    r.cn = 1.0 / std::cosh(u);
    r.dn = r.cn;
    return r;
  }

  // AGM sequence: a_n, c_n with c_n = (a_{n-1} - b_{n-1}) / 2.
  std::array<double, kMaxAgmSteps + 1> a{};
  std::array<double, kMaxAgmSteps + 1> c{};
  a[0] = 1.0;
  c[0] = k;
  double b = std::sqrt((1.0 - k) * (1.0 + k));
  int n = 0;
  while (n < kMaxAgmSteps && std::abs(c[n]) > kAgmTolerance * a[n]) {
    a[n + 1] = 0.5 * (a[n] + b);
    c[n + 1] = 0.5 * (a[n] - b);
    b = std::sqrt(a[n] * b);
    ++n;
  }

  // phi_N = 2^N a_N u, then descend: phi_{n-1} = (phi_n + asin(c_n/a_n sin phi_n)) / 2.
  double phi = std::ldexp(a[n] * u, n);
  for (int j = n; j > 0; --j) {
    phi = 0.5 * (phi + std::asin(c[j] / a[j] * std::sin(phi)));
  }
  r.sn = std::sin(phi);
  r.cn = std::cos(phi);
  // dn^2 = k'^2 + k^2 cn^2: both terms non-negative, so no cancellation near
  // u = K where the textbook ratio cos(phi_0) / cos(phi_1 - phi_0) is 0/0.
  const double kc2 = (1.0 - k) * (1.0 + k);
  r.dn = std::sqrt(kc2 + k * k * r.cn * r.cn);
  return r;
}

}  // namespace qutrit::elliptic
