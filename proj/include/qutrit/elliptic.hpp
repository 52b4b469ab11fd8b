#pragma once

/// Jacobi elliptic functions and the complete integral K.
///
/// Every function here takes the *modulus* k, not the parameter m = k^2.
/// sn(u|k) with k = 0.5 is what Abramowitz & Stegun write as sn(u|m=0.25);
/// Boost and scipy take m, so convert before comparing against them.
namespace qutrit::elliptic {

struct EllipticTriple {
  double sn = 0.0;
  double cn = 1.0;
  double dn = 1.0;
  double u = 0.0;
  double k = 0.0;
};

/// K(k) = integral_0^{pi/2} dtheta / sqrt(1 - k^2 sin^2 theta), via the
/// arithmetic-geometric mean. Requires 0 <= k < 1 (DomainError otherwise).
double complete_K(double k);

/// sn, cn, dn at argument u and modulus k in [0, 1].
///
/// Descending Landen transformation on the AGM sequence for 0 < k < 1;
/// k = 0 and k = 1 use the trigonometric / hyperbolic closed forms.
EllipticTriple jacobi(double u, double k);

}  // namespace qutrit::elliptic
