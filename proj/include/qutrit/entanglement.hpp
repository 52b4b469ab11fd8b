#pragma once

#include <array>
#include <string_view>

#include "qutrit/types.hpp"

/// Entanglement measures for qutrit pairs and chains.
namespace qutrit::entanglement {

/// Reduced 3x3 matrix of site `keep` (0-based, site 0 most significant)
/// from an N-qutrit density matrix. DomainError on a bad site or size.
Mat3 partial_trace(const MatX& rho, int keep, int N);

/// Same from a pure state vector, without forming the full density matrix.
Mat3 reduced_from_pure(const VecX& psi, int keep, int N);

/// (T (x) E) rho: transpose on the first qutrit of a pair.
Mat9 partial_transpose(const Mat9& rho);

/// Ascending eigenvalues by Jacobi rotations. ValidationError when the
/// Hermiticity residual exceeds 1e-10.
Eigen::VectorXd hermitian_eigenvalues(const MatX& M);

/// Negativity: |sum of the negative eigenvalues of the partial transpose|.
double negativity_mvw(const Mat9& rho);

/// sqrt( (1/8) sum_{i,j=1..8} (R_ij - R_i0 R_0j)^2 ).
double m_sm(const BlochTensor& R);

enum class ClosedForm { ghz, sym, aniso };

/// "ghz", "sym", "aniso"; DomainError otherwise.
ClosedForm parse_closed_form(std::string_view label);

/// Closed-form m_SM for the maximally entangled start (ghz), the symmetric
/// start |s> (sym), and the zero-field anisotropic case Q = d = Qbar = dbar
/// (aniso, maximally entangled start). Q is ignored unless which == aniso.
double m_sm_closed_form(ClosedForm which, double t, double J, double Q = 0.0);

/// Coefficients q_0..q_4 of the anisotropic formula.
std::array<double, 5> aniso_coefficients(double J, double Q);

/// -sum r_i log_3 r_i. Eigenvalues in [-1e-10, 0) are treated as zero;
/// ValidationError for anything more negative or when |sum r - 1| > 1e-9.
double eta_n(const std::array<double, 3>& r);

/// eta of the site reduced matrix (eigenvalues computed here).
double eta_of_reduced(const Mat3& rho1);

/// (sqrt3 / 2) sqrt(2 (1 - Tr rho1^2)).
double i_concurrence(const Mat3& rho1);

struct MeasureReport {
  double m_vw = 0.0;
  double m_sm = 0.0;
  double eta = 0.0;  // mean of the two reduced entropies
  double m_i = 0.0;  // from the first qutrit
  double t = 0.0;
};

MeasureReport pair_measures(const Mat9& rho, double t = 0.0);

}  // namespace qutrit::entanglement
