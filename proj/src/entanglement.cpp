#include "qutrit/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qutrit/biqutrit.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/linalg.hpp"

namespace qutrit::entanglement {
namespace {

long pow3(int n) {
  long p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

void check_site(int keep, int N) {
  if (N < 1 || N > 12) throw DomainError("partial_trace: unsupported particle count");
  if (keep < 0 || keep >= N) throw DomainError("partial_trace: site " + std::to_string(keep) + " out of range");
}

}  // namespace

Mat3 partial_trace(const MatX& rho, int keep, int N) {
  check_site(keep, N);
  const long dim = pow3(N);
  if (rho.rows() != dim || rho.cols() != dim) throw DomainError("partial_trace: dimension mismatch");
  const long inner = pow3(N - 1 - keep);  // stride of the kept site
  Mat3 out = Mat3::Zero();
  for (long i = 0; i < dim; ++i) {
    const long a = (i / inner) % 3;
    const long rest = i - a * inner;
    for (int b = 0; b < 3; ++b) out(a, b) += rho(i, rest + b * inner);
  }
  return out;
}

Mat3 reduced_from_pure(const VecX& psi, int keep, int N) {
  check_site(keep, N);
  const long dim = pow3(N);
  if (psi.size() != dim) throw DomainError("reduced_from_pure: dimension mismatch");
  const long inner = pow3(N - 1 - keep);
  Mat3 out = Mat3::Zero();
  for (long i = 0; i < dim; ++i) {
    const long a = (i / inner) % 3;
    const long rest = i - a * inner;
    for (int b = 0; b < 3; ++b) out(a, b) += psi(i) * std::conj(psi(rest + b * inner));
  }
  return out;
}

Mat9 partial_transpose(const Mat9& rho) {
  Mat9 out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int ap = 0; ap < 3; ++ap)
        for (int bp = 0; bp < 3; ++bp) out(3 * a + b, 3 * ap + bp) = rho(3 * ap + b, 3 * a + bp);
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const MatX& M) {
  const double res = linalg::hermiticity_residual(M);
  if (res > 1e-10) throw ValidationError("hermitian_eigenvalues: matrix is not Hermitian (residual " + std::to_string(res) + ")");
  return linalg::jacobi_eigen(M).values;
}

double negativity_mvw(const Mat9& rho) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(partial_transpose(rho));
  double s = 0.0;
  for (double x : ev)
    if (x < 0.0) s += x;
  return std::abs(s);
}

double m_sm(const BlochTensor& R) {
  double s = 0.0;
  for (int i = 1; i < 9; ++i)
    for (int j = 1; j < 9; ++j) {
      const double c = R(i, j) - R(i, 0) * R(0, j);
      s += c * c;
    }
  return std::sqrt(s / 8.0);
}

ClosedForm parse_closed_form(std::string_view label) {
  if (label == "ghz") return ClosedForm::ghz;
  if (label == "sym") return ClosedForm::sym;
  if (label == "aniso") return ClosedForm::aniso;
  throw DomainError("unknown closed form '" + std::string(label) + "'");
}

std::array<double, 5> aniso_coefficients(double J, double Q) {
  const double J2 = J * J, J3 = J2 * J, J4 = J2 * J2;
  const double Q2 = Q * Q, Q3 = Q2 * Q, Q4 = Q2 * Q2;
  const double JQ2 = (J + 2 * Q) * (J + 2 * Q);
  std::array<double, 5> q{};
  q[0] = 4457 * J4 * J4 + 11616 * Q * J4 * J3 + 47392 * Q2 * J3 * J3 + 85888 * Q3 * J4 * J + 163072 * Q4 * J4 +
         194560 * Q4 * Q * J3 + 221184 * Q3 * Q3 * J2 + 131072 * Q4 * Q3 * J + 65536 * Q4 * Q4;
  q[1] = 8 * J2 * JQ2 * (347 * J4 + 518 * Q * J3 + 1440 * Q2 * J2 + 1504 * Q3 * J + 1024 * Q4);
  q[2] = -8 * J2 * JQ2 * (79 * J4 + 76 * Q * J3 + 320 * Q2 * J2 + 448 * Q3 * J + 256 * Q4);
  q[3] = -8 * J3 * (7 * J - 4 * Q) * JQ2 * (J + 2 * Q) * (J + 4 * Q);
  q[4] = 16 * J4 * JQ2 * JQ2;
  return q;
}

double m_sm_closed_form(ClosedForm which, double t, double J, double Q) {
  switch (which) {
    case ClosedForm::ghz: {
      const double x = 3 * J * t;
      const double s = 4457 + 2776 * std::cos(x) - 632 * std::cos(2 * x) - 56 * std::cos(3 * x) + 16 * std::cos(4 * x);
      return std::sqrt(std::max(0.0, s)) / 81.0;
    }
    case ClosedForm::sym: {
      const double x = 3 * J * t;
      const double s =
          102679 + 19136 * std::cos(x) + 29312 * std::cos(2 * x) - 1024 * std::cos(3 * x) + 800 * std::cos(4 * x);
      return std::sqrt(std::max(0.0, s) / 209952.0);
    }
    case ClosedForm::aniso: {
      const double nu2 = 9 * J * J + 8 * Q * J + 16 * Q * Q;
      if (nu2 == 0.0) return 1.0;  // no dynamics at all
      const double nu = std::sqrt(nu2);
      const auto q = aniso_coefficients(J, Q);
      double s = 0.0;
      for (int k = 0; k < 5; ++k) s += q[static_cast<std::size_t>(k)] * std::cos(k * nu * t);
      return std::sqrt(std::max(0.0, s)) / (nu2 * nu2);
    }
  }
  throw DomainError("m_sm_closed_form: bad label");
}

double eta_n(const std::array<double, 3>& r) {
  double sum = 0.0, h = 0.0;
  for (double x : r) {
    if (x < -1e-10) throw ValidationError("eta_n: negative eigenvalue " + std::to_string(x));
    sum += x;
    if (x > 0.0) h -= x * std::log(x);
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("eta_n: eigenvalues do not sum to 1");
  return h / std::log(3.0);
}

double eta_of_reduced(const Mat3& rho1) {
  const Eigen::VectorXd ev = hermitian_eigenvalues(rho1);
  return eta_n({ev(0), ev(1), ev(2)});
}

double i_concurrence(const Mat3& rho1) {
  const double purity = (rho1 * rho1).trace().real();
  return std::sqrt(3.0) / 2.0 * std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
}

MeasureReport pair_measures(const Mat9& rho, double t) {
  MeasureReport r;
  r.t = t;
  r.m_vw = negativity_mvw(rho);
  r.m_sm = m_sm(biqutrit::tensor_from_density(rho));
  const Mat3 first = partial_trace(rho, 0, 2);
  const Mat3 second = partial_trace(rho, 1, 2);
  r.eta = 0.5 * (eta_of_reduced(first) + eta_of_reduced(second));
  r.m_i = i_concurrence(first);
  return r;
}

}  // namespace qutrit::entanglement
