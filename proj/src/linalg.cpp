#include "qutrit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qutrit/errors.hpp"

namespace qutrit::linalg {

MatX kron(const MatX& a, const MatX& b) {
  MatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double hermiticity_residual(const MatX& M) {
  if (M.rows() != M.cols()) throw DomainError("linalg: matrix is not square");
  if (M.size() == 0) return 0.0;
  return (M - M.adjoint()).cwiseAbs().maxCoeff();
}

EigenSystem jacobi_eigen(const MatX& M, double threshold) {
  if (M.rows() != M.cols()) throw DomainError("linalg: matrix is not square");
  const Eigen::Index n = M.rows();
  MatX A = 0.5 * (M + M.adjoint());
  MatX V = MatX::Identity(n, n);

  const double scale = A.norm();
  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index q = 0; q < n; ++q)
      for (Eigen::Index p = 0; p < q; ++p) s += std::norm(A(p, q));
    return std::sqrt(2.0 * s);
  };

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps && scale > 0.0; ++sweep) {
    if (off_norm() <= threshold * scale) break;
    bool rotated = false;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = A(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const double app = A(p, p).real();
        const double aqq = A(q, q).real();
        // Negligible against both diagonals: would not change them in double.
        if (r < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          A(p, q) = A(q, p) = 0.0;
          continue;
        }
        rotated = true;
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex phase = std::conj(apq) / r;  // e^{-i arg a_pq}
        // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] acting on (p, q).
        const Complex upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex x = A(k, p), y = A(k, q);
          A(k, p) = x * upp + y * uqp;
          A(k, q) = x * upq + y * uqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex x = A(p, k), y = A(q, k);
          A(p, k) = std::conj(upp) * x + std::conj(uqp) * y;
          A(q, k) = std::conj(upq) * x + std::conj(uqq) * y;
        }
        A(p, q) = A(q, p) = 0.0;
        A(p, p) = A(p, p).real();
        A(q, q) = A(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex x = V(k, p), y = V(k, q);
          V(k, p) = x * upp + y * uqp;
          V(k, q) = x * upq + y * uqq;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index a, Eigen::Index b) { return A(a, a).real() < A(b, b).real(); });
  EigenSystem es;
  es.values.resize(n);
  es.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = order[static_cast<std::size_t>(i)];
    es.values(i) = A(j, j).real();
    es.vectors.col(i) = V.col(j);
  }
  return es;
}

MatX propagator(const EigenSystem& es, double t) {
  VecX phases(es.values.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(-kI * es.values(i) * t);
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

VecX propagate(const EigenSystem& es, const VecX& psi, double t) {
  VecX c = es.vectors.adjoint() * psi;
  for (Eigen::Index i = 0; i < c.size(); ++i) c(i) *= std::exp(-kI * es.values(i) * t);
  return es.vectors * c;
}

KrylovPropagator::KrylovPropagator(SparseMat H, KrylovOptions opts)
    : H_(std::move(H)), opts_(opts) {
  if (H_.rows() != H_.cols()) throw DomainError("krylov: Hamiltonian is not square");
  if (opts_.dimension < 2) throw DomainError("krylov: basis dimension must be >= 2");
}

VecX KrylovPropagator::evolve(const VecX& psi, double t) const {
  if (psi.size() != H_.rows()) throw DomainError("krylov: state dimension mismatch");
  VecX v = psi;
  const double direction = t >= 0.0 ? 1.0 : -1.0;
  double remaining = std::abs(t);
  double step = remaining;
  const int m = std::min<int>(opts_.dimension, static_cast<int>(H_.rows()));

  std::vector<VecX> basis;
  basis.reserve(static_cast<std::size_t>(m) + 1);
  while (remaining > 0.0) {
    const double beta0 = v.norm();
    if (beta0 == 0.0) return v;

    basis.clear();
    basis.push_back(v / beta0);
    std::vector<double> alpha, beta;  // beta[j] couples basis j and j+1
    bool breakdown = false;
    for (int j = 0; j < m; ++j) {
      const VecX& current = basis[static_cast<std::size_t>(j)];
      VecX w = H_ * current;
      alpha.push_back(current.dot(w).real());
      for (const VecX& b : basis) w -= b.dot(w) * b;
      // second pass keeps the basis orthonormal to rounding
      for (const VecX& b : basis) w -= b.dot(w) * b;
      const double bn = w.norm();
      beta.push_back(bn);
      if (bn < 1e-13 * std::max(1.0, std::abs(alpha.back()))) {
        breakdown = true;
        break;
      }
      if (j + 1 < m) basis.push_back(w / bn);
    }
    const int dim = static_cast<int>(alpha.size());
    MatX T = MatX::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
      T(j, j) = alpha[static_cast<std::size_t>(j)];
      if (j + 1 < dim) T(j, j + 1) = T(j + 1, j) = beta[static_cast<std::size_t>(j)];
    }
    const EigenSystem te = jacobi_eigen(T);
    const double tail = breakdown ? 0.0 : beta.back();

    step = std::min(step, remaining);
    VecX y;
    for (;;) {
      VecX e1 = VecX::Zero(dim);
      e1(0) = 1.0;
      y = propagate(te, e1, direction * step);
      const double err = tail * std::abs(y(dim - 1));
      if (err <= opts_.tolerance || step < 1e-14 * std::abs(t)) break;
      step *= 0.5;
    }
    VecX next = VecX::Zero(v.size());
    for (int j = 0; j < dim; ++j) next += y(j) * basis[static_cast<std::size_t>(j)];
    v = beta0 * next;
    remaining -= step;
    if (remaining < 1e-15 * std::abs(t)) remaining = 0.0;
    step *= 1.5;
  }
  return v;
}

}  // namespace qutrit::linalg
