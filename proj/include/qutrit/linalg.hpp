#pragma once

#include <functional>

#include <Eigen/Sparse>

#include "qutrit/types.hpp"

namespace qutrit::linalg {

using SparseMat = Eigen::SparseMatrix<Complex>;

/// Eigenpairs of a Hermitian matrix, values ascending, vectors as columns.
struct EigenSystem {
  Eigen::VectorXd values;
  MatX vectors;
};

/// Kronecker product, first factor most significant.
MatX kron(const MatX& a, const MatX& b);

/// max |M - M^H| over all entries.
double hermiticity_residual(const MatX& M);

/// Cyclic Jacobi rotations for complex Hermitian matrices. Sweeps until the
/// off-diagonal Frobenius norm falls below `threshold * ||M||_F`.
/// Only the Hermitian part of M is used; callers validate beforehand.
EigenSystem jacobi_eigen(const MatX& M, double threshold = 1e-14);

/// exp(-i H t) from an eigendecomposition of H.
MatX propagator(const EigenSystem& es, double t);

/// exp(-i H t) psi from an eigendecomposition of H.
VecX propagate(const EigenSystem& es, const VecX& psi, double t);

struct KrylovOptions {
  int dimension = 30;
  double tolerance = 1e-12;  // per-step error estimate, relative to ||psi||
};

/// Lanczos propagation of exp(-i H t) psi for large sparse Hermitian H.
///
/// Each step builds a Krylov basis of at most `dimension` vectors (with full
/// reorthogonalization) and halves the step until the a-posteriori error
/// estimate beta_m |[exp(-i T h)]_{m,1}| is below the tolerance.
class KrylovPropagator {
 public:
  explicit KrylovPropagator(SparseMat H, KrylovOptions opts = {});

  VecX evolve(const VecX& psi, double t) const;

  int dimension() const { return static_cast<int>(H_.rows()); }

 private:
  SparseMat H_;
  KrylovOptions opts_;
};

}  // namespace qutrit::linalg
