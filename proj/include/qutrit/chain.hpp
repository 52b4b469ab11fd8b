#pragma once

#include <array>
#include <memory>

#include "qutrit/linalg.hpp"
#include "qutrit/types.hpp"

/// N qutrits (2 <= N <= 6) with isotropic exchange between every pair of
/// sites and a common static field:
///   H = sum_sites w.S + J sum_{i<j} S^(i).S^(j).
/// Site 0 is the most significant tensor factor.
namespace qutrit::chain {

inline constexpr int kMinSites = 2;
inline constexpr int kMaxSites = 6;

/// Pure N-qutrit state, 3^N amplitudes.
struct ChainState {
  int N = 2;
  VecX amplitudes;
};

/// Sparse H; DomainError unless 2 <= N <= 6.
linalg::SparseMat sparse_hamiltonian_n(int N, double J, const Vec3& field);
MatX hamiltonian_n(int N, double J, const Vec3& field);

/// Single-site operator M placed at `site`.
linalg::SparseMat site_operator(int N, int site, const Mat3& M);

/// (1/sqrt3) sum_i |i>^{(x)N}.
ChainState ghz_state(int N);

/// (1/sqrt6) sum_{i != j} |i>|j>, the unit-norm symmetric pair state.
ChainState symmetric_state_2();

/// e^{-iHt} for a fixed chain Hamiltonian: eigendecomposition for N <= 4,
/// Krylov propagation for N = 5, 6.
class ChainPropagator {
 public:
  ChainPropagator(int N, double J, const Vec3& field = {0.0, 0.0, 0.0});

  int sites() const { return N_; }
  bool uses_krylov() const { return krylov_ != nullptr; }
  VecX apply(const VecX& psi, double t) const;

 private:
  int N_;
  std::shared_ptr<const linalg::EigenSystem> eig_;
  std::shared_ptr<const linalg::KrylovPropagator> krylov_;
};

/// DomainError when the state does not match the propagator's size.
ChainState evolve_chain(const ChainState& state, double t, const ChainPropagator& H);

/// Eigenvalues of the single-site reduced matrix of the evolved GHZ-type
/// state at zero field: r1 = r2 (doubly degenerate) and r3.
struct ReducedEigenvalues {
  double r12 = 1.0 / 3.0;
  double r3 = 1.0 / 3.0;
};

ReducedEigenvalues reduced_eigenvalues_analytic(int N, double Jt);

}  // namespace qutrit::chain
