#include "qutrit/chain.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "qutrit/errors.hpp"
#include "qutrit/su3.hpp"

namespace qutrit::chain {
namespace {

void check_sites(int N) {
  if (N < kMinSites || N > kMaxSites) {
    throw DomainError("chain: N = " + std::to_string(N) + " outside [2, 6]");
  }
}

long pow3(int n) {
  long p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

}  // namespace

linalg::SparseMat site_operator(int N, int site, const Mat3& M) {
  if (site < 0 || site >= N) throw DomainError("chain: site out of range");
  const long dim = pow3(N);
  const long inner = pow3(N - 1 - site);
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(dim) * 3);
  for (long i = 0; i < dim; ++i) {
    const long a = (i / inner) % 3;
    const long rest = i - a * inner;
    for (int b = 0; b < 3; ++b) {
      const Complex v = M(b, a);
      if (v != Complex(0.0)) trips.emplace_back(rest + b * inner, i, v);
    }
  }
  linalg::SparseMat op(dim, dim);
  op.setFromTriplets(trips.begin(), trips.end());
  return op;
}

linalg::SparseMat sparse_hamiltonian_n(int N, double J, const Vec3& field) {
  check_sites(N);
  const long dim = pow3(N);
  // spins[s][c] = S_{c+1} on site s
  std::vector<std::vector<linalg::SparseMat>> spins;
  for (int s = 0; s < N; ++s) {
    spins.emplace_back();
    for (int c = 1; c <= 3; ++c) spins.back().push_back(site_operator(N, s, su3::spin(c)));
  }

  linalg::SparseMat H(dim, dim);
  for (const auto& site : spins)
    for (int c = 0; c < 3; ++c)
      if (field[c] != 0.0) H += field[c] * site[c];
  if (J != 0.0) {
    for (std::size_t i = 0; i < spins.size(); ++i)
      for (std::size_t j = i + 1; j < spins.size(); ++j)
        for (int c = 0; c < 3; ++c) H += J * linalg::SparseMat(spins[i][c] * spins[j][c]);
  }
  H.prune(Complex(0.0), 0.0);
  H.makeCompressed();
  return H;
}

MatX hamiltonian_n(int N, double J, const Vec3& field) { return MatX(sparse_hamiltonian_n(N, J, field)); }

ChainState ghz_state(int N) {
  check_sites(N);
  ChainState s;
  s.N = N;
  s.amplitudes = VecX::Zero(pow3(N));
  for (int level = 0; level < 3; ++level) {
    long idx = 0;
    for (int site = 0; site < N; ++site) idx = idx * 3 + level;
    s.amplitudes(idx) = 1.0 / std::sqrt(3.0);
  }
  return s;
}

ChainState symmetric_state_2() {
  ChainState s;
  s.N = 2;
  s.amplitudes = VecX::Zero(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) s.amplitudes(3 * i + j) = 1.0 / std::sqrt(6.0);
  return s;
}

ChainPropagator::ChainPropagator(int N, double J, const Vec3& field) : N_(N) {
  check_sites(N);
  if (N <= 4) {
    eig_ = std::make_shared<const linalg::EigenSystem>(linalg::jacobi_eigen(hamiltonian_n(N, J, field)));
  } else {
    krylov_ = std::make_shared<const linalg::KrylovPropagator>(sparse_hamiltonian_n(N, J, field));
  }
}

VecX ChainPropagator::apply(const VecX& psi, double t) const {
  if (psi.size() != pow3(N_)) throw DomainError("chain propagator: dimension mismatch");
  if (t == 0.0) return psi;
  if (krylov_) return krylov_->evolve(psi, t);
  return linalg::propagate(*eig_, psi, t);
}

ChainState evolve_chain(const ChainState& state, double t, const ChainPropagator& H) {
  if (state.N != H.sites() || state.amplitudes.size() != pow3(state.N)) {
    throw DomainError("evolve_chain: state and Hamiltonian sizes differ");
  }
  return {state.N, H.apply(state.amplitudes, t)};
}

ReducedEigenvalues reduced_eigenvalues_analytic(int N, double Jt) {
  check_sites(N);
  auto c = [Jt](int m) { return std::cos(m * Jt); };
  switch (N) {
    case 2:
      return {(5 + 4 * c(3)) / 27, (17 - 8 * c(3)) / 27};
    case 3:
      return {(29 - 4 * c(5)) / 75, (17 + 8 * c(5)) / 75};
    case 4:
      return {(905 - 98 * c(3) - 72 * c(7)) / 2205, (395 + 196 * c(3) + 144 * c(7)) / 2205};
    case 5:
      return {(16919 - 1944 * c(5) - 800 * c(9)) / 42525, (8687 + 3888 * c(5) + 1600 * c(9)) / 42525};
    default:
      return {(21977 - 1694 * c(3) - 1936 * c(7) - 560 * c(11)) / 53361,
              (9407 + 3388 * c(3) + 3872 * c(7) + 1120 * c(11)) / 53361};
  }
}

}  // namespace qutrit::chain
