#include <cmath>
#include <numbers>
#include <random>

#include "qutrit/biqutrit.hpp"
#include "qutrit/chain.hpp"
#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/linalg.hpp"
#include "support.hpp"

using namespace qutrit;
using namespace qutrit::entanglement;
using testing::max_abs;
using std::numbers::pi;

namespace {

VecX ghz2() {
  VecX psi = VecX::Zero(9);
  psi(0) = psi(4) = psi(8) = 1.0 / std::sqrt(3.0);
  return psi;
}

VecX evolve(const MatX& H, const VecX& psi, double t) { return testing::expm_hermitian(H, t) * psi; }

MatX exchange(double J) {
  biqutrit::PairFields f;
  f.J = J;
  return biqutrit::hamiltonian2(f);
}

MatX anisotropic(double J, double Q) {
  biqutrit::PairFields f;
  f.J = J;
  f.Q = f.d = f.Qbar = f.dbar = Q;
  return biqutrit::hamiltonian2(f);
}

Mat9 dm(const VecX& psi) { return psi * psi.adjoint(); }

}  // namespace

TEST_CASE("partial trace") {
  std::mt19937_64 rng(31);
  const Mat3 a = testing::random_density(rng, 3);
  const Mat3 b = testing::random_density(rng, 3);
  const Mat9 prod = linalg::kron(a, b);
  CHECK(max_abs(partial_trace(prod, 0, 2) - a) < 1e-14);
  CHECK(max_abs(partial_trace(prod, 1, 2) - b) < 1e-14);
  CHECK(max_abs(partial_trace(dm(ghz2()), 0, 2) - Mat3::Identity() / 3.0) < 1e-15);
  CHECK_THROWS_AS(partial_trace(prod, 2, 2), DomainError);
  CHECK_THROWS_AS(partial_trace(prod, 0, 3), DomainError);

  // Three sites: the pure-state shortcut agrees with the density route.
  const VecX psi = testing::random_state(rng, 27);
  for (int s = 0; s < 3; ++s) {
    const Mat3 r = reduced_from_pure(psi, s, 3);
    CHECK(max_abs(r - partial_trace(psi * psi.adjoint(), s, 3)) < 1e-14);
    CHECK(std::abs(r.trace() - 1.0) < 1e-14);
  }
  const MatX c = testing::random_density(rng, 3);
  const MatX abc = linalg::kron(linalg::kron(a, b), c);
  CHECK(max_abs(partial_trace(abc, 1, 3) - b) < 1e-14);
  CHECK(max_abs(partial_trace(abc, 2, 3) - c) < 1e-14);
}

TEST_CASE("partial transpose") {
  std::mt19937_64 rng(32);
  const Mat9 rho = testing::random_density(rng, 9);
  const Mat9 pt = partial_transpose(rho);
  CHECK(max_abs(partial_transpose(pt) - rho) < 1e-16);
  CHECK(std::abs(pt.trace() - rho.trace()) < 1e-14);
  CHECK(linalg::hermiticity_residual(pt) < 1e-15);
  // Independent construction: <i j| pt |k l> = <k j| rho |i l>.
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) CHECK(pt(3 * i + j, 3 * k + l) == rho(3 * k + j, 3 * i + l));

  const Mat9 prod = linalg::kron(testing::random_density(rng, 3), testing::random_density(rng, 3));
  CHECK(hermitian_eigenvalues(partial_transpose(prod))(0) > -1e-14);
  CHECK(hermitian_eigenvalues(partial_transpose(dm(ghz2())))(0) == doctest::Approx(-1.0 / 3.0));
}

TEST_CASE("Hermitian eigenvalues") {
  MatX d = MatX::Zero(3, 3);
  d(0, 0) = 2.0, d(1, 1) = -1.0, d(2, 2) = 0.5;
  const auto v = hermitian_eigenvalues(d);
  CHECK(v(0) == -1.0);
  CHECK(v(1) == 0.5);
  CHECK(v(2) == 2.0);
  std::mt19937_64 rng(33);
  const MatX H = testing::random_hermitian(rng, 9);
  const auto ev = hermitian_eigenvalues(H);
  CHECK(std::abs(ev.sum() - H.trace().real()) < 1e-11);
  CHECK(std::abs(ev.squaredNorm() - H.squaredNorm()) < 1e-10);
  MatX bad = H;
  bad(0, 1) += 1e-6;
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), ValidationError);

  // Transformed Hamiltonian at the common resonance with equal drives.
  biqutrit::PairConfig cfg;
  cfg.omega1 = cfg.varpi1 = 0.3;
  cfg.omega0 = cfg.varpi0 = cfg.omega = 1.0;
  cfg.J = 0.17;
  const double J = cfg.J, w = cfg.omega1;
  std::vector<double> listed{-2 * J, -J, J, J - 2 * w, -J - w, J - w, -J + w, J + w, J + 2 * w};
  std::sort(listed.begin(), listed.end());
  const auto got = hermitian_eigenvalues(biqutrit::transformed_hamiltonian(cfg));
  for (int i = 0; i < 9; ++i) CHECK(std::abs(got(i) - listed[static_cast<std::size_t>(i)]) < 1e-12);
}

TEST_CASE("negativity") {
  CHECK(negativity_mvw(dm(ghz2())) == doctest::Approx(1.0).epsilon(1e-13));
  std::mt19937_64 rng(34);
  const Mat9 prod = linalg::kron(testing::random_density(rng, 3), testing::random_density(rng, 3));
  CHECK(negativity_mvw(prod) < 1e-13);
  const MatX H = exchange(1.0);
  const VecX psi = evolve(H, ghz2(), pi / 3.0);  // 3Jt = pi
  CHECK(negativity_mvw(dm(psi)) == doctest::Approx(11.0 / 27.0).epsilon(1e-12));
  // Against the closed-form negative eigenvalues for a range of times.
  for (double t = 0.0; t < 6.0; t += 0.45) {
    const double x = 3 * t;
    const double e12 = std::sqrt(69 + 28 * std::cos(x) - 16 * std::cos(2 * x)) / 27;
    const double e3 = (5 + 4 * std::cos(x)) / 27;
    CHECK(std::abs(negativity_mvw(dm(evolve(H, ghz2(), t))) - (2 * e12 + e3)) < 1e-12);
  }
}

TEST_CASE("Schlienz-Mahler measure") {
  CHECK(m_sm(biqutrit::tensor_from_density(dm(ghz2()))) == doctest::Approx(1.0).epsilon(1e-13));
  std::mt19937_64 rng(35);
  const VecX a = testing::random_state(rng, 3), b = testing::random_state(rng, 3);
  CHECK(m_sm(biqutrit::tensor_from_density(dm(linalg::kron(a, b)))) < 1e-13);
  const VecX s = chain::symmetric_state_2().amplitudes;
  CHECK(s.norm() == doctest::Approx(1.0));
  CHECK(m_sm(biqutrit::tensor_from_density(dm(s))) == doctest::Approx(std::sqrt(23.0 / 32.0)).epsilon(1e-13));
  CHECK(m_sm_closed_form(ClosedForm::sym, 0.0, 0.3) == doctest::Approx(std::sqrt(23.0 / 32.0)).epsilon(1e-13));
  CHECK(m_sm_closed_form(ClosedForm::ghz, 0.0, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("closed forms against numeric evolution") {
  for (double J : {0.1, -0.4, 1.0}) {
    const MatX H = exchange(J);
    for (double t = 0.0; t < 30.0; t += 1.7) {
      const double ghz = m_sm(biqutrit::tensor_from_density(dm(evolve(H, ghz2(), t))));
      CHECK(std::abs(ghz - m_sm_closed_form(ClosedForm::ghz, t, J)) < 1e-12);
      const double sym = m_sm(biqutrit::tensor_from_density(dm(evolve(H, chain::symmetric_state_2().amplitudes, t))));
      CHECK(std::abs(sym - m_sm_closed_form(ClosedForm::sym, t, J)) < 1e-12);
    }
  }
  for (double J : {0.1, -0.1}) {
    for (double Q : {0.02507, 0.3, -0.05}) {
      const MatX H = anisotropic(J, Q);
      for (double t = 0.0; t < 100.0; t += 3.1) {
        const double num = m_sm(biqutrit::tensor_from_density(dm(evolve(H, ghz2(), t))));
        CHECK(std::abs(num - m_sm_closed_form(ClosedForm::aniso, t, J, Q)) < 1e-10);
      }
    }
  }
}

TEST_CASE("anisotropic formula reduces to the isotropic one") {
  for (double J : {0.05, 0.1, 0.5}) {
    const auto q = aniso_coefficients(J, 0.0);
    CHECK(q[0] == doctest::Approx(4457 * std::pow(J, 8)));
    for (double t = 0.0; t < 50.0; t += 0.77)
      CHECK(std::abs(m_sm_closed_form(ClosedForm::aniso, t, J, 0.0) - m_sm_closed_form(ClosedForm::ghz, t, J)) <
            1e-13);
  }
  CHECK(parse_closed_form("aniso") == ClosedForm::aniso);
  CHECK_THROWS_AS(parse_closed_form("nope"), DomainError);
}

TEST_CASE("entropy") {
  CHECK(eta_n({1.0 / 3, 1.0 / 3, 1.0 / 3}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eta_n({1.0, 0.0, 0.0}) == 0.0);
  CHECK(eta_n({1.0 / 27, 1.0 / 27, 25.0 / 27}) == doctest::Approx(0.28708607274457926).epsilon(1e-14));
  CHECK(eta_n({1.0 + 5e-11, -5e-11, 0.0}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(eta_n({1.1, -0.1, 0.0}), ValidationError);
  CHECK_THROWS_AS(eta_n({0.5, 0.4, 0.0}), ValidationError);

  const MatX H = exchange(0.2);
  for (double t = 0.0; t < 40.0; t += 2.3) {
    const Mat3 r = partial_trace(dm(evolve(H, ghz2(), t)), 0, 2);
    const double c = std::cos(3 * 0.2 * t);
    const double l12 = (5 + 4 * c) / 27, l3 = (17 - 8 * c) / 27;
    CHECK(std::abs(eta_of_reduced(r) - eta_n({l12, l12, l3})) < 1e-9);
  }
}

TEST_CASE("I-concurrence") {
  CHECK(i_concurrence(Mat3::Identity() / 3.0) == doctest::Approx(1.0));
  Mat3 pure = Mat3::Zero();
  pure(1, 1) = 1.0;
  CHECK(i_concurrence(pure) == 0.0);
  const MatX H = exchange(1.0);
  const Mat3 r = partial_trace(dm(evolve(H, ghz2(), pi / 3.0)), 0, 2);
  CHECK(i_concurrence(r) == doctest::Approx(std::sqrt(17.0) / 9.0).epsilon(1e-12));
  for (double t = 0.0; t < 10.0; t += 0.9) {
    const Mat3 rt = partial_trace(dm(evolve(H, ghz2(), t)), 0, 2);
    const double x = 3 * t;
    CHECK(std::abs(i_concurrence(rt) - std::sqrt(57 + 32 * std::cos(x) - 8 * std::cos(2 * x)) / 9) < 1e-12);
  }
}

TEST_CASE("measures are independent of the consistent field and of sign(J)") {
  const double J = 0.1, t = 23.0;
  struct Setting {
    double w1, h, k, J;
  };
  const std::vector<Setting> settings{{0.1, 1.0, 0.0, J}, {0.5, 1.0, 0.5, J}, {0.3, 2.0, 0.9, J},
                                      {0.05, 0.7, 0.2, -J}, {0.8, 1.5, 0.0, -J}};
  std::vector<MeasureReport> reports;
  for (const auto& s : settings) {
    const auto R = biqutrit::appendix_c_correlations(t, s.J, s.w1, s.h, s.k);
    reports.push_back(pair_measures(biqutrit::density_from_tensor(R), t));
  }
  double spread = 0.0;
  for (const auto& r : reports) {
    spread = std::max({spread, std::abs(r.m_vw - reports[0].m_vw), std::abs(r.m_sm - reports[0].m_sm),
                       std::abs(r.eta - reports[0].eta), std::abs(r.m_i - reports[0].m_i)});
  }
  CHECK(spread < 1e-9);
  CHECK(std::abs(reports[0].m_sm - m_sm_closed_form(ClosedForm::ghz, t, J)) < 1e-10);
}

TEST_CASE("measure report bounds") {
  std::mt19937_64 rng(36);
  for (int rep = 0; rep < 20; ++rep) {
    const auto r = pair_measures(testing::random_density(rng, 9));
    for (double m : {r.m_vw, r.m_sm, r.eta, r.m_i}) {
      CHECK(m >= 0.0);
      CHECK(m <= 1.0 + 1e-12);
    }
  }
  const VecX a = testing::random_state(rng, 3), b = testing::random_state(rng, 3);
  const auto p = pair_measures(dm(linalg::kron(a, b)));
  CHECK(p.m_vw < 1e-12);
  CHECK(p.m_sm < 1e-12);
  CHECK(p.eta < 1e-9);
  CHECK(p.m_i < 1e-7);
}
