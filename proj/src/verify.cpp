#include "qutrit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qutrit/biqutrit.hpp"
#include "qutrit/chain.hpp"
#include "qutrit/elliptic.hpp"
#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/single.hpp"
#include "qutrit/su3.hpp"

namespace qutrit::verify {
namespace {

Check make(std::string name, double value, double tol) {
  return {std::move(name), value, tol, std::isfinite(value) && value <= tol};
}

std::vector<Check> algebra() {
  const auto r = su3::verify_algebra();
  return {make("product_identity", r.product_identity, 1e-13), make("orthogonality", r.orthogonality, 1e-13),
          make("tracelessness", r.tracelessness, 1e-13), make("hermiticity", r.hermiticity, 1e-13),
          make("e_trace_formula", r.e_trace_formula, 1e-13), make("g_trace_formula", r.g_trace_formula, 1e-13),
          make("tabulated_constants", r.tabulated_mismatch, 1e-13)};
}

std::vector<Check> elliptic_suite() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> U(-50.0, 50.0), K(0.0, 1.0);
  double pyth1 = 0.0, pyth2 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = U(rng), k = K(rng);
    const auto j = elliptic::jacobi(u, k);
    pyth1 = std::max(pyth1, std::abs(j.sn * j.sn + j.cn * j.cn - 1.0));
    pyth2 = std::max(pyth2, std::abs(j.dn * j.dn + k * k * j.sn * j.sn - 1.0));
  }
  double lim0 = 0.0, lim1 = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double u = -10.0 + 0.1 * i;
    const auto a = elliptic::jacobi(u, 0.0);
    lim0 = std::max({lim0, std::abs(a.sn - std::sin(u)), std::abs(a.cn - std::cos(u)), std::abs(a.dn - 1.0)});
    const auto b = elliptic::jacobi(u, 1.0);
    lim1 = std::max({lim1, std::abs(b.sn - std::tanh(u)), std::abs(b.cn - 1.0 / std::cosh(u)),
                     std::abs(b.dn - 1.0 / std::cosh(u))});
  }
  double period = 0.0;
  for (double k : {0.1, 0.5, 0.85, 0.99}) {
    const double Kk = elliptic::complete_K(k);
    for (double u : {0.3, 1.7, -2.2}) {
      const auto a = elliptic::jacobi(u, k);
      const auto b = elliptic::jacobi(u + 2 * Kk, k);
      const auto c = elliptic::jacobi(u + 4 * Kk, k);
      period = std::max({period, std::abs(b.dn - a.dn), std::abs(b.sn + a.sn), std::abs(c.sn - a.sn),
                         std::abs(c.cn - a.cn)});
    }
  }
  return {make("sn2_plus_cn2", pyth1, 1e-12), make("dn2_plus_k2sn2", pyth2, 1e-12), make("limit_k0", lim0, 1e-14),
          make("limit_k1", lim1, 1e-14), make("periods", period, 1e-10),
          make("K(0)", std::abs(elliptic::complete_K(0.0) - std::numbers::pi / 2), 1e-15)};
}

double max_abs(const MatX& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<Check> oracles() {
  std::vector<Check> out;
  ode::IntegratorConfig icfg;
  std::vector<double> times;
  for (int i = 0; i <= 100; ++i) times.push_back(0.5 * i);
  icfg.output_times = times;

  Mat3 minus = Mat3::Zero();
  minus(2, 2) = 1.0;
  for (double k : {0.0, 0.85}) {
    single::FieldConfig cfg;
    cfg.omega1 = 0.3;
    cfg.k = k;
    const auto traj = single::evolve_bloch(single::bloch_from_density(minus), cfg, 50.0, icfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const Mat3 exact = single::resonance_solution(minus, times[i], cfg);
      dev = std::max(dev, max_abs(single::density_from_bloch(single::unpack(traj.states[i])) - exact));
    }
    out.push_back(make(k == 0.0 ? "resonance_closed_form_k0" : "resonance_closed_form_k085", dev, 1e-8));
  }
  {
    single::FieldConfig cfg;
    cfg.omega1 = 0.3;
    cfg.omega0 = 1.4;
    const auto traj = single::evolve_bloch(single::bloch_from_density(minus), cfg, 50.0, icfg);
    double dev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const Mat3 b = single::appendix_b_offresonance(times[i], cfg.detuning(), cfg.omega1, cfg.omega);
      dev = std::max(dev, max_abs(single::density_from_bloch(single::unpack(traj.states[i])) - b));
    }
    out.push_back(make("offresonance_closed_form", dev, 1e-8));
  }
  {
    biqutrit::PairConfig cfg;
    cfg.omega1 = cfg.varpi1 = 0.3;
    cfg.omega = cfg.omega0 = cfg.varpi0 = 1.0;
    cfg.J = 0.1;
    const biqutrit::ExactPairEvolution evo(cfg);
    const VecX psi0 = chain::ghz_state(2).amplitudes;
    double dev = 0.0, eq27 = 0.0;
    for (int i = 0; i <= 50; ++i) {
      const double t = 2.0 * i;
      const VecX psi = evo.state(psi0, t);
      const BlochTensor R = biqutrit::tensor_from_density(psi * psi.adjoint());
      dev = std::max(dev, (R - biqutrit::appendix_c_correlations(t, cfg.J, cfg.omega1, 1.0, 0.0)).cwiseAbs().maxCoeff());
      eq27 = std::max(eq27, std::abs(entanglement::m_sm(R) -
                                     entanglement::m_sm_closed_form(entanglement::ClosedForm::ghz, t, cfg.J)));
    }
    out.push_back(make("pair_closed_form_vs_exact", dev, 1e-8));
    out.push_back(make("msm_closed_form", eq27, 1e-8));

    const Mat9 rho0 = psi0 * psi0.adjoint();
    ode::IntegratorConfig pcfg;
    pcfg.output_times = {5.0, 10.0, 20.0};
    const auto traj = ode::integrate(biqutrit::bloch2_system([cfg](double t) { return biqutrit::pair_fields(cfg, t); }),
                                     biqutrit::pack(biqutrit::tensor_from_density(rho0)), {0.0, 20.0}, pcfg);
    double odev = 0.0;
    for (std::size_t i = 0; i < pcfg.output_times.size(); ++i) {
      const double t = pcfg.output_times[i];
      odev = std::max(odev, (biqutrit::unpack(traj.states[i]) - biqutrit::appendix_c_correlations(t, cfg.J, cfg.omega1, 1.0, 0.0))
                                .cwiseAbs()
                                .maxCoeff());
    }
    out.push_back(make("pair_equations_vs_closed_form", odev, 1e-8));
  }
  {
    double dev = 0.0;
    const chain::ChainPropagator prop(3, 0.1);
    const VecX psi0 = chain::ghz_state(3).amplitudes;
    for (double t : {3.0, 11.0, 27.0}) {
      const Mat3 r = entanglement::reduced_from_pure(prop.apply(psi0, t), 0, 3);
      const Eigen::VectorXd ev = entanglement::hermitian_eigenvalues(r);
      const auto a = chain::reduced_eigenvalues_analytic(3, 0.1 * t);
      std::array<double, 3> ref{a.r12, a.r12, a.r3};
      std::sort(ref.begin(), ref.end());
      for (int i = 0; i < 3; ++i) dev = std::max(dev, std::abs(ev(i) - ref[static_cast<std::size_t>(i)]));
    }
    out.push_back(make("chain_reduced_eigenvalues", dev, 1e-9));
  }
  return out;
}

std::vector<Check> invariants() {
  std::vector<Check> out;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  Eigen::Vector3cd v;
  for (int i = 0; i < 3; ++i) v(i) = Complex(n01(rng), n01(rng));
  v.normalize();
  const Mat3 rho0 = v * v.adjoint();

  single::FieldConfig cfg;
  cfg.omega1 = 0.4;
  cfg.omega0 = 1.3;
  cfg.k = 0.6;
  cfg.Q = 0.05;
  cfg.d = 0.02;
  ode::IntegratorConfig icfg;
  icfg.monitor_interval = 1;
  const auto traj = single::evolve_bloch(single::bloch_from_density(rho0), cfg, 50.0, icfg);
  const auto drift = ode::monitor_invariants(traj, ode::InvariantKind::bloch1);
  out.push_back(make("bloch_length_drift", drift.max_drift, 1e-8));
  double quad = 0.0, det = 0.0;
  for (const auto& y : traj.states) {
    const auto inv = single::motion_invariants(single::unpack(y));
    quad = std::max({quad, std::abs(inv.I1), std::abs(inv.I2)});
    det = std::max(det, std::abs(inv.det));
  }
  out.push_back(make("quadric_invariants", quad, 1e-8));
  out.push_back(make("determinant_invariant", det, 1e-8));

  biqutrit::PairConfig pc;
  pc.omega1 = 0.2;
  pc.varpi1 = 0.1;
  pc.omega0 = 1.1;
  pc.varpi0 = 0.9;
  pc.k = 0.5;
  pc.Q = 0.03;
  pc.dbar = 0.02;
  pc.J = 0.15;
  const VecX psi = chain::ghz_state(2).amplitudes;
  const auto ptraj = ode::integrate(biqutrit::bloch2_system([pc](double t) { return biqutrit::pair_fields(pc, t); }),
                                    biqutrit::pack(biqutrit::tensor_from_density(psi * psi.adjoint())), {0.0, 30.0});
  out.push_back(make("pair_length_drift", ode::monitor_invariants(ptraj, ode::InvariantKind::bloch2).max_drift, 1e-8));

  biqutrit::PairConfig res;
  res.omega1 = res.varpi1 = 0.3;
  res.J = 0.1;
  const Mat9 Ht = biqutrit::transformed_hamiltonian(res);
  out.push_back(make("transformed_hamiltonian_hermitian", linalg::hermiticity_residual(Ht), 1e-14));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"algebra", "elliptic", "oracles", "invariants", "all"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite) {
  auto prefixed = [](std::vector<Check> checks, const std::string& prefix) {
    for (auto& c : checks) c.name = prefix + "." + c.name;
    return checks;
  };
  if (suite == "algebra") return prefixed(algebra(), suite);
  if (suite == "elliptic") return prefixed(elliptic_suite(), suite);
  if (suite == "oracles") return prefixed(oracles(), suite);
  if (suite == "invariants") return prefixed(invariants(), suite);
  if (suite == "all") {
    std::vector<Check> all;
    for (const char* s : {"algebra", "elliptic", "oracles", "invariants"}) {
      auto part = run_suite(s);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw UsageError("unknown verification suite '" + suite + "'");
}

}  // namespace qutrit::verify
