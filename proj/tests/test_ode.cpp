#include <cmath>
#include <cstdlib>
#include <numbers>

#include "doctest.h"
#include "qutrit/errors.hpp"
#include "qutrit/ode.hpp"

using namespace qutrit;
using std::numbers::pi;

namespace {

void oscillator(double, const ode::State& y, ode::State& dy) {
  dy.resize(2);
  dy(0) = y(1);
  dy(1) = -y(0);
}

double energy_drift(const ode::Trajectory& tr) {
  double worst = 0.0;
  for (const auto& s : tr.states) worst = std::max(worst, std::abs(s.squaredNorm() - 1.0));
  return worst;
}

}  // namespace

TEST_CASE("harmonic oscillator over ten periods") {
  ode::State y0(2);
  y0 << 1.0, 0.0;
  ode::IntegratorConfig cfg;
  cfg.rel_tol = cfg.abs_tol = 1e-10;
  const auto tr = ode::integrate(oscillator, y0, {0.0, 20 * pi}, cfg);
  CHECK(energy_drift(tr) < 1e-7);
  CHECK(std::abs(tr.final_state()(0) - 1.0) < 1e-8);
  CHECK(std::abs(tr.final_state()(1)) < 1e-8);
  CHECK(tr.times.back() == 20 * pi);
  CHECK(tr.accepted_steps > 0);
}

TEST_CASE("tighter tolerance gives smaller drift") {
  ode::State y0(2);
  y0 << 1.0, 0.0;
  ode::IntegratorConfig loose, tight;
  loose.rel_tol = loose.abs_tol = 1e-6;
  tight.rel_tol = tight.abs_tol = 1e-10;
  const auto a = ode::integrate(oscillator, y0, {0.0, 20 * pi}, loose);
  const auto b = ode::integrate(oscillator, y0, {0.0, 20 * pi}, tight);
  CHECK(energy_drift(b) < energy_drift(a));
  CHECK(b.accepted_steps > a.accepted_steps);
}

TEST_CASE("constant solution stays constant") {
  ode::State y0 = ode::State::Constant(5, 0.25);
  const auto tr = ode::integrate([](double, const ode::State& y, ode::State& dy) { dy = ode::State::Zero(y.size()); },
                                 y0, {0.0, 10.0});
  CHECK((tr.final_state() - y0).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("output times are hit exactly") {
  ode::State y0(2);
  y0 << 1.0, 0.0;
  ode::IntegratorConfig cfg;
  for (int i = 0; i <= 20; ++i) cfg.output_times.push_back(0.5 * i);
  const auto tr = ode::integrate(oscillator, y0, {0.0, 10.0}, cfg);
  REQUIRE(tr.times.size() == 21);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    CHECK(tr.times[i] == cfg.output_times[i]);
    CHECK(std::abs(tr.states[i](0) - std::cos(tr.times[i])) < 1e-8);
  }
}

TEST_CASE("dense output agrees with forced small steps") {
  ode::State y0(2);
  y0 << 1.0, 0.0;
  ode::IntegratorConfig dense;
  dense.dense_output = true;
  const auto tr = ode::integrate(oscillator, y0, {0.0, 6.0}, dense);
  for (double t : {0.123, 1.7, 3.3333, 5.99}) {
    ode::IntegratorConfig forced;
    forced.max_step = 1e-3;
    const auto ref = ode::integrate(oscillator, y0, {0.0, t}, forced);
    CHECK((tr.at(t) - ref.final_state()).cwiseAbs().maxCoeff() < 1e-7);
  }
  CHECK_THROWS_AS(tr.at(7.0), DomainError);
}

TEST_CASE("discontinuities restart the integration") {
  // y' = step(t - 1): kinks at t = 1, solution max(0, t - 1).
  auto rhs = [](double t, const ode::State&, ode::State& dy) {
    dy.resize(1);
    dy(0) = t >= 1.0 ? 1.0 : 0.0;
  };
  ode::State y0 = ode::State::Zero(1);
  const auto with = ode::integrate(rhs, y0, {0.0, 3.0}, {}, {1.0});
  const auto without = ode::integrate(rhs, y0, {0.0, 3.0});
  const double err_with = std::abs(with.final_state()(0) - 2.0);
  CHECK(err_with < 1e-12);
  CHECK(err_with < std::abs(without.final_state()(0) - 2.0));
  CHECK(with.rejected_steps <= without.rejected_steps);
  bool has_one = false;
  for (double t : with.times) has_one = has_one || t == 1.0;
  CHECK(has_one);
}

TEST_CASE("stiff problem is reported") {
  auto rhs = [](double t, const ode::State& y, ode::State& dy) {
    dy.resize(1);
    dy(0) = -1e8 * (y(0) - std::cos(t));
  };
  ode::IntegratorConfig cfg;
  cfg.max_steps = 100000;
  ode::State y0 = ode::State::Ones(1);
  CHECK_THROWS_AS(ode::integrate(rhs, y0, {0.0, 100.0}, cfg), StiffnessError);
}

TEST_CASE("non-finite values are reported") {
  auto rhs = [](double t, const ode::State&, ode::State& dy) {
    dy.resize(1);
    dy(0) = t > 0.5 ? std::nan("") : 1.0;
  };
  ode::State y0 = ode::State::Zero(1);
  CHECK_THROWS_AS(ode::integrate(rhs, y0, {0.0, 1.0}), PropagationError);
  ode::State bad(1);
  bad << std::nan("");
  CHECK_THROWS_AS(ode::integrate(oscillator, bad, {0.0, 1.0}), PropagationError);
}

TEST_CASE("argument validation") {
  ode::State y0(2);
  y0 << 1.0, 0.0;
  CHECK_THROWS_AS(ode::integrate(oscillator, y0, {1.0, 0.0}), DomainError);
  ode::IntegratorConfig cfg;
  cfg.rel_tol = 0.0;
  CHECK_THROWS_AS(ode::integrate(oscillator, y0, {0.0, 1.0}, cfg), DomainError);
}

TEST_CASE("tolerance from the environment") {
  ::setenv("QUTRIT_TOL", "1e-7", 1);
  CHECK(ode::default_tolerance() == 1e-7);
  ::setenv("QUTRIT_TOL", "garbage", 1);
  CHECK(ode::default_tolerance() == 1e-10);
  ::setenv("QUTRIT_TOL", "-3", 1);
  CHECK(ode::default_tolerance() == 1e-10);
  ::unsetenv("QUTRIT_TOL");
  CHECK(ode::default_tolerance() == 1e-10);
}

TEST_CASE("unitary monitor on a rotating complex vector") {
  // psi' = -i psi stored as (re, im): re' = im, im' = -re.
  ode::State y0(4);
  y0 << 0.6, 0.0, 0.0, 0.8;
  auto rhs = [](double, const ode::State& y, ode::State& dy) {
    dy.resize(4);
    dy << y(1), -y(0), y(3), -y(2);
  };
  const auto tr = ode::integrate(rhs, y0, {0.0, 50.0});
  const auto rep = ode::monitor_invariants(tr, ode::InvariantKind::unitary);
  CHECK(rep.initial == doctest::Approx(1.0));
  CHECK(rep.max_drift < 1e-8);
  CHECK_THROWS_AS(ode::monitor_invariants(tr, ode::InvariantKind::bloch1), DomainError);
}
