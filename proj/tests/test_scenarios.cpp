#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/scenarios.hpp"
#include "qutrit/verify.hpp"

using namespace qutrit;
using namespace qutrit::scenarios;

TEST_CASE("grid parsing") {
  const auto g = Grid::parse("0:10:11");
  CHECK(g.start == 0.0);
  CHECK(g.stop == 10.0);
  CHECK(g.count == 11);
  const auto p = g.points();
  REQUIRE(p.size() == 11);
  CHECK(p[3] == doctest::Approx(3.0));
  CHECK(p.back() == 10.0);
  CHECK(Grid::parse("-1.5:5.5:141").points()[1] == doctest::Approx(-1.45));
  CHECK(Grid::parse("2:2:1").points() == std::vector<double>{2.0});
  for (const char* bad : {"0:10", "a:b:c", "0:10:0", "0:10:2.5", "", "0:1:3:4"})
    CHECK_THROWS_AS(Grid::parse(bad), UsageError);
}

TEST_CASE("assignments and config files") {
  const auto [k, v] = parse_assignment("J=0.25");
  CHECK(k == "J");
  CHECK(v == 0.25);
  CHECK_THROWS_AS(parse_assignment("J"), UsageError);
  CHECK_THROWS_AS(parse_assignment("J=abc"), UsageError);

  Params p = defaults("fig5");
  std::istringstream in("# comment\nJ = 0.3\n\n  # another\n");
  apply_config(in, p);
  CHECK(p.at("J") == 0.3);
  std::istringstream bad("J 0.3\n");
  CHECK_THROWS_AS(apply_config(bad, p), UsageError);
}

TEST_CASE("scenario catalogue") {
  CHECK(scenario_names() == std::vector<std::string>{"fig1", "fig2", "fig3", "fig4", "fig5"});
  CHECK(defaults("fig1").at("k1") == 0.85);
  CHECK(defaults("fig4").at("J") == 0.178);
  CHECK(defaults("fig3").at("Q") == 0.02507);
  CHECK_THROWS_AS(defaults("fig7"), UsageError);
  CHECK(default_grid("fig1").count == 141);
}

TEST_CASE("unknown parameters are rejected") {
  ScenarioSpec spec{"fig5", {{"nope", 1.0}}, Grid{0, 1, 2}, 1};
  CHECK_THROWS_AS(run(spec), UsageError);
  ScenarioSpec bad_name{"fig8", {}, std::nullopt, 1};
  CHECK_THROWS_AS(run(bad_name), UsageError);
}

TEST_CASE("fig3 starts maximally entangled and matches the closed forms") {
  ScenarioSpec spec{"fig3", {}, Grid{0, 20, 21}, 1};
  const auto t = run(spec);
  REQUIRE(t.rows.size() == 21);
  CHECK(t.columns ==
        std::vector<std::string>{"t", "m_aniso_Jneg", "m_aniso_Jpos", "m_vw", "m_sm", "eta2", "m_i"});
  for (std::size_t c = 1; c < t.columns.size(); ++c) CHECK(t.rows[0][c] == doctest::Approx(1.0).epsilon(1e-12));
  const auto times = t.column("t");
  const auto msm = t.column("m_sm");
  for (std::size_t i = 0; i < times.size(); ++i)
    CHECK(std::abs(msm[i] - entanglement::m_sm_closed_form(entanglement::ClosedForm::ghz, times[i], 0.1)) < 1e-8);
  CHECK_THROWS_AS(t.column("nope"), UsageError);
}

TEST_CASE("output is deterministic and row count follows the grid") {
  ScenarioSpec spec{"fig5", {}, Grid{0, 10, 11}, 1};
  std::ostringstream a, b;
  write_csv(a, run(spec));
  write_csv(b, run(spec));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("t,eta2,eta3,eta4,eta5,eta6\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : a.str()) lines += c == '\n';
  CHECK(lines == 12);

  ScenarioSpec parallel = spec;
  parallel.jobs = 4;
  std::ostringstream c;
  write_csv(c, run(parallel));
  CHECK(c.str() == a.str());
}

TEST_CASE("csv formatting") {
  Table t{{"x", "y"}, {{-0.0, 1.0 / 3.0}, {1e-20, 2.0}}};
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str() == "x,y\n0,0.333333333333333\n1e-20,2\n");
  const auto gp = plot_script(t, "data.csv", "demo");
  CHECK(gp.find("data.csv") != std::string::npos);
  CHECK(gp.find("demo") != std::string::npos);
}

TEST_CASE("fig1 without transverse drive never leaves |-1>") {
  ScenarioSpec spec{"fig1", {{"omega1", 0.0}, {"tau_periods", 5.0}}, Grid{0.5, 1.5, 3}, 1};
  const auto t = run(spec);
  REQUIRE(t.rows.size() == 3);
  for (const char* col : {"P_plus_k1", "P_zero_k1", "P_plus_k2", "P_zero_k2"})
    for (double v : t.column(col)) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("fig2 columns and free precession") {
  ScenarioSpec spec{"fig2", {}, Grid{0, 100, 101}, 1};
  const auto t = run(spec);
  CHECK(t.columns == std::vector<std::string>{"t", "Sy_free", "Sz_free", "Sy_coupled", "Sz_coupled"});
  const auto ts = t.column("t");
  const auto sz = t.column("Sz_free");
  for (std::size_t i = 0; i < ts.size(); ++i) CHECK(sz[i] == doctest::Approx(-std::cos(0.02 * ts[i])).epsilon(1e-9));
}

TEST_CASE("fig4 columns") {
  ScenarioSpec spec{"fig4", {}, Grid{0, 20, 21}, 1};
  const auto t = run(spec);
  CHECK(t.columns == std::vector<std::string>{"t", "m_sm_pulsed", "m_sm_freefield"});
  CHECK(t.rows[0][1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sweeps") {
  ScenarioSpec base{"fig5", {}, Grid{0, 5, 6}, 1};
  const auto s = sweep(base, "J", Grid{0.1, 0.3, 3});
  REQUIRE(s.rows.size() == 3);
  CHECK(s.columns.front() == "J");
  CHECK(s.columns.size() == 1 + 3 * 5);
  CHECK(s.column("J")[2] == doctest::Approx(0.3));
  const auto mins = s.column("eta2_min");
  const auto maxs = s.column("eta2_max");
  const auto means = s.column("eta2_mean");
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(mins[i] <= means[i]);
    CHECK(means[i] <= maxs[i]);
  }
  CHECK_THROWS_AS(sweep(base, "nope", Grid{0, 1, 2}), UsageError);
}

TEST_CASE("self-check suites") {
  for (const auto& name : verify::suite_names()) {
    if (name == "all") continue;
    const auto checks = verify::run_suite(name);
    CHECK(!checks.empty());
    for (const auto& c : checks) {
      INFO(c.name);
      CHECK(c.passed);
      CHECK(c.value <= c.tolerance);
      CHECK(c.name.rfind(name, 0) == 0);
    }
  }
  CHECK_THROWS_AS(verify::run_suite("bogus"), UsageError);
}
