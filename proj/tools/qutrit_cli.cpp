#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qutrit/errors.hpp"
#include "qutrit/scenarios.hpp"
#include "qutrit/verify.hpp"

namespace {

namespace sc = qutrit::scenarios;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct CommonOptions {
  std::string out;
  std::vector<std::string> sets;
  std::string config;
  std::string grid;
  int jobs = std::max(1u, std::thread::hardware_concurrency());
  bool plot_script = false;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--out", o.out, "CSV output path (stdout when omitted)");
  cmd->add_option("--set", o.sets, "Parameter override key=value (repeatable)");
  cmd->add_option("--config", o.config, "File of key=value lines applied before --set");
  cmd->add_option("--grid", o.grid, "Grid start:stop:count");
  cmd->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_flag("--plot-script", o.plot_script, "Also write a gnuplot script next to the CSV");
}

sc::ScenarioSpec build_spec(const std::string& name, const CommonOptions& o, bool with_grid) {
  sc::ScenarioSpec spec;
  spec.name = name;
  spec.jobs = o.jobs;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw qutrit::UsageError("cannot read config file '" + o.config + "'");
    sc::apply_config(in, spec.overrides);
  }
  for (const auto& s : o.sets) {
    const auto [key, value] = sc::parse_assignment(s);
    spec.overrides[key] = value;
  }
  if (with_grid && !o.grid.empty()) spec.grid = sc::Grid::parse(o.grid);
  return spec;
}

void emit(const sc::Table& table, const CommonOptions& o, const std::string& title) {
  if (o.out.empty()) {
    sc::write_csv(std::cout, table);
    if (o.plot_script) std::cout << '\n' << sc::plot_script(table, "-", title);
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw qutrit::UsageError("cannot write '" + o.out + "'");
  sc::write_csv(f, table);
  if (o.plot_script) {
    std::ofstream g(o.out + ".gp");
    if (!g) throw qutrit::UsageError("cannot write '" + o.out + ".gp'");
    g << sc::plot_script(table, o.out, title);
  }
}

int run_verify(const std::string& suite) {
  const auto checks = qutrit::verify::run_suite(suite);
  nlohmann::json report;
  report["suite"] = suite;
  bool ok = true;
  for (const auto& c : checks) {
    report["checks"].push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    ok = ok && c.passed;
    if (!c.passed) std::cerr << "FAILED " << c.name << ": " << c.value << " > " << c.tolerance << '\n';
  }
  report["passed"] = ok;
  std::cout << report.dump(2) << '\n';
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-1 (qutrit) dynamics in elliptic driving fields"};
  app.require_subcommand(1);

  std::vector<CommonOptions> fig_opts(sc::scenario_names().size());
  std::vector<CLI::App*> figs;
  for (std::size_t i = 0; i < sc::scenario_names().size(); ++i) {
    const auto& name = sc::scenario_names()[i];
    auto* cmd = app.add_subcommand(name, "Write the " + name + " scenario as CSV");
    add_common(cmd, fig_opts[i]);
    figs.push_back(cmd);
  }

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "algebra | elliptic | oracles | invariants | all");

  CommonOptions sweep_opts;
  std::string sweep_scenario, sweep_param, sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Summarize a scenario over a range of one parameter");
  sweep->add_option("--scenario", sweep_scenario, "Scenario to sweep")->required();
  sweep->add_option("--param", sweep_param, "Parameter to vary")->required();
  sweep->add_option("--values", sweep_values, "Parameter grid start:stop:count")->required();
  add_common(sweep, sweep_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    for (std::size_t i = 0; i < figs.size(); ++i) {
      if (figs[i]->parsed()) {
        const auto& name = sc::scenario_names()[i];
        emit(sc::run(build_spec(name, fig_opts[i], true)), fig_opts[i], name);
        return kOk;
      }
    }
    if (verify->parsed()) return run_verify(suite);
    if (sweep->parsed()) {
      const auto spec = build_spec(sweep_scenario, sweep_opts, true);
      emit(sc::sweep(spec, sweep_param, sc::Grid::parse(sweep_values)), sweep_opts, sweep_scenario + " sweep");
      return kOk;
    }
  } catch (const qutrit::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
