#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

/// Figure scenarios as tables, plus parameter sweeps over them.
namespace qutrit::scenarios {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const;
};

/// Inclusive evenly spaced grid "start:stop:count".
struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  /// UsageError on malformed text or count < 1.
  static Grid parse(const std::string& text);
  std::vector<double> points() const;
};

using Params = std::map<std::string, double>;

/// fig1 .. fig5.
const std::vector<std::string>& scenario_names();

/// Caption defaults of a scenario; UsageError for an unknown name.
Params defaults(const std::string& scenario);

/// Default grid of the scenario's independent variable.
Grid default_grid(const std::string& scenario);

struct ScenarioSpec {
  std::string name;
  Params overrides;  // must name known parameters (UsageError otherwise)
  std::optional<Grid> grid;
  int jobs = 1;
};

Table run(const ScenarioSpec& spec);

/// Runs `base` once per value of `parameter` on `values` and reports
/// min/max/mean of every output column.
Table sweep(const ScenarioSpec& base, const std::string& parameter, const Grid& values);

/// Applies "key=value" lines ('#' starts a comment) on top of `params`.
/// UsageError on syntax errors.
void apply_config(std::istream& in, Params& params);

/// Parses one "key=value" override.
std::pair<std::string, double> parse_assignment(const std::string& text);

/// UTF-8 CSV, header row, 15 significant digits.
void write_csv(std::ostream& out, const Table& table);

/// Gnuplot script plotting every column against the first one.
std::string plot_script(const Table& table, const std::string& csv_path, const std::string& title);

}  // namespace qutrit::scenarios
