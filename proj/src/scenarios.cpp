#include "qutrit/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "qutrit/biqutrit.hpp"
#include "qutrit/chain.hpp"
#include "qutrit/entanglement.hpp"
#include "qutrit/errors.hpp"
#include "qutrit/single.hpp"
#include "qutrit/su3.hpp"

namespace qutrit::scenarios {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + what + " '" + text + "'");
  }
  if (used != t.size() || !std::isfinite(v)) throw UsageError("cannot parse " + what + " '" + text + "'");
  return v;
}

Params merged(const ScenarioSpec& spec) {
  Params p = defaults(spec.name);
  for (const auto& [key, value] : spec.overrides) {
    if (!p.count(key)) throw UsageError("scenario " + spec.name + " has no parameter '" + key + "'");
    p[key] = value;
  }
  return p;
}

int as_int(double v, const std::string& name) {
  if (v < 1 || v != std::floor(v)) throw UsageError("parameter " + name + " must be a positive integer");
  return static_cast<int>(v);
}

// |-1> for one qutrit.
Mat3 lowest_level() {
  Mat3 rho = Mat3::Zero();
  rho(2, 2) = 1.0;
  return rho;
}

Vec3 spin_of(const Mat3& rho) {
  Vec3 s{};
  for (int i = 0; i < 3; ++i) s[static_cast<std::size_t>(i)] = (rho * su3::spin(i + 1)).trace().real();
  return s;
}

Table fig1(const Params& p, const Grid& grid, int jobs) {
  single::FieldConfig cfg;
  cfg.omega1 = p.at("omega1");
  cfg.omega = p.at("omega");
  cfg.Q = p.at("Q");
  cfg.d = p.at("d");
  single::AveragingOptions opts;
  opts.tau = p.at("tau_periods") * 2.0 * std::numbers::pi / std::abs(cfg.omega);
  opts.samples_per_period = as_int(p.at("samples_per_period"), "samples_per_period");

  const std::vector<double> ratios = grid.points();
  cfg.k = p.at("k1");
  const auto a = single::averaged_populations(cfg, opts, ratios, jobs);
  cfg.k = p.at("k2");
  const auto b = single::averaged_populations(cfg, opts, ratios, jobs);

  Table t;
  t.columns = {"omega0_over_omega", "P_plus_k1", "P_zero_k1", "P_plus_k2", "P_zero_k2"};
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    t.rows.push_back({ratios[i], a[i].p_plus, a[i].p_zero, b[i].p_plus, b[i].p_zero});
  }
  return t;
}

Table fig2(const Params& p, const Grid& grid) {
  const std::vector<double> times = grid.points();
  single::FieldConfig free;
  free.omega1 = p.at("omega1");
  free.omega = p.at("omega");
  free.omega0 = p.at("omega0");
  free.k = p.at("k");

  biqutrit::PairConfig pair;
  pair.omega1 = free.omega1;
  pair.omega = free.omega;
  pair.omega0 = free.omega0;
  pair.k = free.k;
  pair.varpi1 = p.at("varpi1");
  pair.varpi0 = p.at("varpi0");
  pair.J = p.at("J");

  std::vector<Vec3> free_spin(times.size()), pair_spin(times.size());

  const bool resonant = std::abs(free.omega - free.omega0) <= 1e-12 * std::max(1.0, std::abs(free.omega));
  if (resonant) {
    for (std::size_t i = 0; i < times.size(); ++i)
      free_spin[i] = spin_of(single::resonance_solution(lowest_level(), times[i], free));
  } else {
    ode::IntegratorConfig icfg;
    icfg.output_times = times;
    const auto traj = single::evolve_bloch(single::bloch_from_density(lowest_level()), free, times.back(), icfg);
    for (std::size_t i = 0; i < times.size(); ++i) free_spin[i] = single::spin_expectations(single::unpack(traj.states[i]));
  }

  Mat9 rho0 = Mat9::Zero();
  rho0(8, 8) = 1.0;  // |-1,-1>
  if (biqutrit::exact_solution_applies(pair)) {
    const biqutrit::ExactPairEvolution evo(pair);
    for (std::size_t i = 0; i < times.size(); ++i) {
      pair_spin[i] = spin_of(entanglement::partial_trace(evo.density(rho0, times[i]), 0, 2));
    }
  } else {
    ode::IntegratorConfig icfg;
    icfg.output_times = times;
    const auto traj = ode::integrate(biqutrit::bloch2_system([pair](double t) { return biqutrit::pair_fields(pair, t); }),
                                     biqutrit::pack(biqutrit::tensor_from_density(rho0)), {0.0, times.back()}, icfg);
    for (std::size_t i = 0; i < times.size(); ++i) {
      const Mat9 rho = biqutrit::density_from_tensor(biqutrit::unpack(traj.states[i]));
      pair_spin[i] = spin_of(entanglement::partial_trace(rho, 0, 2));
    }
  }

  Table t;
  t.columns = {"t", "Sy_free", "Sz_free", "Sy_coupled", "Sz_coupled"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    t.rows.push_back({times[i], free_spin[i][1], free_spin[i][2], pair_spin[i][1], pair_spin[i][2]});
  }
  return t;
}

// m_SM of the maximally entangled pair under a time-independent Hamiltonian.
std::vector<double> static_msm(const Mat9& H, const std::vector<double>& times) {
  const auto es = linalg::jacobi_eigen(H);
  const VecX psi0 = chain::ghz_state(2).amplitudes;
  std::vector<double> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    const VecX psi = linalg::propagate(es, psi0, times[i]);
    out[i] = entanglement::m_sm(biqutrit::tensor_from_density(psi * psi.adjoint()));
  }
  return out;
}

Mat9 zero_field_hamiltonian(double J, double aniso) {
  biqutrit::PairFields f;
  f.J = J;
  f.Q = f.d = f.Qbar = f.dbar = aniso;
  return biqutrit::hamiltonian2(f);
}

Table fig3(const Params& p, const Grid& grid, int jobs) {
  const std::vector<double> times = grid.points();
  const double J = p.at("J");
  const double Q = p.at("Q");
  const auto neg = static_msm(zero_field_hamiltonian(-std::abs(J), Q), times);
  const auto pos = static_msm(zero_field_hamiltonian(std::abs(J), Q), times);

  biqutrit::PairConfig cfg;
  cfg.omega1 = cfg.varpi1 = p.at("omega1");
  cfg.omega = cfg.omega0 = cfg.varpi0 = p.at("omega");
  cfg.k = p.at("k");
  cfg.J = J;
  const biqutrit::ExactPairEvolution evo(cfg);
  const VecX psi0 = chain::ghz_state(2).amplitudes;

  std::vector<entanglement::MeasureReport> reports(times.size());
  detail::parallel_for(times.size(), jobs, [&](std::size_t i) {
    const VecX psi = evo.state(psi0, times[i]);
    reports[i] = entanglement::pair_measures(psi * psi.adjoint(), times[i]);
  });

  Table t;
  t.columns = {"t", "m_aniso_Jneg", "m_aniso_Jpos", "m_vw", "m_sm", "eta2", "m_i"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& r = reports[i];
    t.rows.push_back({times[i], neg[i], pos[i], r.m_vw, r.m_sm, r.eta, r.m_i});
  }
  return t;
}

Table fig4(const Params& p, const Grid& grid) {
  const std::vector<double> times = grid.points();
  const double J = p.at("J");
  const double scale = p.at("omega0") / 2.0;  // the pulse formula carries amplitude 2

  ode::IntegratorConfig icfg;
  icfg.output_times = times;
  auto schedule = [J, scale](double t) {
    biqutrit::PairFields f = biqutrit::impulse_field(t, J);
    f.h[2] *= scale;
    f.hbar[2] *= scale;
    return f;
  };
  const Mat9 rho0 = [] {
    const VecX psi = chain::ghz_state(2).amplitudes;
    return Mat9(psi * psi.adjoint());
  }();
  const auto traj = ode::integrate(biqutrit::bloch2_system(schedule), biqutrit::pack(biqutrit::tensor_from_density(rho0)),
                                   {times.front(), times.back()}, icfg, biqutrit::impulse_discontinuities());
  const auto free = static_msm(zero_field_hamiltonian(J, 0.0), times);

  Table t;
  t.columns = {"t", "m_sm_pulsed", "m_sm_freefield"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    t.rows.push_back({times[i], entanglement::m_sm(biqutrit::unpack(traj.states[i])), free[i]});
  }
  return t;
}

Table fig5(const Params& p, const Grid& grid, int jobs) {
  const std::vector<double> times = grid.points();
  const double J = p.at("J");
  constexpr int kChains = chain::kMaxSites - chain::kMinSites + 1;
  std::vector<std::vector<double>> eta(kChains, std::vector<double>(times.size()));

  detail::parallel_for(kChains, jobs, [&](std::size_t c) {
    const int N = chain::kMinSites + static_cast<int>(c);
    const chain::ChainPropagator prop(N, J);
    chain::ChainState state = chain::ghz_state(N);
    const VecX psi0 = state.amplitudes;
    double now = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      VecX psi;
      if (prop.uses_krylov()) {
        state.amplitudes = prop.apply(state.amplitudes, times[i] - now);
        now = times[i];
        psi = state.amplitudes;
      } else {
        psi = prop.apply(psi0, times[i]);
      }
      eta[c][i] = entanglement::eta_of_reduced(entanglement::reduced_from_pure(psi, 0, N));
    }
  });

  Table t;
  t.columns = {"t", "eta2", "eta3", "eta4", "eta5", "eta6"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::vector<double> row{times[i]};
    for (int c = 0; c < kChains; ++c) row.push_back(eta[static_cast<std::size_t>(c)][i]);
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace

std::vector<double> Table::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw UsageError("no column '" + name + "'");
  const auto idx = static_cast<std::size_t>(it - columns.begin());
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

Grid Grid::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw UsageError("grid must look like start:stop:count, got '" + text + "'");
  Grid g;
  g.start = parse_number(parts[0], "grid start");
  g.stop = parse_number(parts[1], "grid stop");
  const double count = parse_number(parts[2], "grid count");
  if (count < 1 || count != std::floor(count) || count > 1e8) throw UsageError("grid count must be a positive integer");
  g.count = static_cast<int>(count);
  if (g.count == 1 && g.start != g.stop) throw UsageError("a one-point grid needs start == stop");
  return g;
}

std::vector<double> Grid::points() const {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out[static_cast<std::size_t>(i)] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
  return out;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"fig1", "fig2", "fig3", "fig4", "fig5"};
  return names;
}

Params defaults(const std::string& scenario) {
  if (scenario == "fig1")
    return {{"k1", 0.85}, {"k2", 0.2}, {"omega1", 1.0 / 3.0}, {"omega", 1.0}, {"Q", 0.0}, {"d", 0.0},
            {"tau_periods", 400.0}, {"samples_per_period", 32.0}};
  if (scenario == "fig2")
    return {{"omega1", 0.02}, {"omega", 1.0}, {"omega0", 1.0}, {"k", 0.0}, {"J", 0.1}, {"varpi1", 0.0}, {"varpi0", 0.0}};
  if (scenario == "fig3") return {{"Q", 0.02507}, {"J", 0.1}, {"omega1", 0.3}, {"omega", 1.0}, {"k", 0.0}};
  if (scenario == "fig4") return {{"J", 0.178}, {"omega0", 2.0}};
  if (scenario == "fig5") return {{"J", 0.1}};
  throw UsageError("unknown scenario '" + scenario + "'");
}

Grid default_grid(const std::string& scenario) {
  if (scenario == "fig1") return {-1.5, 5.5, 141};
  if (scenario == "fig2") return {0.0, 400.0, 2001};
  if (scenario == "fig3") return {0.0, 100.0, 1001};
  if (scenario == "fig4") return {0.0, 100.0, 1001};
  if (scenario == "fig5") return {0.0, 100.0, 1001};
  throw UsageError("unknown scenario '" + scenario + "'");
}

Table run(const ScenarioSpec& spec) {
  const Params p = merged(spec);
  const Grid grid = spec.grid.value_or(default_grid(spec.name));
  const int jobs = std::max(1, spec.jobs);
  if (spec.name != "fig1") {
    const auto pts = grid.points();
    if (pts.front() < 0.0 || !std::is_sorted(pts.begin(), pts.end()) ||
        std::adjacent_find(pts.begin(), pts.end()) != pts.end()) {
      throw UsageError("time grid must be strictly increasing from t >= 0");
    }
  }
  if (spec.name == "fig1") return fig1(p, grid, jobs);
  if (spec.name == "fig2") return fig2(p, grid);
  if (spec.name == "fig3") return fig3(p, grid, jobs);
  if (spec.name == "fig4") return fig4(p, grid);
  return fig5(p, grid, jobs);
}

Table sweep(const ScenarioSpec& base, const std::string& parameter, const Grid& values) {
  if (!defaults(base.name).count(parameter)) {
    throw UsageError("scenario " + base.name + " has no parameter '" + parameter + "'");
  }
  const std::vector<double> pts = values.points();
  std::vector<Table> runs(pts.size());
  detail::parallel_for(pts.size(), base.jobs, [&](std::size_t i) {
    ScenarioSpec spec = base;
    spec.overrides[parameter] = pts[i];
    spec.jobs = 1;
    runs[i] = run(spec);
  });

  Table out;
  out.columns.push_back(parameter);
  const auto& cols = runs.front().columns;
  for (std::size_t c = 1; c < cols.size(); ++c) {
    for (const char* stat : {"_min", "_max", "_mean"}) out.columns.push_back(cols[c] + stat);
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<double> row{pts[i]};
    for (std::size_t c = 1; c < cols.size(); ++c) {
      double lo = INFINITY, hi = -INFINITY, sum = 0.0;
      for (const auto& r : runs[i].rows) {
        lo = std::min(lo, r[c]);
        hi = std::max(hi, r[c]);
        sum += r[c];
      }
      row.insert(row.end(), {lo, hi, sum / static_cast<double>(runs[i].rows.size())});
    }
    out.rows.push_back(row);
  }
  return out;
}

std::pair<std::string, double> parse_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw UsageError("expected key=value, got '" + text + "'");
  const std::string key = trim(text.substr(0, eq));
  if (key.empty()) throw UsageError("empty key in '" + text + "'");
  return {key, parse_number(text.substr(eq + 1), "value of " + key)};
}

void apply_config(std::istream& in, Params& params) {
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto [key, value] = parse_assignment(line);
    params[key] = value;
  }
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  char buf[64];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.15g", row[i] == 0.0 ? 0.0 : row[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

std::string plot_script(const Table& table, const std::string& csv_path, const std::string& title) {
  std::ostringstream s;
  s << "set datafile separator ','\n"
    << "set key autotitle columnhead\n"
    << "set title '" << title << "'\n"
    << "set xlabel '" << table.columns.front() << "'\n"
    << "plot";
  for (std::size_t c = 1; c < table.columns.size(); ++c) {
    s << (c > 1 ? ", ''" : " '" + csv_path + "'") << " using 1:" << c + 1 << " with lines";
  }
  s << '\n';
  return s.str();
}

}  // namespace qutrit::scenarios
