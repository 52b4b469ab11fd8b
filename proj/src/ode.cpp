#include "qutrit/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "qutrit/errors.hpp"

namespace qutrit::ode {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Hairer's continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;

void check_finite(const State& v, double t) {
  if (!v.allFinite()) {
    throw PropagationError("ode: non-finite right-hand side at t=" + std::to_string(t));
  }
}

// Max over components of |err| / (atol + rtol * |y|).
double error_norm(const State& err, const State& y0, const State& y1, const IntegratorConfig& cfg) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y0(i)), std::abs(y1(i)));
    worst = std::max(worst, std::abs(err(i)) / sc);
  }
  return worst;
}

double initial_step(const Rhs& rhs, double t, const State& y, const State& f0, double span,
                    const IntegratorConfig& cfg) {
  auto scaled = [&](const State& v) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double sc = cfg.abs_tol + cfg.rel_tol * std::abs(y(i));
      s += (v(i) / sc) * (v(i) / sc);
    }
    return std::sqrt(s / static_cast<double>(std::max<Eigen::Index>(1, v.size())));
  };
  const double d0 = scaled(y);
  const double dd1 = scaled(f0);
  double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
  h0 = std::min({h0, span, cfg.max_step});
  State y1 = y + h0 * f0;
  State f1(y.size());
  rhs(t + h0, y1, f1);
  check_finite(f1, t + h0);
  const double dd2 = scaled(f1 - f0) / h0;
  const double m = std::max(dd1, dd2);
  const double h1 = m <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / m, 1.0 / 5.0);
  return std::min({100.0 * h0, h1, span, cfg.max_step});
}

struct Recorder {
  const IntegratorConfig& cfg;
  Trajectory& traj;
  std::size_t next_output = 0;
  long steps_since_record = 0;

  void record(double t, const State& y) {
    if (!traj.times.empty() && t <= traj.times.back()) return;
    traj.times.push_back(t);
    traj.states.push_back(y);
    if (cfg.monitor) traj.monitors.push_back(cfg.monitor(t, y));
  }
};

// Integrates one smooth piece [t0, t1].
void integrate_piece(const Rhs& rhs, State& y, double t0, double t1, const IntegratorConfig& cfg,
                     Recorder& rec, bool final_piece) {
  const double span = t1 - t0;
  if (span <= 0.0) return;
  const Eigen::Index n = y.size();
  State k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), err(n);
  double t = t0;
  rhs(t, y, k1);
  check_finite(k1, t);
  double h = cfg.initial_step > 0.0 ? std::min(cfg.initial_step, span)
                                    : initial_step(rhs, t, y, k1, span, cfg);
  const double h_min = 1e-12 * span;
  const bool use_outputs = !cfg.output_times.empty();
  // A piece that ends at a discontinuity samples the right-hand side from the left there.
  const double t_edge = final_piece ? t1 : std::nextafter(t1, t0);
  auto at = [&](double s) { return std::min(s, t_edge); };

  while (t < t1) {
    if (rec.traj.accepted_steps + rec.traj.rejected_steps > cfg.max_steps) {
      throw StiffnessError("ode: step budget exhausted at t=" + std::to_string(t));
    }
    bool last = false;
    if (t + h >= t1 || t1 - (t + h) < 1e-12 * span) {
      h = t1 - t;
      last = true;
    }
    ytmp = y + h * a21 * k1;
    rhs(at(t + c2 * h), ytmp, k2);
    ytmp = y + h * (a31 * k1 + a32 * k2);
    rhs(at(t + c3 * h), ytmp, k3);
    ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
    rhs(at(t + c4 * h), ytmp, k4);
    ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    rhs(at(t + c5 * h), ytmp, k5);
    ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    rhs(at(t + h), ytmp, k6);
    ynew = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    rhs(at(t + h), ynew, k7);
    check_finite(k7, t + h);
    err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double en = error_norm(err, y, ynew, cfg);
    if (!std::isfinite(en)) throw PropagationError("ode: non-finite error estimate");

    double factor = en == 0.0 ? kMaxFactor : kSafety * std::pow(en, -0.2);
    factor = std::clamp(factor, kMinFactor, kMaxFactor);

    if (en <= 1.0) {
      DenseSegment seg;
      if (use_outputs || cfg.dense_output) {
        seg.t0 = t;
        seg.h = h;
        seg.c0 = y;
        seg.c1 = ynew - y;
        seg.c2 = h * k1 - seg.c1;
        seg.c3 = seg.c1 - h * k7 - seg.c2;
        seg.c4 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      }
      const double t_new = last ? t1 : t + h;
      if (use_outputs) {
        const auto& out = cfg.output_times;
        while (rec.next_output < out.size() && out[rec.next_output] <= t_new) {
          const double to = out[rec.next_output];
          if (to >= t) rec.record(to, to == t_new ? ynew : seg.eval(to));
          ++rec.next_output;
        }
      }
      if (cfg.dense_output) rec.traj.segments.push_back(std::move(seg));
      t = t_new;
      y = ynew;
      k1 = k7;
      ++rec.traj.accepted_steps;
      if (!use_outputs) {
        ++rec.steps_since_record;
        if (rec.steps_since_record >= std::max(1, cfg.monitor_interval) || (last && final_piece)) {
          rec.record(t, y);
          rec.steps_since_record = 0;
        }
      }
      if (last) break;
      h = std::min(h * factor, cfg.max_step);
    } else {
      ++rec.traj.rejected_steps;
      h *= std::max(kMinFactor, factor);
    }
    if (h < h_min) {
      throw StiffnessError("ode: step size underflow at t=" + std::to_string(t));
    }
  }
}

}  // namespace

double default_tolerance() {
  if (const char* env = std::getenv("QUTRIT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && std::isfinite(v) && v > 0.0) return v;
  }
  return 1e-10;
}

State DenseSegment::eval(double t) const {
  const double th = (t - t0) / h;
  const double th1 = 1.0 - th;
  return c0 + th * (c1 + th1 * (c2 + th * (c3 + th1 * c4)));
}

State Trajectory::at(double t) const {
  if (segments.empty()) throw DomainError("ode: trajectory has no dense output");
  if (t < segments.front().t0 || t > segments.back().t0 + segments.back().h) {
    throw DomainError("ode: dense output requested outside the integrated span");
  }
  auto it = std::upper_bound(segments.begin(), segments.end(), t,
                             [](double v, const DenseSegment& s) { return v < s.t0; });
  if (it != segments.begin()) --it;
  return it->eval(t);
}

Trajectory integrate(const Rhs& rhs, const State& y0, std::pair<double, double> t_span,
                     const IntegratorConfig& cfg, const std::vector<double>& discontinuities) {
  const auto [t0, t1] = t_span;
  if (!(t1 >= t0)) throw DomainError("ode: integration span must be ascending");
  if (!(cfg.rel_tol > 0.0 && cfg.abs_tol > 0.0)) throw DomainError("ode: tolerances must be positive");
  if (!std::is_sorted(discontinuities.begin(), discontinuities.end())) {
    throw DomainError("ode: discontinuity list must be sorted");
  }
  if (!std::is_sorted(cfg.output_times.begin(), cfg.output_times.end())) {
    throw DomainError("ode: output times must be sorted");
  }
  if (!y0.allFinite()) throw PropagationError("ode: non-finite initial state");

  Trajectory traj;
  Recorder rec{cfg, traj};
  State y = y0;
  if (cfg.output_times.empty()) {
    rec.record(t0, y);
  } else {
    while (rec.next_output < cfg.output_times.size() && cfg.output_times[rec.next_output] < t0) {
      ++rec.next_output;
    }
    if (rec.next_output < cfg.output_times.size() && cfg.output_times[rec.next_output] == t0) {
      rec.record(t0, y);
      ++rec.next_output;
    }
  }

  std::vector<double> breaks;
  for (double d : discontinuities)
    if (d > t0 && d < t1) breaks.push_back(d);
  breaks.push_back(t1);
  double start = t0;
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    integrate_piece(rhs, y, start, breaks[i], cfg, rec, i + 1 == breaks.size());
    start = breaks[i];
  }
  if (cfg.output_times.empty() && (traj.times.empty() || traj.times.back() < t1)) rec.record(t1, y);
  return traj;
}

DriftReport monitor_invariants(const Trajectory& traj, InvariantKind kind) {
  DriftReport rep;
  rep.kind = kind;
  if (traj.states.empty()) return rep;
  const Eigen::Index n = traj.states.front().size();
  auto value = [&](const State& s) {
    switch (kind) {
      case InvariantKind::bloch1:
        return s.norm();
      case InvariantKind::bloch2:
        return s.norm();  // sqrt(sum R_ab^2 - 1) with R_00 omitted from the state
      case InvariantKind::unitary:
        return s.norm();
    }
    return 0.0;
  };
  switch (kind) {
    case InvariantKind::bloch1:
      if (n != 8) throw DomainError("ode: bloch1 monitor needs 8-component states");
      break;
    case InvariantKind::bloch2:
      if (n != 80) throw DomainError("ode: bloch2 monitor needs 80-component states");
      break;
    case InvariantKind::unitary:
      if (n % 2 != 0) throw DomainError("ode: unitary monitor needs interleaved complex states");
      break;
  }
  rep.initial = value(traj.states.front());
  for (const State& s : traj.states) rep.max_drift = std::max(rep.max_drift, std::abs(value(s) - rep.initial));
  return rep;
}

}  // namespace qutrit::ode
