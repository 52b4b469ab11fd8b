#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qutrit::ode {

using State = Eigen::VectorXd;
using Rhs = std::function<void(double t, const State& y, State& dydt)>;
using Monitor = std::function<double(double t, const State& y)>;

/// Default relative and absolute tolerance; the QUTRIT_TOL environment
/// variable overrides it when set to a positive number.
double default_tolerance();

struct IntegratorConfig {
  double rel_tol = default_tolerance();
  double abs_tol = default_tolerance();
  double max_step = std::numeric_limits<double>::infinity();
  double initial_step = 0.0;  // 0 selects a step automatically
  int monitor_interval = 1;   // record every n-th accepted step
  bool dense_output = false;  // keep interpolation data for Trajectory::at
  /// When non-empty, snapshots are taken exactly at these times (ascending,
  /// inside the span) instead of at accepted steps.
  std::vector<double> output_times;
  Monitor monitor;  // optional; evaluated at every snapshot
  long max_steps = 50'000'000;
};

/// One accepted step's continuous extension (4th order).
struct DenseSegment {
  double t0 = 0.0, h = 0.0;
  State c0, c1, c2, c3, c4;
  State eval(double t) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  std::vector<double> monitors;
  std::vector<DenseSegment> segments;
  long accepted_steps = 0;
  long rejected_steps = 0;

  const State& final_state() const { return states.back(); }
  /// Dense-output value at t; requires dense_output in the config.
  State at(double t) const;
};

/// Integrate y' = rhs(t, y) from t_span.first to t_span.second with the
/// Dormand-Prince 5(4) pair, accepting a step when the largest component of
/// |err| / (abs_tol + rel_tol |y|) is at most 1. The integration restarts (fresh step size, no
/// stepping across) at every listed discontinuity inside the span.
///
/// Throws StiffnessError if the step falls below 1e-12 of the span and
/// PropagationError if the right-hand side returns a non-finite value.
Trajectory integrate(const Rhs& rhs, const State& y0, std::pair<double, double> t_span,
                     const IntegratorConfig& cfg = {}, const std::vector<double>& discontinuities = {});

enum class InvariantKind { bloch1, bloch2, unitary };

struct DriftReport {
  InvariantKind kind = InvariantKind::bloch1;
  double initial = 0.0;
  double max_drift = 0.0;
};

/// Max deviation from the initial value of the conserved quantity along
/// the stored snapshots: the Bloch length b for 8-component states, the
/// generalized length sqrt(sum R_ab^2 - 1) for 80-component states, or the norm of a
/// complex vector stored as interleaved (re, im) pairs.
DriftReport monitor_invariants(const Trajectory& traj, InvariantKind kind);

}  // namespace qutrit::ode
