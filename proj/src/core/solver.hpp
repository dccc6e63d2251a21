#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "cg.hpp"
#include "grid.hpp"
#include "parallel_map.hpp"
#include "sbp.hpp"

namespace fadiff {

// Neumann boundary data entering through the SAT penalty. The penalty weight
// is pinned to -1; the stability proof does not hold for other values.
class SatBoundary {
public:
  using TimeFunction = std::function<double(double)>;

  SatBoundary(TimeFunction g_left, TimeFunction g_right, double tau0 = -1.0);
  static SatBoundary homogeneous();

  double tau0() const { return tau0_; }
  double g_left(double t) const { return g_left_(t); }
  double g_right(double t) const { return g_right_(t); }

private:
  TimeFunction g_left_;
  TimeFunction g_right_;
  double tau0_;
};

struct SolverState {
  GridFunction u;
  double t = 0.0;
  long step_index = 0;
  std::vector<std::pair<double, double>> energy_history;  // (t, ||u||_H^2)
};

// Source hook s(x, t) added to the stage-1 forcing (manufactured solutions).
using SourceFunction = std::function<Vector(const Grid1D&, double)>;

// Stage-1 system (H + dt M) u = H u_prev + dt (B g + H s), the symmetrized
// SPD form of the implicit perpendicular step.
class StageOneSystem {
public:
  StageOneSystem(const FirstDerivOperator& first,
                 const SecondDerivOperator& second, const SatBoundary& sat,
                 double dt, SourceFunction source = nullptr);

  double dt() const { return dt_; }
  const Vector& h() const { return h_; }
  const OperatorMatrix& s() const { return s_; }

  Vector apply_s(const Vector& u) const { return s_.apply(u); }
  Vector rhs(const Vector& u_prev, double t_next) const;

private:
  const Grid1D grid_;
  Vector h_;
  Vector kappa_;
  OperatorMatrix s_;
  const SatBoundary* sat_;
  double dt_;
  SourceFunction source_;
};

// Semi-discrete right-hand side D_xx u + SAT + P_par u. Literal assembly of
// every term; the solver stages use the simplified -H^{-1}M u + H^{-1}B g
// form and tests pin the two to each other.
Vector semi_discrete_rhs(const Vector& u, double t,
                         const FirstDerivOperator& first,
                         const SecondDerivOperator& second,
                         const SatBoundary& sat,
                         const ParallelPenaltyOperator* penalty);

GridFunction step_perpendicular(const SolverState& state, double dt,
                                const StageOneSystem& system,
                                const CgConfig& cg, int* iterations = nullptr);

GridFunction step_parallel(const GridFunction& u_half, double dt,
                           const ParallelPenaltyOperator& penalty);

struct TimeStepRule {
  double dt = 0.0;  // fixed step; final step truncated to land on T
};

struct AdvanceOptions {
  CgConfig cg;
  SourceFunction source;
  // Record energy every stride-th step (always the last); stride 1 is the
  // full per-step monitor.
  long energy_stride = 1;
  std::function<void(const SolverState&)> observer;
};

class StepError : public std::runtime_error {
public:
  StepError(long step, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ": " + what),
        step(step) {}
  long step;
};

SolverState advance(SolverState state, double final_time,
                    const TimeStepRule& rule, const FirstDerivOperator& first,
                    const SecondDerivOperator& second, const SatBoundary& sat,
                    const ParallelPenaltyOperator* penalty,
                    const AdvanceOptions& options = {});

double h_energy(const Vector& h, const Vector& u);

}  // namespace fadiff
