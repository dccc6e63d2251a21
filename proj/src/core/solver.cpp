#include "solver.hpp"

#include <cmath>
#include <stdexcept>

namespace fadiff {

SatBoundary::SatBoundary(TimeFunction g_left, TimeFunction g_right, double tau0)
    : g_left_(std::move(g_left)), g_right_(std::move(g_right)), tau0_(tau0) {
  if (tau0_ != -1.0) {
    throw std::invalid_argument(
        "SAT penalty tau0 must equal -1 (stability requirement), got " +
        std::to_string(tau0_));
  }
  if (!g_left_ || !g_right_) {
    throw std::invalid_argument("SAT boundary data functions must be set");
  }
}

SatBoundary SatBoundary::homogeneous() {
  auto zero = [](double) { return 0.0; };
  return SatBoundary(zero, zero);
}

double h_energy(const Vector& h, const Vector& u) {
  return u.dot(h.cwiseProduct(u));
}

StageOneSystem::StageOneSystem(const FirstDerivOperator& first,
                               const SecondDerivOperator& second,
                               const SatBoundary& sat, double dt,
                               SourceFunction source)
    : grid_(first.grid()), h_(first.h()), kappa_(second.kappa()), sat_(&sat),
      dt_(dt), source_(std::move(source)) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!first.grid().same_as(second.grid())) {
    throw std::invalid_argument("stage-1 operators built on different grids");
  }
  SparseMatrix s = dt * second.m().sparse();
  for (int j = 0; j < grid_.size(); ++j) s.coeffRef(j, j) += h_[j];
  s.makeCompressed();
  s_ = OperatorMatrix(std::move(s));
}

Vector StageOneSystem::rhs(const Vector& u_prev, double t_next) const {
  Vector r = h_.cwiseProduct(u_prev);
  const int n = static_cast<int>(r.size());
  // SAT forcing with tau0 = -1: +B g on the right-hand side.
  r[0] -= dt_ * sat_->g_left(t_next);
  r[n - 1] += dt_ * sat_->g_right(t_next);
  if (source_) {
    r += dt_ * h_.cwiseProduct(source_(grid_, t_next));
  }
  return r;
}

Vector semi_discrete_rhs(const Vector& u, double t,
                         const FirstDerivOperator& first,
                         const SecondDerivOperator& second,
                         const SatBoundary& sat,
                         const ParallelPenaltyOperator* penalty) {
  if (u.size() != first.grid().size()) {
    throw std::invalid_argument("state size does not match operator grid");
  }
  const int n = static_cast<int>(u.size());
  Vector rhs = second.apply(u);

  // SAT = tau0 H^{-1} B (K D_x u - g)
  Vector flux = second.kappa().cwiseProduct(first.apply(u));
  const Vector& h = first.h();
  rhs[0] += sat.tau0() * (-(flux[0] - sat.g_left(t))) / h[0];
  rhs[n - 1] += sat.tau0() * (flux[n - 1] - sat.g_right(t)) / h[n - 1];

  if (penalty) rhs += penalty->apply(u);
  return rhs;
}

GridFunction step_perpendicular(const SolverState& state, double dt,
                                const StageOneSystem& system,
                                const CgConfig& cg, int* iterations) {
  if (dt != system.dt()) {
    throw std::invalid_argument("stage-1 system assembled for a different dt");
  }
  Vector b = system.rhs(state.u, state.t + dt);
  const Vector diag = system.s().sparse().diagonal();
  CgResult res =
      cg_solve([&system](const Vector& v) { return system.apply_s(v); }, b, cg,
               &state.u, &diag);
  if (iterations) *iterations = res.iterations;
  if (!all_finite(res.x)) {
    throw std::runtime_error("stage-1 solve produced non-finite values");
  }
  return res.x;
}

GridFunction step_parallel(const GridFunction& u_half, double dt,
                           const ParallelPenaltyOperator& penalty) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double c = 0.5 * dt * penalty.tau_par() * penalty.kappa_par();
  if (c == 0.0) return u_half;

  // Implicit relation u = u_half + c H^{-1} (u - wbar) is diagonal:
  // (1 - c/h_j) u_j = u_half_j - (c/h_j) wbar_j, with c <= 0 so the
  // denominator is at least one.
  Vector wbar = penalty.parallel_average(u_half);
  const Vector& h = penalty.h();
  Vector u(u_half.size());
  for (int j = 0; j < u.size(); ++j) {
    const double ch = c / h[j];
    u[j] = (u_half[j] - ch * wbar[j]) / (1.0 - ch);
  }
  if (!all_finite(u)) {
    throw std::runtime_error("stage-2 update produced non-finite values");
  }
  return u;
}

SolverState advance(SolverState state, double final_time,
                    const TimeStepRule& rule, const FirstDerivOperator& first,
                    const SecondDerivOperator& second, const SatBoundary& sat,
                    const ParallelPenaltyOperator* penalty,
                    const AdvanceOptions& options) {
  if (!(final_time > state.t)) {
    throw std::invalid_argument("final time must exceed current time");
  }
  if (!(rule.dt > 0.0)) throw std::invalid_argument("dt rule must be positive");

  const Vector& h = first.h();
  if (state.energy_history.empty()) {
    state.energy_history.emplace_back(state.t, h_energy(h, state.u));
  }

  StageOneSystem system(first, second, sat, rule.dt, options.source);
  std::optional<StageOneSystem> truncated;

  const long stride = std::max<long>(1, options.energy_stride);
  while (state.t < final_time - 1e-14 * std::max(1.0, final_time)) {
    double dt = rule.dt;
    const StageOneSystem* sys = &system;
    if (state.t + dt > final_time) {
      dt = final_time - state.t;
      truncated.emplace(first, second, sat, dt, options.source);
      sys = &*truncated;
    }
    try {
      GridFunction u_half = step_perpendicular(state, dt, *sys, options.cg);
      state.u = penalty ? step_parallel(u_half, dt, *penalty)
                        : std::move(u_half);
    } catch (const std::exception& e) {
      throw StepError(state.step_index, e.what());
    }
    state.t = (state.t + dt > final_time - 1e-14) ? final_time : state.t + dt;
    ++state.step_index;
    if (state.step_index % stride == 0 || state.t >= final_time) {
      state.energy_history.emplace_back(state.t, h_energy(h, state.u));
    }
    if (options.observer) options.observer(state);
  }
  return state;
}

}  // namespace fadiff
