#include "runner.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "mms.hpp"
#include "parallel_map.hpp"
#include "solver.hpp"

namespace fadiff {

namespace {

namespace fs = std::filesystem;

std::string hash_line(const RunConfig& config) {
  std::ostringstream os;
  os << "# config_hash=" << std::hex << std::setw(16) << std::setfill('0')
     << config.hash() << std::dec << " seed=" << config.seed << "\n";
  return os.str();
}

Vector initial_condition(const RunConfig& config, const Grid1D& grid) {
  const int n = grid.size();
  Vector u(n);
  if (config.initial == "gaussian") {
    for (int j = 0; j < n; ++j) {
      const double x = grid.node(j);
      u[j] = std::exp(-(x - 0.5) * (x - 0.5) / 0.02);
    }
  } else if (config.initial == "f1") {
    for (int j = 0; j < n; ++j) u[j] = 1.0 - std::exp(-grid.node(j));
  } else if (config.initial == "f2") {
    for (int j = 0; j < n; ++j) {
      const double x = grid.node(j);
      u[j] = 0.5 * (std::tanh(2.0 * std::numbers::pi * x - std::numbers::pi) + 1.0);
    }
  } else if (config.initial == "zero") {
    u.setZero();
  } else if (config.initial == "uniform") {
    u.setConstant(config.uniform_value);
  } else {  // tabulated
    PointMap values = read_map_csv(config.initial_file, MapDirection::Forward);
    u = values.targets(grid);
  }
  return u;
}

PointMap make_map(const RunConfig& config, const Grid1D& grid,
                  const std::string& kind, const std::string& file,
                  MapDirection direction) {
  if (kind == "identity") return PointMap::identity(direction);
  if (kind == "f1") {
    return PointMap::analytic([](double x) { return 1.0 - std::exp(-x); },
                              direction, "f1");
  }
  if (kind == "f2") {
    return PointMap::analytic(
        [](double x) { return 0.5 * (std::tanh(2.0 * std::numbers::pi * x - std::numbers::pi) + 1.0); },
        direction, "f2");
  }
  if (kind == "random") {
    // forward and backward draws decorrelated by direction
    const std::uint64_t seed =
        direction == MapDirection::Forward ? config.seed : config.seed + 0x9e3779b9ull;
    return make_random_map(grid, seed, direction);
  }
  return read_map_csv(file, direction);
}

struct Assembled {
  Grid1D grid;
  FirstDerivOperator first;
  SecondDerivOperator second;
  ParallelPenaltyOperator penalty;
};

Assembled assemble(const RunConfig& config) {
  Grid1D grid = Grid1D::make(config.length, config.n);
  FirstDerivOperator first = build_first_derivative(grid, config.order);
  Vector kappa = Vector::Constant(grid.size(), config.kappa_perp);
  SecondDerivOperator second =
      build_second_derivative(first, kappa, config.construction);

  PointMap fwd = make_map(config, grid, config.map_forward,
                          config.map_forward_file, MapDirection::Forward);
  PointMap bwd = make_map(config, grid, config.map_backward,
                          config.map_backward_file, MapDirection::Backward);
  ParallelPenaltyOperator penalty = assemble_parallel_penalty(
      build_interpolation(grid, fwd), build_interpolation(grid, bwd),
      config.kappa_par, config.alpha, first.h(), grid.dx());
  return {std::move(grid), std::move(first), std::move(second),
          std::move(penalty)};
}

void write_snapshot_csv(const fs::path& path, const RunConfig& config,
                        const Grid1D& grid,
                        const std::vector<std::pair<double, Vector>>& snaps) {
  std::ofstream out(path);
  out << hash_line(config);
  out << "t,x,u\n";
  out.precision(17);
  for (const auto& [t, u] : snaps) {
    for (int j = 0; j < grid.size(); ++j) {
      out << t << "," << grid.node(j) << "," << u[j] << "\n";
    }
  }
}

void write_energy_csv(const fs::path& path, const RunConfig& config,
                      const std::vector<std::pair<double, double>>& energy) {
  std::ofstream out(path);
  out << hash_line(config);
  out << "t,energy\n";
  out.precision(17);
  for (const auto& [t, e] : energy) out << t << "," << e << "\n";
}

// One integration with snapshot capture at the configured output times.
SolverState integrate(const RunConfig& config, const Assembled& ops,
                      bool with_parallel,
                      std::vector<std::pair<double, Vector>>* snapshots) {
  SolverState state;
  state.u = initial_condition(config, ops.grid);

  std::vector<double> snap_times = config.resolved_snapshot_times();
  std::sort(snap_times.begin(), snap_times.end());
  size_t next_snap = 0;
  auto capture = [&](const SolverState& s) {
    while (next_snap < snap_times.size() &&
           s.t >= snap_times[next_snap] - 1e-12) {
      snapshots->emplace_back(snap_times[next_snap], s.u);
      ++next_snap;
    }
  };
  if (snapshots) capture(state);

  TimeStepRule rule{config.resolved_dt()};
  AdvanceOptions options;
  options.cg = config.cg;
  if (snapshots) {
    options.observer = [&](const SolverState& s) { capture(s); };
  }
  return advance(std::move(state), config.final_time, rule, ops.first,
                 ops.second,
                 SatBoundary([g = config.g_left](double) { return g; },
                             [g = config.g_right](double) { return g; }),
                 with_parallel ? &ops.penalty : nullptr, options);
}

}  // namespace

int cmd_verify(const RunConfig& config, const std::string& out_dir,
               std::string* message) {
  try {
    config.validate();
    fs::create_directories(out_dir);
    Assembled ops = assemble(config);

    PropertyReport report = verify_operator_set(ops.first, ops.second);

    // Interpolation row properties and the definiteness certificate.
    for (const InterpolationOperator* interp :
         {&ops.penalty.forward(), &ops.penalty.backward()}) {
      const std::string tag = interp->direction() == MapDirection::Forward
                                  ? "forward"
                                  : "backward";
      const Matrix p = interp->p().to_dense();
      double row_sum_residual = 0.0;
      double min_entry = 0.0;
      int max_nnz = 0;
      for (int i = 0; i < p.rows(); ++i) {
        row_sum_residual =
            std::max(row_sum_residual, std::abs(p.row(i).sum() - 1.0));
        min_entry = std::min(min_entry, p.row(i).minCoeff());
        int nnz = 0;
        for (int j = 0; j < p.cols(); ++j) {
          if (p(i, j) != 0.0) ++nnz;
        }
        max_nnz = std::max(max_nnz, nnz);
      }
      report.add("interp_" + tag + "_row_sums_one", row_sum_residual, 1e-13);
      report.add("interp_" + tag + "_nonnegative", std::max(0.0, -min_entry),
                 0.0);
      report.add("interp_" + tag + "_max_two_nonzeros",
                 std::max(0, max_nnz - 2), 0.0);
    }
    // Definiteness conclusions are certified only under the lambda_max <= 1
    // hypothesis; otherwise the certificate is a warning and runtime energy
    // monitoring takes over.
    if (ops.penalty.certified()) {
      report.add("penalty_certificate_lambda_max_minus_one",
                 std::max(0.0, ops.penalty.certificate_lambda_max() - 1.0),
                 1e-10);
      std::mt19937_64 rng(0x7e11u);
      std::normal_distribution<double> normal(0.0, 1.0);
      const int n = ops.grid.size();
      double worst_a = 0.0, worst_hp = 0.0;
      for (int trial = 0; trial < 100; ++trial) {
        Vector u(n);
        for (int j = 0; j < n; ++j) u[j] = normal(rng);
        const double s = u.squaredNorm();
        const Vector au = ops.penalty.a_par().apply(u);
        worst_a = std::max(worst_a, -2.0 * u.dot(au) / s);
        const Vector hpu =
            ops.penalty.h().cwiseProduct(ops.penalty.apply(u));
        worst_hp = std::max(worst_hp, 2.0 * u.dot(hpu) / s);
      }
      report.add("lemma_a_par_positive_semidefinite", std::max(0.0, worst_a),
                 1e-10);
      report.add("lemma_h_penalty_negative_semidefinite",
                 std::max(0.0, worst_hp), 1e-10);
    }

    std::ofstream txt(fs::path(out_dir) / (config.prefix + "_properties.txt"));
    report.write_text(txt);
    std::ofstream csv(fs::path(out_dir) / (config.prefix + "_properties.csv"));
    csv << hash_line(config);
    report.write_csv(csv);

    if (!report.all_pass()) {
      if (message) {
        *message = "property check failed: " + report.first_failure()->name;
      }
      return kExitNumerical;
    }
    if (message) {
      std::ostringstream os;
      os << report.checks.size() << " property checks passed";
      if (ops.penalty.certificate_lambda_max() > 1.0 + 1e-10) {
        os << " (warning: map certificate lambda_max = "
           << ops.penalty.certificate_lambda_max()
           << " > 1, stability hypothesis unverified)";
      }
      *message = os.str();
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    if (message) *message = e.what();
    return kExitValidation;
  } catch (const std::exception& e) {
    if (message) *message = e.what();
    return kExitNumerical;
  }
}

int cmd_converge(const RunConfig& config, const std::string& out_dir,
                 std::string* message) {
  try {
    config.validate();
    fs::create_directories(out_dir);

    ConvergenceStudyConfig study;
    study.orders = {config.order};
    study.constructions = {config.construction};
    study.grid_sizes = config.converge_grids;
    study.kappa = config.converge_kappa;
    study.final_time = config.converge_final_time;
    study.length = config.length;
    study.cg = config.cg;

    ConvergenceReport report = run_convergence(study);

    std::ofstream csv(fs::path(out_dir) / (config.prefix + "_convergence.csv"));
    csv << hash_line(config);
    report.write_csv(csv);

    std::ostringstream os;
    for (const auto& s : report.series) {
      os << to_string(s.order) << "/" << to_string(s.construction)
         << " mean rate ";
      if (s.rows.size() < 2) {
        os << "n/a (single grid size, no ratio possible)";
      } else {
        os << std::fixed << std::setprecision(3) << s.mean_rate();
      }
      os << "; ";
    }
    if (message) *message = os.str();
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    if (message) *message = e.what();
    return kExitValidation;
  } catch (const std::exception& e) {
    if (message) *message = e.what();
    return kExitNumerical;
  }
}

int cmd_run(const RunConfig& config, const std::string& out_dir,
            std::string* message) {
  try {
    config.validate();
    fs::create_directories(out_dir);
    Assembled ops = assemble(config);

    // Persist the exact map targets and the config for regeneration.
    write_map_csv((fs::path(out_dir) / (config.prefix + "_map_forward.csv")).string(),
                  ops.penalty.forward().targets());
    write_map_csv((fs::path(out_dir) / (config.prefix + "_map_backward.csv")).string(),
                  ops.penalty.backward().targets());
    {
      std::ofstream echo(fs::path(out_dir) / (config.prefix + "_config.cfg"));
      echo << config.serialize();
    }

    std::vector<std::pair<double, Vector>> snapshots;
    SolverState state = integrate(config, ops, true, &snapshots);

    write_snapshot_csv(fs::path(out_dir) / (config.prefix + "_snapshots.csv"),
                       config, ops.grid, snapshots);
    write_energy_csv(fs::path(out_dir) / (config.prefix + "_energy.csv"),
                     config, state.energy_history);

    if (config.companion_no_parallel) {
      std::vector<std::pair<double, Vector>> companion_snaps;
      SolverState companion = integrate(config, ops, false, &companion_snaps);
      write_snapshot_csv(
          fs::path(out_dir) / (config.prefix + "_no_parallel_snapshots.csv"),
          config, ops.grid, companion_snaps);
      write_energy_csv(
          fs::path(out_dir) / (config.prefix + "_no_parallel_energy.csv"),
          config, companion.energy_history);
    }

    if (message) {
      std::ostringstream os;
      os << "integrated to t=" << state.t << " in " << state.step_index
         << " steps";
      if (!ops.penalty.certified()) {
        os << " (warning: map certificate lambda_max = "
           << ops.penalty.certificate_lambda_max()
           << " > 1, monitor the energy history)";
      }
      *message = os.str();
    }
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    if (message) *message = e.what();
    return kExitValidation;
  } catch (const std::exception& e) {
    if (message) *message = e.what();
    return kExitNumerical;
  }
}

}  // namespace fadiff
