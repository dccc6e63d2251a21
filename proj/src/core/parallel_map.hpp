#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "grid.hpp"
#include "operator_matrix.hpp"

namespace fadiff {

enum class MapDirection { Forward, Backward };

// A point map assigns each grid node a target coordinate y_j = F(x_j).
// Targets outside [0, L] are clamped at interpolation time and the clamp
// count is reported.
class PointMap {
public:
  enum class Kind { Analytic, Tabulated, Random };

  static PointMap analytic(std::function<double(double)> fn,
                           MapDirection direction, std::string name = "analytic");
  static PointMap tabulated(Vector targets, MapDirection direction);
  static PointMap identity(MapDirection direction);

  Kind kind() const { return kind_; }
  MapDirection direction() const { return direction_; }
  const std::string& name() const { return name_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  // Target coordinate for node j of the given grid, before clamping.
  double target(const Grid1D& grid, int j) const;
  Vector targets(const Grid1D& grid) const;

private:
  PointMap() = default;

  Kind kind_ = Kind::Analytic;
  MapDirection direction_ = MapDirection::Forward;
  std::string name_;
  std::function<double(double)> fn_;
  Vector tabulated_;
  std::optional<std::uint64_t> seed_;

  friend PointMap make_random_map(const Grid1D& grid, std::uint64_t seed,
                                  MapDirection direction);
};

// Uniform random targets in [0, L], one per node, reproducible from the seed.
PointMap make_random_map(const Grid1D& grid, std::uint64_t seed,
                         MapDirection direction);

// Row-stochastic piecewise-linear interpolation matrix: row j holds the two
// weights evaluating a grid function at clamp(F(x_j), 0, L). Nonnegative rows
// summing to one give the norm bound the stability lemma needs.
class InterpolationOperator {
public:
  const Grid1D& grid() const { return grid_; }
  const OperatorMatrix& p() const { return p_; }
  int clamp_count() const { return clamp_count_; }
  const Vector& targets() const { return targets_; }  // clamped
  MapDirection direction() const { return direction_; }
  const std::string& map_name() const { return map_name_; }
  std::optional<std::uint64_t> seed() const { return seed_; }

  Vector apply(const Vector& u) const { return p_.apply(u); }

private:
  friend InterpolationOperator build_interpolation(const Grid1D&,
                                                   const PointMap&);
  Grid1D grid_;
  OperatorMatrix p_;
  Vector targets_;
  int clamp_count_ = 0;
  MapDirection direction_ = MapDirection::Forward;
  std::string map_name_;
  std::optional<std::uint64_t> seed_;

  InterpolationOperator(Grid1D grid, OperatorMatrix p, Vector targets,
                        int clamp_count, MapDirection direction,
                        std::string map_name, std::optional<std::uint64_t> seed)
      : grid_(std::move(grid)), p_(std::move(p)), targets_(std::move(targets)),
        clamp_count_(clamp_count), direction_(direction),
        map_name_(std::move(map_name)), seed_(seed) {}
};

InterpolationOperator build_interpolation(const Grid1D& grid,
                                          const PointMap& map);

// Parallel penalty P_par: u -> (tau_par / 2) kappa_par H^{-1} A_par u with
// A_par = I - (P_f + P_b)/2 and tau_par = alpha / dx, alpha <= 0.
class ParallelPenaltyOperator {
public:
  double kappa_par() const { return kappa_par_; }
  double alpha() const { return alpha_; }
  double tau_par() const { return tau_par_; }
  // Largest eigenvalue of sym((P_f + P_b)/2); the definiteness hypothesis
  // holds when this is <= 1.
  double certificate_lambda_max() const { return lambda_max_; }
  bool certified() const { return lambda_max_ <= 1.0 + 1e-10; }

  const OperatorMatrix& a_par() const { return a_par_; }
  const Vector& h() const { return h_; }

  // Average of the two traced states, (P_f u + P_b u)/2.
  Vector parallel_average(const Vector& u) const;
  // Full penalty action (tau_par/2) kappa_par H^{-1} A_par u.
  Vector apply(const Vector& u) const;

  const InterpolationOperator& forward() const { return forward_; }
  const InterpolationOperator& backward() const { return backward_; }

private:
  friend ParallelPenaltyOperator assemble_parallel_penalty(
      InterpolationOperator, InterpolationOperator, double, double,
      const Vector&, double);

  ParallelPenaltyOperator(InterpolationOperator fwd, InterpolationOperator bwd,
                          double kappa_par, double alpha, Vector h, double dx,
                          OperatorMatrix a_par, double lambda_max)
      : forward_(std::move(fwd)), backward_(std::move(bwd)),
        kappa_par_(kappa_par), alpha_(alpha), tau_par_(alpha / dx),
        h_(std::move(h)), a_par_(std::move(a_par)), lambda_max_(lambda_max) {}

  InterpolationOperator forward_;
  InterpolationOperator backward_;
  double kappa_par_;
  double alpha_;
  double tau_par_;
  Vector h_;
  OperatorMatrix a_par_;
  double lambda_max_;
};

ParallelPenaltyOperator assemble_parallel_penalty(InterpolationOperator forward,
                                                  InterpolationOperator backward,
                                                  double kappa_par, double alpha,
                                                  const Vector& h, double dx);

// Two-column CSV (node index, target coordinate) round trip for tabulated
// maps and for persisting generated random targets.
PointMap read_map_csv(const std::string& path, MapDirection direction);
void write_map_csv(const std::string& path, const Vector& targets);

}  // namespace fadiff
