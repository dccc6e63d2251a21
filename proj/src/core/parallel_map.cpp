#include "parallel_map.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fadiff {

PointMap PointMap::analytic(std::function<double(double)> fn,
                            MapDirection direction, std::string name) {
  PointMap m;
  m.kind_ = Kind::Analytic;
  m.direction_ = direction;
  m.fn_ = std::move(fn);
  m.name_ = std::move(name);
  return m;
}

PointMap PointMap::tabulated(Vector targets, MapDirection direction) {
  PointMap m;
  m.kind_ = Kind::Tabulated;
  m.direction_ = direction;
  m.tabulated_ = std::move(targets);
  m.name_ = "tabulated";
  return m;
}

PointMap PointMap::identity(MapDirection direction) {
  return analytic([](double x) { return x; }, direction, "identity");
}

double PointMap::target(const Grid1D& grid, int j) const {
  if (kind_ == Kind::Analytic) return fn_(grid.node(j));
  if (j < 0 || j >= tabulated_.size()) {
    throw std::invalid_argument("tabulated map has no entry for node " +
                                std::to_string(j));
  }
  return tabulated_[j];
}

Vector PointMap::targets(const Grid1D& grid) const {
  if (kind_ != Kind::Analytic && tabulated_.size() != grid.size()) {
    throw std::invalid_argument(
        "tabulated map length " + std::to_string(tabulated_.size()) +
        " does not match grid size " + std::to_string(grid.size()));
  }
  Vector y(grid.size());
  for (int j = 0; j < grid.size(); ++j) y[j] = target(grid, j);
  return y;
}

PointMap make_random_map(const Grid1D& grid, std::uint64_t seed,
                         MapDirection direction) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, grid.length());
  Vector y(grid.size());
  for (int j = 0; j < grid.size(); ++j) y[j] = uniform(rng);
  PointMap m = PointMap::tabulated(std::move(y), direction);
  m.kind_ = PointMap::Kind::Random;
  m.seed_ = seed;
  m.name_ = "random";
  return m;
}

InterpolationOperator build_interpolation(const Grid1D& grid,
                                          const PointMap& map) {
  const int n = grid.size();
  const double length = grid.length();
  const double dx = grid.dx();
  Vector y = map.targets(grid);

  int clamp_count = 0;
  TripletBuilder p(n);
  for (int j = 0; j < n; ++j) {
    if (std::isnan(y[j])) {
      throw std::invalid_argument("point map produced NaN at node " +
                                  std::to_string(j));
    }
    if (y[j] < 0.0 || y[j] > length) {
      y[j] = std::clamp(y[j], 0.0, length);
      ++clamp_count;
    }
    // Locate the cell and use exact unit weights when the target hits a node,
    // so the identity map yields P = I exactly.
    int cell = static_cast<int>(std::floor(y[j] / dx));
    cell = std::clamp(cell, 0, n - 2);
    const double theta = (y[j] - grid.node(cell)) / dx;
    if (y[j] == grid.node(cell) || theta <= 0.0) {
      p.add(j, cell, 1.0);
    } else if (y[j] == grid.node(cell + 1) || theta >= 1.0) {
      p.add(j, cell + 1, 1.0);
    } else {
      p.add(j, cell, 1.0 - theta);
      p.add(j, cell + 1, theta);
    }
  }
  return InterpolationOperator(grid, p.build(), std::move(y), clamp_count,
                               map.direction(), map.name(), map.seed());
}

Vector ParallelPenaltyOperator::parallel_average(const Vector& u) const {
  return 0.5 * (forward_.apply(u) + backward_.apply(u));
}

Vector ParallelPenaltyOperator::apply(const Vector& u) const {
  const double c = 0.5 * tau_par_ * kappa_par_;
  if (c == 0.0) return Vector::Zero(u.size());
  return c * h_.cwiseInverse().cwiseProduct(a_par_.apply(u));
}

ParallelPenaltyOperator assemble_parallel_penalty(InterpolationOperator forward,
                                                  InterpolationOperator backward,
                                                  double kappa_par, double alpha,
                                                  const Vector& h, double dx) {
  if (alpha > 0.0) {
    throw std::invalid_argument("stability requires alpha <= 0, got " +
                                std::to_string(alpha));
  }
  if (kappa_par < 0.0) {
    throw std::invalid_argument("kappa_par must be nonnegative");
  }
  if (!forward.grid().same_as(backward.grid())) {
    throw std::invalid_argument(
        "forward and backward maps built on different grids");
  }
  const int n = forward.grid().size();
  if (h.size() != n) {
    throw std::invalid_argument("norm diagonal does not match map grid");
  }

  SparseMatrix avg =
      0.5 * (forward.p().sparse() + backward.p().sparse());
  SparseMatrix a = -avg;
  for (int j = 0; j < n; ++j) a.coeffRef(j, j) += 1.0;
  a.makeCompressed();

  // Definiteness certificate: lambda_max of sym((P_f + P_b)/2).
  Matrix sym_avg = Matrix(avg);
  sym_avg = 0.5 * (sym_avg + sym_avg.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym_avg, Eigen::EigenvaluesOnly);
  const double lambda_max = es.eigenvalues().maxCoeff();

  return ParallelPenaltyOperator(std::move(forward), std::move(backward),
                                 kappa_par, alpha, h, dx,
                                 OperatorMatrix(std::move(a)), lambda_max);
}

PointMap read_map_csv(const std::string& path, MapDirection direction) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  std::vector<std::pair<int, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line.find("index") != std::string::npos) continue;  // header
    std::istringstream ls(line);
    std::string a, b;
    if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) {
      throw std::runtime_error("malformed map row in " + path + ": " + line);
    }
    rows.emplace_back(std::stoi(a), std::stod(b));
  }
  Vector targets(rows.size());
  for (const auto& [idx, y] : rows) {
    if (idx < 1 || idx > static_cast<int>(rows.size())) {
      throw std::runtime_error("map node index out of range in " + path);
    }
    targets[idx - 1] = y;
  }
  return PointMap::tabulated(std::move(targets), direction);
}

void write_map_csv(const std::string& path, const Vector& targets) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write map file: " + path);
  out << "index,target\n";
  out.precision(17);
  for (int j = 0; j < targets.size(); ++j) {
    out << (j + 1) << "," << targets[j] << "\n";
  }
}

}  // namespace fadiff
