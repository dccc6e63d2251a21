#include "mms.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace fadiff {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWave = 17.0 * std::numbers::pi;
}  // namespace

double ManufacturedCase::exact(double x, double t) const {
  return std::cos(kTwoPi * t) * std::sin(kWave * x + 1.0);
}

double ManufacturedCase::source(double x, double t) const {
  // du/dt - kappa d2u/dx2 evaluated analytically.
  return (-kTwoPi * std::sin(kTwoPi * t) +
          kappa_ * kWave * kWave * std::cos(kTwoPi * t)) *
         std::sin(kWave * x + 1.0);
}

double ManufacturedCase::neumann(double x, double t) const {
  return kappa_ * kWave * std::cos(kTwoPi * t) * std::cos(kWave * x + 1.0);
}

Vector ManufacturedCase::exact_on_grid(const Grid1D& grid, double t) const {
  Vector u(grid.size());
  for (int j = 0; j < grid.size(); ++j) u[j] = exact(grid.node(j), t);
  return u;
}

SatBoundary ManufacturedCase::boundary(const Grid1D& grid) const {
  const double length = grid.length();
  auto self = *this;
  return SatBoundary([self](double t) { return self.neumann(0.0, t); },
                     [self, length](double t) { return self.neumann(length, t); });
}

SourceFunction ManufacturedCase::source_function() const {
  // The source separates as A(t) * sin(kWave x + 1); cache the spatial
  // profile so a time step costs two trig evaluations, not n.
  struct Cache {
    ManufacturedCase mms;
    Vector profile;
    const Grid1D* grid = nullptr;
  };
  auto cache = std::make_shared<Cache>(Cache{*this, {}, nullptr});
  return [cache](const Grid1D& grid, double t) -> Vector {
    if (cache->grid != &grid || cache->profile.size() != grid.size()) {
      Vector p(grid.size());
      for (int j = 0; j < grid.size(); ++j) {
        p[j] = std::sin(kWave * grid.node(j) + 1.0);
      }
      cache->profile = std::move(p);
      cache->grid = &grid;
    }
    const double amplitude =
        -kTwoPi * std::sin(kTwoPi * t) +
        cache->mms.kappa() * kWave * kWave * std::cos(kTwoPi * t);
    return amplitude * cache->profile;
  };
}

Vector manufactured_source(const ManufacturedCase& mms, const Grid1D& grid,
                           double t) {
  Vector s(grid.size());
  for (int j = 0; j < grid.size(); ++j) s[j] = mms.source(grid.node(j), t);
  return s;
}

std::vector<double> observed_rates(const std::vector<double>& dx,
                                   const std::vector<double>& errors) {
  if (dx.size() != errors.size()) {
    throw std::invalid_argument("rate table columns differ in length");
  }
  std::vector<double> rates;
  for (size_t i = 0; i + 1 < dx.size(); ++i) {
    rates.push_back(std::log(errors[i] / errors[i + 1]) /
                    std::log(dx[i] / dx[i + 1]));
  }
  return rates;
}

double ConvergenceSeries::mean_rate() const {
  if (rows.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) sum += rows[i].rate;
  return sum / static_cast<double>(rows.size() - 1);
}

double manufactured_error(const ManufacturedCase& mms, int n, SbpOrder order,
                          SecondDerivConstruction construction,
                          double final_time, double length, const CgConfig& cg) {
  Grid1D grid = Grid1D::make(length, n);
  FirstDerivOperator first = build_first_derivative(grid, order);
  Vector kappa = Vector::Constant(n, mms.kappa());
  SecondDerivOperator second =
      build_second_derivative(first, kappa, construction);
  SatBoundary sat = mms.boundary(grid);

  SolverState state;
  state.u = mms.exact_on_grid(grid, 0.0);

  TimeStepRule rule;
  rule.dt = grid.dx() * grid.dx() / 100.0;

  AdvanceOptions options;
  options.cg = cg;
  options.source = mms.source_function();
  const long steps = static_cast<long>(std::ceil(final_time / rule.dt));
  options.energy_stride = std::max<long>(1, steps / 512);

  state = advance(std::move(state), final_time, rule, first, second, sat,
                  nullptr, options);

  const Vector exact = mms.exact_on_grid(grid, final_time);
  const Vector diff = state.u - exact;
  return std::sqrt(h_energy(first.h(), diff) / h_energy(first.h(), exact));
}

ConvergenceReport run_convergence(const ConvergenceStudyConfig& config) {
  if (config.orders.size() != config.constructions.size()) {
    throw std::invalid_argument("orders and constructions must pair up");
  }
  for (size_t i = 1; i < config.grid_sizes.size(); ++i) {
    if (config.grid_sizes[i] <= config.grid_sizes[i - 1]) {
      throw std::invalid_argument("grid sizes must be strictly increasing");
    }
  }

  ConvergenceReport report;
  for (size_t s = 0; s < config.orders.size(); ++s) {
    ManufacturedCase mms(config.kappa);
    ConvergenceSeries series{config.orders[s], config.constructions[s], {}};
    for (int n : config.grid_sizes) {
      ConvergenceRow row;
      row.n = n;
      row.dx = config.length / (n - 1);
      row.error = manufactured_error(mms, n, series.order, series.construction,
                                     config.final_time, config.length,
                                     config.cg);
      row.rate = std::numeric_limits<double>::quiet_NaN();
      if (!series.rows.empty()) {
        const auto& prev = series.rows.back();
        row.rate = std::log(prev.error / row.error) / std::log(prev.dx / row.dx);
      }
      series.rows.push_back(row);
    }
    report.series.push_back(std::move(series));
  }
  return report;
}

void ConvergenceReport::write_csv(std::ostream& os) const {
  os << "order,construction,n,dx,error,rate\n";
  os << std::scientific << std::setprecision(10);
  for (const auto& s : series) {
    for (size_t i = 0; i < s.rows.size(); ++i) {
      const auto& r = s.rows[i];
      os << to_string(s.order) << "," << to_string(s.construction) << ","
         << r.n << "," << r.dx << "," << r.error << ",";
      if (i > 0) os << r.rate;
      os << "\n";
    }
  }
}

}  // namespace fadiff
