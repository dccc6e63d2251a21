#pragma once

#include <ostream>
#include <vector>

#include "grid.hpp"
#include "sbp.hpp"
#include "solver.hpp"

namespace fadiff {

// Manufactured solution u(x,t) = cos(2 pi t) sin(17 pi x + 1) with constant
// diffusion coefficient; source and Neumann data are its exact analytic
// derivatives.
class ManufacturedCase {
public:
  explicit ManufacturedCase(double kappa) : kappa_(kappa) {}

  double kappa() const { return kappa_; }

  double exact(double x, double t) const;
  double source(double x, double t) const;
  double neumann(double x, double t) const;  // kappa du/dx at (x, t)

  Vector exact_on_grid(const Grid1D& grid, double t) const;
  SatBoundary boundary(const Grid1D& grid) const;
  SourceFunction source_function() const;

private:
  double kappa_;
};

Vector manufactured_source(const ManufacturedCase& mms, const Grid1D& grid,
                           double t);

struct ConvergenceRow {
  int n = 0;
  double dx = 0.0;
  double error = 0.0;   // relative H-weighted L2 error at final time
  double rate = 0.0;    // vs previous row; NaN for the first row
};

struct ConvergenceSeries {
  SbpOrder order;
  SecondDerivConstruction construction;
  std::vector<ConvergenceRow> rows;
  double mean_rate() const;
};

struct ConvergenceReport {
  std::vector<ConvergenceSeries> series;
  void write_csv(std::ostream& os) const;
};

// Observed rates from a table of (dx, error) pairs; rate_i pairs row i with
// row i+1.
std::vector<double> observed_rates(const std::vector<double>& dx,
                                   const std::vector<double>& errors);

struct ConvergenceStudyConfig {
  std::vector<SbpOrder> orders;
  std::vector<SecondDerivConstruction> constructions;  // parallel to orders
  std::vector<int> grid_sizes;  // strictly increasing
  double kappa = 1.0;
  double final_time = 0.25;
  double length = 1.0;
  CgConfig cg;
};

// One solve of the manufactured problem; parallel penalty disabled.
double manufactured_error(const ManufacturedCase& mms, int n, SbpOrder order,
                          SecondDerivConstruction construction,
                          double final_time, double length, const CgConfig& cg);

ConvergenceReport run_convergence(const ConvergenceStudyConfig& config);

}  // namespace fadiff
