#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/mms.hpp"

using namespace fadiff;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("exact solution spot values") {
  ManufacturedCase mms(1.0);
  CHECK(mms.exact(0.0, 0.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
  CHECK(mms.exact(0.0, 0.5) == doctest::Approx(-std::sin(1.0)).epsilon(1e-15));
  // 17 pi x + 1 = pi/2 + 1 at x = 1/34 shifted; pick x where the phase is 1 + pi
  const double x = 1.0 / 17.0;
  CHECK(mms.exact(x, 0.0) == doctest::Approx(-std::sin(1.0)).epsilon(1e-12));
}

TEST_CASE("source at t = 0 is the pure diffusion residual") {
  // At t = 0 the time derivative vanishes, so s = kappa (17 pi)^2 u.
  ManufacturedCase mms(0.7);
  for (double x : {0.0, 0.13, 0.5, 0.98}) {
    const double expected =
        0.7 * (17.0 * kPi) * (17.0 * kPi) * std::sin(17.0 * kPi * x + 1.0);
    CHECK(mms.source(x, 0.0) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("source with zero diffusion is the pure time derivative") {
  // At kappa = 0, t = 1/4: s = -2 pi sin(pi/2) sin(17 pi x + 1).
  ManufacturedCase mms(0.0);
  for (double x : {0.0, 0.31, 0.77}) {
    const double expected = -2.0 * kPi * std::sin(17.0 * kPi * x + 1.0);
    CHECK(mms.source(x, 0.25) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("neumann data matches a finite-difference flux oracle") {
  ManufacturedCase mms(1.3);
  const double eps = 1e-6;
  for (double x : {0.0, 0.42, 1.0}) {
    for (double t : {0.0, 0.1, 0.6}) {
      const double fd =
          1.3 * (mms.exact(x + eps, t) - mms.exact(x - eps, t)) / (2.0 * eps);
      CHECK(mms.neumann(x, t) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("boundary data functions sample the flux at the endpoints") {
  ManufacturedCase mms(2.0);
  Grid1D grid = Grid1D::make(1.0, 33);
  SatBoundary sat = mms.boundary(grid);
  for (double t : {0.0, 0.2, 0.9}) {
    CHECK(sat.g_left(t) == mms.neumann(0.0, t));
    CHECK(sat.g_right(t) == mms.neumann(1.0, t));
  }
}

TEST_CASE("cached source function equals the direct formula") {
  ManufacturedCase mms(1e-3);
  Grid1D grid = Grid1D::make(1.0, 65);
  SourceFunction fn = mms.source_function();
  for (double t : {0.0, 0.07, 0.25, 0.8}) {
    Vector cached = fn(grid, t);
    Vector direct = manufactured_source(mms, grid, t);
    CHECK((cached - direct).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("observed rates on a synthetic second-order table") {
  std::vector<double> dx = {1e-1, 5e-2, 2.5e-2};
  std::vector<double> errors = {1e-2, 2.5e-3, 6.25e-4};
  auto rates = observed_rates(dx, errors);
  REQUIRE(rates.size() == 2);
  CHECK(rates[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rates[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK_THROWS_AS(observed_rates({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("small convergence run recovers second order") {
  ManufacturedCase mms(1.0);
  CgConfig cg{1e-12, 0, true};
  const double e1 = manufactured_error(
      mms, 65, SbpOrder::Order2, SecondDerivConstruction::WideFullyCompatible,
      0.01, 1.0, cg);
  const double e2 = manufactured_error(
      mms, 129, SbpOrder::Order2, SecondDerivConstruction::WideFullyCompatible,
      0.01, 1.0, cg);
  const double rate = std::log2(e1 / e2);
  CHECK(rate >= 1.8);
  CHECK(rate <= 2.6);
}

TEST_CASE("observed rate is robust to doubling the final time") {
  ManufacturedCase mms(1.0);
  CgConfig cg{1e-12, 0, true};
  auto rate_at = [&](double final_time) {
    const double e1 = manufactured_error(
        mms, 65, SbpOrder::Order2, SecondDerivConstruction::WideFullyCompatible,
        final_time, 1.0, cg);
    const double e2 = manufactured_error(
        mms, 129, SbpOrder::Order2,
        SecondDerivConstruction::WideFullyCompatible, final_time, 1.0, cg);
    return std::log2(e1 / e2);
  };
  CHECK(std::abs(rate_at(0.02) - rate_at(0.01)) <= 0.5);
}

TEST_CASE("convergence CSV format is stable") {
  ConvergenceReport report;
  ConvergenceSeries series{SbpOrder::Order2,
                           SecondDerivConstruction::WideFullyCompatible,
                           {{33, 1.0 / 32, 1e-3, std::nan("")},
                            {65, 1.0 / 64, 2.5e-4, 2.0}}};
  report.series.push_back(series);
  std::ostringstream os;
  report.write_csv(os);
  const std::string text = os.str();
  CHECK(text.rfind("order,construction,n,dx,error,rate\n", 0) == 0);
  CHECK(text.find(",33,") != std::string::npos);
  CHECK(text.find(",65,") != std::string::npos);
  // first row of a series has no rate entry
  CHECK(text.find("1.0000000000e-03,\n") != std::string::npos);
  CHECK(series.mean_rate() == doctest::Approx(2.0));
}
