#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <random>

#include "core/sbp.hpp"

using namespace fadiff;

namespace {

Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int j = 0; j < n; ++j) v[j] = normal(rng);
  return v;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("first derivative: exactness and Q + Q^T = B") {
  for (SbpOrder order : {SbpOrder::Order2, SbpOrder::Order4}) {
    for (int n : {17, 33, 65}) {
      CAPTURE(static_cast<int>(order));
      CAPTURE(n);
      Grid1D grid = Grid1D::make(1.0, n);
      FirstDerivOperator d = build_first_derivative(grid, order);

      CHECK(d.apply(Vector::Ones(n)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((d.apply(grid.nodes()) - Vector::Ones(n)).cwiseAbs().maxCoeff() <=
            1e-10);

      Matrix q = d.q().to_dense();
      Matrix b = Matrix::Zero(n, n);
      b(0, 0) = -1.0;
      b(n - 1, n - 1) = 1.0;
      CHECK(max_abs(q + q.transpose() - b) <= 1e-13);

      CHECK(d.h().minCoeff() > 0.0);
      CHECK(std::abs(d.h().sum() - grid.length()) <= 1e-12 * grid.length());
    }
  }
}

TEST_CASE("first derivative rejects grids below the closure minimum") {
  Grid1D tiny = Grid1D::make(1.0, 5);
  CHECK_NOTHROW(build_first_derivative(tiny, SbpOrder::Order2));
  CHECK_THROWS_WITH_AS(build_first_derivative(tiny, SbpOrder::Order4),
                       doctest::Contains("at least 8"), std::invalid_argument);
}

TEST_CASE("summation-by-parts identity on random vector pairs") {
  std::mt19937_64 rng(7);
  for (SbpOrder order : {SbpOrder::Order2, SbpOrder::Order4}) {
    Grid1D grid = Grid1D::make(2.0, 48);
    FirstDerivOperator d = build_first_derivative(grid, order);
    const int n = grid.size();
    for (int trial = 0; trial < 100; ++trial) {
      Vector u = random_vector(n, rng);
      Vector v = random_vector(n, rng);
      const double lhs =
          d.h_inner(u, d.apply(v)) + d.h_inner(d.apply(u), v);
      const double rhs = u[n - 1] * v[n - 1] - u[0] * v[0];
      CHECK(std::abs(lhs - rhs) <= 1e-11 * u.norm() * v.norm());
    }
  }
}

TEST_CASE("second derivative: null space and quadratic interior") {
  Grid1D grid = Grid1D::make(1.0, 33);
  const int n = grid.size();
  const Vector kappa = Vector::Ones(n);
  for (SbpOrder order : {SbpOrder::Order2, SbpOrder::Order4}) {
    for (auto construction : {SecondDerivConstruction::WideFullyCompatible,
                              SecondDerivConstruction::NarrowCompatible}) {
      FirstDerivOperator first = build_first_derivative(grid, order);
      SecondDerivOperator second =
          build_second_derivative(first, kappa, construction);

      CHECK(second.apply(Vector::Ones(n)).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(second.apply(grid.nodes()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
}

TEST_CASE("order2 narrow reproduces constant curvature in the interior") {
  Grid1D grid = Grid1D::make(1.0, 33);
  const int n = grid.size();
  FirstDerivOperator first = build_first_derivative(grid, SbpOrder::Order2);
  SecondDerivOperator second = build_second_derivative(
      first, Vector::Ones(n), SecondDerivConstruction::NarrowCompatible);
  const Vector u = grid.nodes().array().square();
  const Vector d2 = second.apply(u);
  for (int j = 1; j + 1 < n; ++j) {
    CHECK(d2[j] == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("wide construction has exactly zero remainder") {
  Grid1D grid = Grid1D::make(1.0, 33);
  const int n = grid.size();
  std::mt19937_64 rng(3);
  Vector kappa = random_vector(n, rng).cwiseAbs();
  for (SbpOrder order : {SbpOrder::Order2, SbpOrder::Order4}) {
    FirstDerivOperator first = build_first_derivative(grid, order);
    SecondDerivOperator second = build_second_derivative(
        first, kappa, SecondDerivConstruction::WideFullyCompatible);
    Matrix d = first.d().to_dense();
    Matrix expected = d.transpose() *
                      kappa.cwiseProduct(first.h()).asDiagonal() * d;
    CHECK(max_abs(second.m().to_dense() - expected) <= 1e-12);
  }
}

TEST_CASE("M is symmetric PSD for every construction") {
  Grid1D grid = Grid1D::make(1.0, 33);
  const int n = grid.size();
  std::mt19937_64 rng(11);
  for (SbpOrder order : {SbpOrder::Order2, SbpOrder::Order4}) {
    for (auto construction : {SecondDerivConstruction::WideFullyCompatible,
                              SecondDerivConstruction::NarrowCompatible}) {
      FirstDerivOperator first = build_first_derivative(grid, order);
      SecondDerivOperator second =
          build_second_derivative(first, Vector::Ones(n), construction);
      Matrix m = second.m().to_dense();
      CHECK(max_abs(m - m.transpose()) <= 1e-13);

      // dense symmetric eigensolve oracle
      Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.transpose()),
                                               Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() >= -1e-10 * max_abs(m));

      for (int trial = 0; trial < 100; ++trial) {
        Vector u = random_vector(n, rng);
        CHECK(u.dot(m * u) >= -1e-10 * max_abs(m) * u.squaredNorm());
      }
    }
  }
}

TEST_CASE("variable-coefficient narrow order2 is fully compatible") {
  Grid1D grid = Grid1D::make(1.0, 49);
  const int n = grid.size();
  Vector kappa(n);
  for (int j = 0; j < n; ++j) {
    kappa[j] = 1.0 + 0.5 * std::sin(2.0 * std::numbers::pi * grid.node(j));
  }
  FirstDerivOperator first = build_first_derivative(grid, SbpOrder::Order2);
  SecondDerivOperator second = build_second_derivative(
      first, kappa, SecondDerivConstruction::NarrowCompatible);
  Matrix d = first.d().to_dense();
  Matrix r = second.m().to_dense() -
             d.transpose() * kappa.cwiseProduct(first.h()).asDiagonal() * d;
  CHECK(max_abs(r - r.transpose()) <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (r + r.transpose()),
                                           Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() >=
        -1e-10 * std::max(1.0, max_abs(second.m().to_dense())));
}

TEST_CASE("unsupported narrow combinations and bad kappa are rejected") {
  Grid1D grid = Grid1D::make(1.0, 33);
  const int n = grid.size();
  FirstDerivOperator first4 = build_first_derivative(grid, SbpOrder::Order4);
  Vector variable = Vector::LinSpaced(n, 1.0, 2.0);
  CHECK_THROWS_WITH_AS(
      build_second_derivative(first4, variable,
                              SecondDerivConstruction::NarrowCompatible),
      doctest::Contains("constant kappa"), std::invalid_argument);

  Vector negative = Vector::Ones(n);
  negative[5] = -0.1;
  CHECK_THROWS_WITH_AS(
      build_second_derivative(first4, negative,
                              SecondDerivConstruction::WideFullyCompatible),
      doctest::Contains("nonnegative"), std::invalid_argument);
}

TEST_CASE("verify_operator_set passes for valid pairs and reports residuals") {
  for (SbpOrder order : {SbpOrder::Order2, SbpOrder::Order4}) {
    Grid1D grid = Grid1D::make(1.0, 33);
    FirstDerivOperator first = build_first_derivative(grid, order);
    SecondDerivOperator second = build_second_derivative(
        first, Vector::Ones(grid.size()),
        SecondDerivConstruction::WideFullyCompatible);
    PropertyReport report = verify_operator_set(first, second);
    CAPTURE(static_cast<int>(order));
    for (const auto& check : report.checks) {
      CAPTURE(check.name);
      CHECK(check.pass);
    }
  }
}

TEST_CASE("verify_operator_set rejects mismatched grids") {
  Grid1D g1 = Grid1D::make(1.0, 33);
  Grid1D g2 = Grid1D::make(1.0, 17);
  FirstDerivOperator first = build_first_derivative(g1, SbpOrder::Order2);
  FirstDerivOperator other = build_first_derivative(g2, SbpOrder::Order2);
  SecondDerivOperator second = build_second_derivative(
      other, Vector::Ones(17), SecondDerivConstruction::WideFullyCompatible);
  CHECK_THROWS_AS(verify_operator_set(first, second), std::invalid_argument);
}

TEST_CASE("an injected Q defect is detected at its magnitude") {
  // Perturb one D_x entry by 1e-6/dx so Q picks up a 1e-6-scale defect, and
  // check the certification flags it with a residual of that size.
  Grid1D grid = Grid1D::make(1.0, 17);
  const int n = grid.size();
  FirstDerivOperator first = build_first_derivative(grid, SbpOrder::Order2);
  Matrix q = first.q().to_dense();
  q(3, 4) += 1e-6;
  Matrix b = Matrix::Zero(n, n);
  b(0, 0) = -1.0;
  b(n - 1, n - 1) = 1.0;
  const double residual = max_abs(q + q.transpose() - b);
  CHECK(residual == doctest::Approx(1e-6).epsilon(1e-3));
  CHECK(residual > 1e-13);
}

TEST_CASE("interior truncation error scales at the interior order") {
  // Slope of max interior error on sin(pi x) under refinement.
  auto interior_error = [](SbpOrder order, int n) {
    Grid1D grid = Grid1D::make(1.0, n);
    FirstDerivOperator d = build_first_derivative(grid, order);
    Vector u(n), du(n);
    for (int j = 0; j < n; ++j) {
      u[j] = std::sin(std::numbers::pi * grid.node(j));
      du[j] = std::numbers::pi * std::cos(std::numbers::pi * grid.node(j));
    }
    Vector err = d.apply(u) - du;
    const int w = 8;
    double m = 0.0;
    for (int j = w; j < n - w; ++j) m = std::max(m, std::abs(err[j]));
    return m;
  };
  for (auto [order, expected] :
       {std::pair{SbpOrder::Order2, 2.0}, std::pair{SbpOrder::Order4, 4.0}}) {
    const double e1 = interior_error(order, 65);
    const double e2 = interior_error(order, 129);
    const double slope = std::log2(e1 / e2);
    CHECK(slope == doctest::Approx(expected).epsilon(0.3 / expected));
  }
}

TEST_CASE("dense and sparse actions agree") {
  Grid1D grid = Grid1D::make(1.0, 129);
  std::mt19937_64 rng(5);
  FirstDerivOperator first = build_first_derivative(grid, SbpOrder::Order4);
  SecondDerivOperator second = build_second_derivative(
      first, Vector::Ones(grid.size()),
      SecondDerivConstruction::NarrowCompatible);
  REQUIRE(second.dxx().has_dense());
  for (int trial = 0; trial < 10; ++trial) {
    Vector u = random_vector(grid.size(), rng);
    Vector dense = second.dxx().apply_dense(u);
    Vector sparse = second.dxx().apply_sparse(u);
    CHECK((dense - sparse).cwiseAbs().maxCoeff() <=
          1e-13 * dense.cwiseAbs().maxCoeff());
  }
}
