#pragma once

#include <memory>

#include "grid.hpp"
#include "operator_matrix.hpp"
#include "property_report.hpp"

namespace fadiff {

enum class SbpOrder { Order2, Order4 };

enum class SecondDerivConstruction { WideFullyCompatible, NarrowCompatible };

// Nodes occupied by the one-sided boundary closure of D_x.
int boundary_closure_width(SbpOrder order);
int minimum_grid_size(SbpOrder order);

const char* to_string(SbpOrder order);
const char* to_string(SecondDerivConstruction c);

// First-derivative SBP operator D_x = H^{-1} Q with diagonal norm H and
// Q + Q^T = B = diag([-1, 0, ..., 0, 1]).
class FirstDerivOperator {
public:
  const Grid1D& grid() const { return grid_; }
  SbpOrder order() const { return order_; }

  // Diagonal of the norm matrix H (already scaled by dx).
  const Vector& h() const { return h_; }
  const OperatorMatrix& d() const { return d_; }
  const OperatorMatrix& q() const { return q_; }

  Vector apply(const Vector& u) const { return d_.apply(u); }

  double h_inner(const Vector& u, const Vector& v) const {
    return u.dot(h_.cwiseProduct(v));
  }
  double h_norm(const Vector& u) const { return std::sqrt(h_inner(u, u)); }

private:
  friend FirstDerivOperator build_first_derivative(const Grid1D&, SbpOrder);
  FirstDerivOperator(Grid1D grid, SbpOrder order, Vector h, OperatorMatrix d,
                     OperatorMatrix q)
      : grid_(std::move(grid)), order_(order), h_(std::move(h)),
        d_(std::move(d)), q_(std::move(q)) {}

  Grid1D grid_;
  SbpOrder order_;
  Vector h_;
  OperatorMatrix d_;
  OperatorMatrix q_;
};

// Second-derivative SBP operator D_xx = H^{-1}(-M + B K D_x) with M
// symmetric positive semi-definite and fully compatible,
// M = D_x^T (K H) D_x + R, R symmetric PSD.
class SecondDerivOperator {
public:
  const Grid1D& grid() const { return grid_; }
  SbpOrder order() const { return order_; }
  SecondDerivConstruction construction() const { return construction_; }
  const Vector& kappa() const { return kappa_; }
  const OperatorMatrix& m() const { return m_; }
  const OperatorMatrix& dxx() const { return dxx_; }

  Vector apply(const Vector& u) const { return dxx_.apply(u); }
  Vector apply_m(const Vector& u) const { return m_.apply(u); }

private:
  friend SecondDerivOperator build_second_derivative(
      const FirstDerivOperator&, const Vector&, SecondDerivConstruction);
  SecondDerivOperator(Grid1D grid, SbpOrder order,
                      SecondDerivConstruction construction, Vector kappa,
                      OperatorMatrix m, OperatorMatrix dxx)
      : grid_(std::move(grid)), order_(order), construction_(construction),
        kappa_(std::move(kappa)), m_(std::move(m)), dxx_(std::move(dxx)) {}

  Grid1D grid_;
  SbpOrder order_;
  SecondDerivConstruction construction_;
  Vector kappa_;
  OperatorMatrix m_;
  OperatorMatrix dxx_;
};

FirstDerivOperator build_first_derivative(const Grid1D& grid, SbpOrder order);

SecondDerivOperator build_second_derivative(const FirstDerivOperator& first,
                                            const Vector& kappa,
                                            SecondDerivConstruction construction);

// Certify every algebraic property the stability argument relies on.
// Both operators must live on the same grid.
PropertyReport verify_operator_set(const FirstDerivOperator& first,
                                   const SecondDerivOperator& second);

}  // namespace fadiff
