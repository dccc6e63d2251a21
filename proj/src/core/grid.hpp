#pragma once

#include <Eigen/Dense>

namespace fadiff {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Uniform discretization of [0, L] with n nodes, x_j = j*dx (0-based storage).
// Immutable after construction; shared read-only by all operators.
class Grid1D {
public:
  static Grid1D make(double length, int n);

  double length() const { return length_; }
  int size() const { return n_; }
  double dx() const { return dx_; }
  const Vector& nodes() const { return nodes_; }
  double node(int j) const { return nodes_[j]; }

  bool same_as(const Grid1D& other) const {
    return n_ == other.n_ && length_ == other.length_;
  }

private:
  Grid1D(double length, int n);

  double length_;
  int n_;
  double dx_;
  Vector nodes_;
};

// A grid function is a plain vector with one value per node. Shape checks
// against a grid are done at operator application sites.
using GridFunction = Vector;

bool all_finite(const Vector& v);

}  // namespace fadiff
