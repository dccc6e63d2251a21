#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "grid.hpp"

namespace fadiff {

using SparseMatrix = Eigen::SparseMatrix<double>;

// Square operator stored sparse always, with a dense mirror for problems up
// to kDenseLimit nodes. apply() runs the banded sparse product; the dense
// mirror agrees with it to roundoff and feeds the eigenvalue certificates.
class OperatorMatrix {
public:
  static constexpr int kDenseLimit = 2048;

  OperatorMatrix() = default;
  explicit OperatorMatrix(SparseMatrix m);
  explicit OperatorMatrix(const Matrix& m);

  int rows() const { return static_cast<int>(sparse_.rows()); }

  Vector apply(const Vector& v) const;
  Vector apply_sparse(const Vector& v) const { return sparse_ * v; }
  Vector apply_dense(const Vector& v) const { return dense_ * v; }

  bool has_dense() const { return dense_.size() > 0; }
  const SparseMatrix& sparse() const { return sparse_; }

  // Dense copy regardless of size (test and certificate use).
  Matrix to_dense() const { return has_dense() ? dense_ : Matrix(sparse_); }

private:
  SparseMatrix sparse_;
  Matrix dense_;
};

// Convenience for assembling small stencil-based matrices.
class TripletBuilder {
public:
  explicit TripletBuilder(int n) : n_(n) {}
  void add(int i, int j, double v) {
    if (v != 0.0) triplets_.emplace_back(i, j, v);
  }
  OperatorMatrix build() const;

private:
  int n_;
  std::vector<Eigen::Triplet<double>> triplets_;
};

}  // namespace fadiff
