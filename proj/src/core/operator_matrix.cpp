#include "operator_matrix.hpp"

namespace fadiff {

OperatorMatrix::OperatorMatrix(SparseMatrix m) : sparse_(std::move(m)) {
  sparse_.makeCompressed();
  if (sparse_.rows() <= kDenseLimit) dense_ = Matrix(sparse_);
}

OperatorMatrix::OperatorMatrix(const Matrix& m) : sparse_(m.sparseView()) {
  sparse_.makeCompressed();
  if (m.rows() <= kDenseLimit) dense_ = m;
}

Vector OperatorMatrix::apply(const Vector& v) const { return sparse_ * v; }

OperatorMatrix TripletBuilder::build() const {
  SparseMatrix m(n_, n_);
  m.setFromTriplets(triplets_.begin(), triplets_.end());
  return OperatorMatrix(std::move(m));
}

}  // namespace fadiff
