#include "grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fadiff {

Grid1D::Grid1D(double length, int n)
    : length_(length), n_(n), dx_(length / (n - 1)), nodes_(n) {
  for (int j = 0; j < n; ++j) nodes_[j] = j * dx_;
  // last node lands on L exactly
  nodes_[n - 1] = length;
}

Grid1D Grid1D::make(double length, int n) {
  if (!(length > 0.0)) {
    throw std::invalid_argument("Grid1D: domain length must be positive, got " +
                                std::to_string(length));
  }
  if (n < 2) {
    throw std::invalid_argument("Grid1D: need at least 2 nodes, got " +
                                std::to_string(n));
  }
  return Grid1D(length, n);
}

bool all_finite(const Vector& v) {
  for (int j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j])) return false;
  }
  return true;
}

}  // namespace fadiff
