#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "grid.hpp"

namespace fadiff {

struct CgConfig {
  double tol = 1e-10;   // relative residual target, ||S x - b|| / ||b||
  int max_iter = 0;     // 0 means 10 * n
  bool jacobi = false;  // diagonal preconditioning
};

struct CgResult {
  Vector x;
  int iterations = 0;
  double relative_residual = 0.0;
};

class CgDivergenceError : public std::runtime_error {
public:
  CgDivergenceError(int iterations, double residual)
      : std::runtime_error(
            "conjugate gradient failed to converge after " +
            std::to_string(iterations) +
            " iterations, relative residual " + std::to_string(residual)),
        iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

// Conjugate gradient for an SPD operator given by its action. Deterministic
// for identical inputs; warm start through x0.
CgResult cg_solve(const std::function<Vector(const Vector&)>& apply_s,
                  const Vector& b, const CgConfig& config,
                  const Vector* x0 = nullptr,
                  const Vector* jacobi_diagonal = nullptr);

}  // namespace fadiff
