#include "cg.hpp"

#include <cmath>

namespace fadiff {

CgResult cg_solve(const std::function<Vector(const Vector&)>& apply_s,
                  const Vector& b, const CgConfig& config, const Vector* x0,
                  const Vector* jacobi_diagonal) {
  const int n = static_cast<int>(b.size());
  const int max_iter = config.max_iter > 0 ? config.max_iter : 10 * n;
  const double b_norm = b.norm();

  CgResult result;
  if (b_norm == 0.0) {
    result.x = Vector::Zero(n);
    return result;
  }

  Vector x = x0 ? *x0 : Vector::Zero(n);
  Vector r = b - apply_s(x);
  const bool precondition = config.jacobi && jacobi_diagonal;
  Vector z = precondition ? Vector(r.cwiseQuotient(*jacobi_diagonal)) : r;
  Vector p = z;
  double rz = r.dot(z);

  int iter = 0;
  double rel = r.norm() / b_norm;
  while (rel > config.tol) {
    if (iter >= max_iter) throw CgDivergenceError(iter, rel);
    Vector sp = apply_s(p);
    const double alpha = rz / p.dot(sp);
    x += alpha * p;
    r -= alpha * sp;
    z = precondition ? Vector(r.cwiseQuotient(*jacobi_diagonal)) : r;
    const double rz_next = r.dot(z);
    p = z + (rz_next / rz) * p;
    rz = rz_next;
    ++iter;
    rel = r.norm() / b_norm;
  }

  result.x = std::move(x);
  result.iterations = iter;
  result.relative_residual = rel;
  return result;
}

}  // namespace fadiff
