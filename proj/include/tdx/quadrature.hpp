#pragma once

#include <Eigen/Dense>

namespace tdx {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// Gauss-Hermite rule: integrates f against exp(-x^2) on the real line
/// exactly for polynomials up to degree 2n-1.
QuadratureRule gauss_hermite(int n);

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

}  // namespace tdx
