#include "tdx/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace tdx {

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights come
// from the first components of the eigenvectors.
QuadratureRule from_jacobi(const Eigen::VectorXd& off_diagonal, double moment0) {
  const int n = static_cast<int>(off_diagonal.size()) + 1;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    jacobi(k, k + 1) = off_diagonal(k);
    jacobi(k + 1, k) = off_diagonal(k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  QuadratureRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    rule.weights(k) = moment0 * v0 * v0;
  }
  return rule;
}

}  // namespace

QuadratureRule gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off(k - 1) = std::sqrt(k / 2.0);
  return from_jacobi(off, std::sqrt(M_PI));
}

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) {
    off(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  }
  return from_jacobi(off, 2.0);
}

}  // namespace tdx
