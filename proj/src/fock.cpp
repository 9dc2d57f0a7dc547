#include "tdx/fock.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>

#include "tdx/quadrature.hpp"

namespace tdx {

int required_truncation(double alpha) {
  return static_cast<int>(std::ceil(alpha * alpha + 8.0 * alpha + 16.0));
}

int default_truncation() {
  if (const char* env = std::getenv("TDX_FOCK_TRUNCATION")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 60;
}

std::pair<FockVector, FockVector> cat_basis(double alpha, int n_trunc) {
  if (!(alpha > 0.0)) throw Error("cat_basis: alpha must be positive");
  const int needed = required_truncation(alpha);
  if (n_trunc < needed) {
    throw TruncationTooSmall("cat_basis: truncation too small for this alpha",
                             needed);
  }

  // Coherent amplitudes in log space; the +-i alpha pair differs by (-1)^n.
  Eigen::VectorXd coh(n_trunc);
  for (int n = 0; n < n_trunc; ++n) {
    coh(n) = std::exp(-0.5 * alpha * alpha + n * std::log(alpha) -
                      0.5 * std::lgamma(n + 1.0));
  }
  FockVector even, odd;
  even.amp = Eigen::VectorXd::Zero(n_trunc);
  odd.amp = Eigen::VectorXd::Zero(n_trunc);
  for (int n = 0; n < n_trunc; ++n) {
    if (n % 2 == 0) {
      even.amp(n) = 2.0 * coh(n);
    } else {
      odd.amp(n) = -2.0 * coh(n);
    }
  }

  const double norm_even_exact = 2.0 * (1.0 + std::exp(-2.0 * alpha * alpha));
  const double norm_odd_exact = 2.0 * (1.0 - std::exp(-2.0 * alpha * alpha));
  even.norm_deficit =
      std::abs(1.0 - even.amp.squaredNorm() / norm_even_exact);
  odd.norm_deficit = std::abs(1.0 - odd.amp.squaredNorm() / norm_odd_exact);
  if (even.norm_deficit > 1e-6 || odd.norm_deficit > 1e-6) {
    throw TruncationTooSmall("cat_basis: truncation leakage above 1e-6",
                             needed + n_trunc);
  }
  even.amp.normalize();
  odd.amp.normalize();
  return {even, odd};
}

FockWorkspace::FockWorkspace(int n_trunc) : n_(n_trunc) {
  if (n_trunc < 2) throw Error("FockWorkspace: truncation must be >= 2");
  gen_ = Eigen::MatrixXd::Zero(n_, n_);
  for (int n = 1; n < n_; ++n) {
    const double c = std::sqrt(n / 2.0);
    gen_(n - 1, n) = c;
    gen_(n, n - 1) = -c;
  }
}

Eigen::MatrixXd FockWorkspace::displacement(double p) const {
  Eigen::MatrixXd op = (p * gen_).exp();
  const double residual =
      (op.transpose() * op - Eigen::MatrixXd::Identity(n_, n_))
          .cwiseAbs()
          .maxCoeff();
  if (residual > 1e-10) {
    throw std::logic_error("FockWorkspace::displacement: exponential lost "
                           "orthogonality");
  }
  return op;
}

Eigen::MatrixXd FockWorkspace::squeezer(double r) const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_, n_);
  for (int n = 1; n < n_; ++n) a(n - 1, n) = std::sqrt(double(n));
  const Eigen::MatrixXd a2 = a * a;
  return (0.5 * r * (a2 - a2.transpose())).exp();
}

Eigen::MatrixXcd apply_channel(const Eigen::MatrixXcd& rho,
                               const DisplacementNoiseChannel& ch,
                               const FockWorkspace& ws) {
  if (ch.sigma < 0.0) throw Error("apply_channel: sigma must be >= 0");
  if (ch.sigma == 0.0) return rho;
  const QuadratureRule rule = gauss_hermite(ch.quad_order);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  const double norm = 1.0 / std::sqrt(M_PI);
  for (int i = 0; i < rule.nodes.size(); ++i) {
    const Eigen::MatrixXd op = ws.displacement(ch.sigma * rule.nodes(i));
    out += (norm * rule.weights(i)) * (op * rho * op.transpose());
  }
  return out;
}

Eigen::MatrixXcd apply_channel(const FockVector& psi,
                               const DisplacementNoiseChannel& ch,
                               const FockWorkspace& ws) {
  const Eigen::VectorXcd v = psi.amp.cast<std::complex<double>>();
  return apply_channel(v * v.adjoint(), ch, ws);
}

}  // namespace tdx
