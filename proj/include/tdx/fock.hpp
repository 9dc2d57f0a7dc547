#pragma once

#include <Eigen/Dense>
#include <utility>

#include "tdx/errors.hpp"

// Truncated Fock-space machinery for single-quadrature displacement noise.
//
// Phase convention: number states carry the phase that makes their
// momentum-space wavefunctions the real Hermite functions.  In this frame
// cat states along the p axis have real amplitudes, the displacement
// generator is real skew-symmetric (so displacements are real orthogonal
// matrices), and the sign-of-p logical operator is real symmetric.

namespace tdx {

struct FockVector {
  Eigen::VectorXd amp;          // unit norm after construction
  double norm_deficit = 0.0;    // truncation weight lost before renormalizing
};

/// ceil(alpha^2 + 8 alpha + 16): truncation adequate for cat states of lobe
/// amplitude alpha.
int required_truncation(double alpha);

/// Default truncation (60), overridable via the TDX_FOCK_TRUNCATION
/// environment variable.
int default_truncation();

/// Cat-code logical basis: |0/1_L> = (|i alpha> +- |-i alpha>) / N_pm.
/// |0_L> is supported on even number states, |1_L> on odd ones.
std::pair<FockVector, FockVector> cat_basis(double alpha, int n_trunc);

class FockWorkspace {
 public:
  explicit FockWorkspace(int n_trunc);

  int n_trunc() const { return n_; }

  /// Orthogonal matrix shifting the p quadrature by `p`.
  Eigen::MatrixXd displacement(double p) const;

  /// Matrix of the squeeze S(r) (q -> e^r q); states encoded through it see
  /// the channel width rescaled sigma -> sigma * e^r.
  Eigen::MatrixXd squeezer(double r) const;

  const Eigen::MatrixXd& generator() const { return gen_; }

 private:
  int n_;
  Eigen::MatrixXd gen_;  // displacement(p) = exp(p * gen_)
};

struct DisplacementNoiseChannel {
  double sigma = 0.0;
  int quad_order = 41;
};

/// Gaussian mixture of p displacements applied to a density operator.
/// Trace preserving; sigma = 0 acts as the identity.
Eigen::MatrixXcd apply_channel(const Eigen::MatrixXcd& rho,
                               const DisplacementNoiseChannel& ch,
                               const FockWorkspace& ws);

/// Convenience overload for a pure input state.
Eigen::MatrixXcd apply_channel(const FockVector& psi,
                               const DisplacementNoiseChannel& ch,
                               const FockWorkspace& ws);

}  // namespace tdx
