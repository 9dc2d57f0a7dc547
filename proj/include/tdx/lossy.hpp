#pragma once

#include <Eigen/Dense>

#include "tdx/symplectic.hpp"

// Lossy beam-splitter dynamics: mode 0 decays at rate kappa into a vacuum
// bath while the two modes exchange excitations at rate g.  The two-pass
// transfer protocol (evolve tau/2, squeeze mode 0 by gamma, evolve tau/2) is
// tracked including the bath's temporal modes, and its performance is scored
// by input-referred added noise and a single-use quantum-capacity bound.
//
// Conventions: vacuum quadrature variance 1/2, capacities in base-2 logs
// (qubits per use).

namespace tdx {

struct LossySystemMatrix {
  QuadMatrix t;  // amplitude map of the two system modes (same for q and p)
  double g = 0.0;
  double kappa = 0.0;
  double time = 0.0;
};

/// Closed-form evolution of the system pair under coherent coupling g and
/// mode-0 loss kappa for duration t.  Underdamped branch only (kappa < 4g).
LossySystemMatrix lossy_bs(double g, double kappa, double t);

/// Embeds a pure-loss pair map into a four-mode canonical transform with two
/// explicit bath modes.  Rows/columns 0,1 are the system, 2,3 the bath; the
/// returned matrix is orthogonal (per-quadrature canonical form).  Throws
/// GainDetected when a singular value exceeds 1.
Eigen::Matrix4d dilate(const QuadMatrix& t_tilde);

struct ProtocolTransform {
  // Output quadratures of the two system modes against the six inputs
  // (system 0, system 1, first-pass bath x2, second-pass bath x2).
  Eigen::Matrix<double, 2, 6> tqq;
  Eigen::Matrix<double, 2, 6> tpp;
  double gamma = 1.0;
  double g = 0.0, kappa = 0.0, tau = 0.0;

  double commutation_residual() const;
};

/// Two lossy passes of duration tau/2 with a mode-0 gain gamma in between.
ProtocolTransform protocol(double g, double kappa, double tau, double gamma);

/// Single lossy pass of duration tau (no mid-protocol gain); the trailing
/// bath columns are zero.
ProtocolTransform single_pass(double g, double kappa, double tau);

/// Gain that cancels the q reflection at mode 1, -T22^2 / (T21 T12) of the
/// half-pass system matrix.
double impedance_gain(double g, double kappa, double tau);

struct NoiseReport {
  double n_q = 0.0;         // added quanta, q quadrature
  double n_p = 0.0;         // added quanta, p quadrature
  double nbar = 0.0;        // n_q + n_p (no input pre-amplification)
  double nbar_min = 0.0;    // 2*sqrt(n_q*n_p), optimal pre-amplification
  double gamma0_opt = 1.0;  // pre-amplification reaching nbar_min
  double eta_d_opt = 0.0;   // feedforward strength used (write-in only)
  double tau_c = 0.0;       // effective channel transmissivity
  double n_c = 0.0;         // effective channel noise number
  double q_capacity = 0.0;  // single-use capacity bound, qubits/use
};

enum class TransferScheme { Interference, Standard };

/// One-way transfer mode 0 -> mode 1 (memory write-in), finishing with a
/// homodyne measurement of the mode-0 p output and a proportional
/// displacement of mode 1.  The feedforward strength minimizing the p-added
/// noise is solved in closed form.
NoiseReport writein_metrics(double g, double kappa, double tau,
                            TransferScheme scheme);

/// One-way transfer mode 1 -> mode 0 (memory readout): gain chosen to cancel
/// the p reflection at mode 0, infinitely squeezed vacuum injected into the
/// mode-0 q input.
NoiseReport readout_metrics(double g, double kappa, double tau);

/// Single-use Gaussian capacity bound from transmissivity and noise number.
double capacity_q(double tau_c, double n_c);

}  // namespace tdx
