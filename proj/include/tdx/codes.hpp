#pragma once

#include <optional>

#include "tdx/fock.hpp"

// Logical fidelity of bosonic qubit encodings under the single-quadrature
// displacement-noise channel.  A qubit |theta, phi> = cos(theta/2)|0_L> +
// e^{i phi} sin(theta/2)|1_L> is pushed through the channel and scored either
// by state overlap (pure-state encodings) or by the noiseless-subsystem
// logical operators (QSP encoding of a cat state).

namespace tdx {

struct CatCode {
  double alpha;
};

/// Squeezed variant of the cat encoding; states are S(r)|cat>, which is
/// equivalent to the plain cat code seeing channel width sigma * e^r.
struct SqueezedCatCode {
  double alpha;
  double r;
};

struct FidelityOptions {
  int n_trunc = 0;      // 0: default_truncation()
  int quad_order = 41;  // Gauss-Hermite order for the noise mixture
};

double fidelity(double theta, double phi, double sigma, const CatCode& code,
                const FidelityOptions& opt = {});
double fidelity(double theta, double phi, double sigma,
                const SqueezedCatCode& code, const FidelityOptions& opt = {});

/// Squeezed-cat fidelity evaluated by explicitly constructing S(r)|cat> in an
/// enlarged Fock space and applying the channel at the unmodified sigma; an
/// independent route to the same quantity as the width-rescaled cat path.
double fidelity_squeezed_direct(double theta, double phi, double sigma,
                                const SqueezedCatCode& code,
                                const FidelityOptions& opt = {});

/// Uniform Bloch-sphere average of the fidelity, Gauss-Legendre in cos(theta)
/// times a uniform phi grid.
double average_fidelity(double sigma, const CatCode& code,
                        const FidelityOptions& opt = {}, int n_theta = 16,
                        int n_phi = 16);
double average_fidelity(double sigma, const SqueezedCatCode& code,
                        const FidelityOptions& opt = {}, int n_theta = 16,
                        int n_phi = 16);

/// Logical operators of the quadrature-sign/parity encoding in the truncated
/// number basis: x_m is sign(p), real symmetric with support only between
/// opposite-parity states; z_diag is the photon-number parity.
struct QspOperators {
  Eigen::MatrixXd x_m;
  Eigen::VectorXd z_diag;
  int n_trunc = 0;
};

QspOperators make_qsp_operators(int n_trunc);

/// Logical fidelity of a noisy cat-code qubit read out through the QSP
/// logical operators.
double qsp_fidelity(double theta, double phi, double sigma, double alpha,
                    const FidelityOptions& opt = {});

double qsp_average_fidelity(double sigma, double alpha,
                            const FidelityOptions& opt = {}, int n_theta = 16,
                            int n_phi = 16);

}  // namespace tdx
