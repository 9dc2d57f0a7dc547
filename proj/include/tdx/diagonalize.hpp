#pragma once

#include <array>
#include <string>

#include "tdx/classify.hpp"
#include "tdx/two_mode.hpp"

// Reduction of a two-mode transform to quadrature-diagonal form by local
// (single-mode symplectic) operations, T_ij -> L_out_i T_ij L_in_j, and
// identification of the equivalent canonical gate.  The constrained variant
// restricts mode-1 locals to rotations (no squeezing available on that port)
// and closes the q sector instead of fully diagonalizing.

namespace tdx {

enum class CanonicalKind { Identity, Qnd, Tms, Bs, SwappedTms, SwappedQnd, Swap };

struct CanonicalGate {
  CanonicalKind kind = CanonicalKind::Identity;
  double parameter = 0.0;  // eta, r or theta; 0 for Identity / SWAP

  std::string name() const;
  /// The gate's quadrature matrix (canonical form of its class).
  TwoModeTransform matrix() const;
};

struct DiagonalForm {
  std::array<QuadMatrix, 2> l_in;   // applied before the transform, per mode
  std::array<QuadMatrix, 2> l_out;  // applied after
  Eigen::Matrix2d lambda_q;         // lambda_q(i, j): q amplitude mode j -> i
  Eigen::Matrix2d lambda_p;
  CanonicalGate canonical;
  TwoModeTransform diagonal;        // local(l_out) * T * local(l_in)
  bool near_degenerate = false;     // classification margin was thin
};

enum class Transmitted { Q, P };

struct ConstrainedForm {
  std::array<QuadMatrix, 2> l_in;
  std::array<QuadMatrix, 2> l_out;  // l_in[1], l_out[1] are proper rotations
  double xi = 1.0;                  // leading entry of the triangular factor
  QuadMatrix t_qq;                  // closed q-sector scattering matrix
  TwoModeTransform shaped;          // local(l_out) * T * local(l_in)
  CanonicalGate canonical;
  Classification cls;
  bool near_degenerate = false;
};

DiagonalForm diagonalize(const TwoModeTransform& t,
                         Transmitted prefer = Transmitted::Q,
                         double tol = 1e-9);

ConstrainedForm diagonalize_constrained(const TwoModeTransform& t,
                                        Transmitted prefer = Transmitted::Q,
                                        double tol = 1e-9);

CanonicalGate canonical_name(const TwoModeTransform& t, double tol = 1e-9);

}  // namespace tdx
