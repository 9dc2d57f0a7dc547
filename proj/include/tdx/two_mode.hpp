#pragma once

#include <Eigen/Dense>

#include "tdx/symplectic.hpp"

// Two-mode quadrature transformations in the ordering (q1, p1, q2, p2).
// The 2x2 sub-block T(i, j) maps input quadratures of mode j to output
// quadratures of mode i (modes are indexed 0 and 1).

namespace tdx {

inline Eigen::Matrix4d omega4() {
  Eigen::Matrix4d o = Eigen::Matrix4d::Zero();
  o.topLeftCorner<2, 2>() = omega();
  o.bottomRightCorner<2, 2>() = omega();
  return o;
}

class TwoModeTransform {
 public:
  TwoModeTransform() : m_(Eigen::Matrix4d::Identity()) {}
  explicit TwoModeTransform(const Eigen::Matrix4d& m) : m_(m) {}

  static TwoModeTransform from_blocks(const QuadMatrix& t00, const QuadMatrix& t01,
                                      const QuadMatrix& t10, const QuadMatrix& t11);

  /// Block-diagonal transform acting locally on each mode.
  static TwoModeTransform local(const QuadMatrix& mode0, const QuadMatrix& mode1);

  const Eigen::Matrix4d& matrix() const { return m_; }

  QuadMatrix block(int i, int j) const {
    return m_.block<2, 2>(2 * i, 2 * j);
  }

  double symplectic_residual() const {
    return (m_ * omega4() * m_.transpose() - omega4()).cwiseAbs().maxCoeff();
  }

  bool is_symplectic(double tol = 1e-12) const {
    return symplectic_residual() < tol;
  }

  /// Throws NotSymplectic when the commutation residual exceeds tol.
  const TwoModeTransform& require_symplectic(double tol = 1e-9) const;

  TwoModeTransform operator*(const TwoModeTransform& rhs) const {
    return TwoModeTransform(m_ * rhs.m_);
  }

 private:
  Eigen::Matrix4d m_;
};

// Gate constructors.  All returned matrices are symplectic by construction.

TwoModeTransform identity_gate();
TwoModeTransform swap_gate();

/// Mode-mixing rotation: x1 -> cos(theta) x1 + sin(theta) x2 for both
/// quadratures; a SWAP up to signs at theta = pi/2.
TwoModeTransform beam_splitter(double theta);

/// Two-mode squeezer of strength r (correlated amplification).
TwoModeTransform two_mode_squeezer(double r);

/// SWAP composed with a two-mode squeezer.
TwoModeTransform swapped_two_mode_squeezer(double r);

/// QND coupling writing q1 into q2 (strength eta): q2' = -eta q1 + q2,
/// p1' = p1 + eta p2.
TwoModeTransform qnd_gate_q(double eta);

/// QND coupling writing q2 into q1: q1' = q1 + eta q2, p2' = -eta p1 + p2.
TwoModeTransform qnd_gate_p(double eta);

/// Swapped QND gate: SWAP followed by a residual single-quadrature coupling.
/// q1' = -eta q1 + q2, p1' = p2, q2' = q1, p2' = p1 + eta p2.
TwoModeTransform swapped_qnd(double eta);

/// Amplifier G(gamma) applied to mode 0 only.
TwoModeTransform amplify_mode0(double gamma);

/// Equal rotation applied to both modes.
TwoModeTransform rotate_both(double theta);

}  // namespace tdx
