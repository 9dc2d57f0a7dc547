#pragma once

#include <Eigen/Dense>

#include "tdx/errors.hpp"

// Single-mode quadrature algebra.  A mode is described by the pair (q, p)
// with commutator [q, p] = i; a linear transformation acts on that pair by a
// real 2x2 matrix.  Physical (unitary) single-mode operations are exactly the
// symplectic ones, M * Omega * M^T = Omega.

namespace tdx {

using QuadMatrix = Eigen::Matrix2d;

inline QuadMatrix omega() {
  QuadMatrix o;
  o << 0.0, 1.0, -1.0, 0.0;
  return o;
}

inline QuadMatrix pauli_z() {
  QuadMatrix z;
  z << 1.0, 0.0, 0.0, -1.0;
  return z;
}

/// Parity: flips the sign of both quadratures.
inline QuadMatrix parity() { return -QuadMatrix::Identity(); }

/// Phase-space rotation by theta, [[cos, sin], [-sin, cos]].
QuadMatrix rotation(double theta);

/// Squeezer diag(e^r, e^-r).
QuadMatrix squeeze(double r);

/// Phase-sensitive amplifier diag(gamma, 1/gamma); gamma is any nonzero real
/// (negative values fold in a parity flip).  Throws RankDeficient for 0.
QuadMatrix amplify(double gamma);

/// Max-abs residual of M*Omega*M^T - Omega.
double symplectic_residual(const QuadMatrix& m);

bool is_symplectic(const QuadMatrix& m, double tol = 1e-12);

/// SVD constrained to proper rotations: m = v * diag(d) * w with
/// det v = det w = +1.  Reflections from the standard SVD are absorbed into
/// the sign of d(1), so d(0) >= 0 >= |d(1)| ordering is NOT guaranteed --
/// |d| are the singular values, largest first.
struct RotSvd {
  QuadMatrix v;
  Eigen::Vector2d d;
  QuadMatrix w;

  QuadMatrix reconstruct() const { return v * d.asDiagonal() * w; }
};

RotSvd rot_svd(const QuadMatrix& m);

/// Same decomposition with the diagonal slots interchanged (conjugation by
/// Omega), so the dominant singular value sits in the second slot.
RotSvd rot_svd_swapped(const QuadMatrix& m);

enum class Side { Left, Right };

/// Rescales a full-rank matrix into a symplectic one:
/// sqrt(det m) * m^-1 for det > 0, and sqrt(|det m|) * m^-1 * Z (or Z * m^-1,
/// by `side`) for det < 0.  Throws RankDeficient on singular input.
QuadMatrix symplectic_from_fullrank(const QuadMatrix& m, Side side = Side::Right);

/// QL split of a symplectic matrix: u = rotation * lower_triangular, with the
/// (0,0) entry of the triangular factor (xi) normalized positive.
struct QlDecomposition {
  QuadMatrix rotation;
  QuadMatrix lower;
  double xi;
};

QlDecomposition ql_decompose(const QuadMatrix& u);

}  // namespace tdx
