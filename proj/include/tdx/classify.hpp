#pragma once

#include <string>

#include "tdx/two_mode.hpp"

// Local-invariant taxonomy of two-mode transducers.  A transform is labelled
// [[n_T, n_R]] by the number of quadratures it transmits (rank of the 1->2
// block) and reflects (rank of the 2->2 block); the transmission determinant
// chi separates the three [[2,2]] flavours.  Both quantities are unchanged by
// any single-mode symplectic dressing of the two ports.

namespace tdx {

enum class TwoTwoSubclass { None, Tms, Bs, SwappedTms };

struct Classification {
  int n_transmitted = 0;
  int n_reflected = 0;
  double chi = 0.0;
  TwoTwoSubclass subclass = TwoTwoSubclass::None;
  /// Smallest gap between any singular value of the four sub-blocks and the
  /// rank threshold; small margins flag an ill-conditioned classification.
  double margin = 0.0;
  /// Set when a [[2,2]] input sits numerically on a chi boundary (0 or 1).
  bool boundary_warning = false;

  bool is(int nt, int nr) const {
    return n_transmitted == nt && n_reflected == nr;
  }

  std::string canonical_label() const;
};

/// Number of singular values of m above tol * max(largest singular value, 1).
int rank2(const QuadMatrix& m, double tol = 1e-9);

/// Classify a symplectic two-mode transform.  Cross-validates the paired-rank
/// and determinant-sum constraints implied by commutation preservation and
/// throws NotSymplectic when they fail beyond tolerance.
Classification classify(const TwoModeTransform& t, double tol = 1e-9);

}  // namespace tdx
