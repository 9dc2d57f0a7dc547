#pragma once

#include <optional>

#include "tdx/diagonalize.hpp"

// Two-pass interference correction: run two imperfect transducers in
// sequence with a phase-sensitive amplification G(gamma) on mode 0 in
// between, choosing gamma so the two q-reflection pathways at mode 1 cancel.
// The composite then reflects at most one quadrature and a single finishing
// resource (injected squeezing or homodyne plus feedforward on mode 0)
// completes the one-way transfer.

namespace tdx {

enum class Direction { OneToTwo, TwoToOne };

struct FinishingStep {
  enum class Kind { InjectSqueezing, HomodyneFeedforward };
  Kind kind = Kind::HomodyneFeedforward;
  double squeeze_r = 0.0;      // squeezing path
  double eta_d = 0.0;          // feedforward strength
  double epsilon = 0.0;        // detection inefficiency
  double residual_sigma = 0.0; // std. dev. of leftover p displacement noise
};

struct CorrectionPlan {
  ConstrainedForm pass_i;
  ConstrainedForm pass_iii;
  double gamma = 1.0;
  bool already_matched = false;  // trivial plan, no mid-pass gain applied
  TwoModeTransform composite;
  Classification resulting_class;
  /// Strength of the residual single-quadrature coupling (nonzero singular
  /// value of the composite 1->1 reflection block; 0 for a clean SWAP).
  double residual_eta = 0.0;
  Direction direction = Direction::OneToTwo;
  FinishingStep finishing;  // kind chosen by direction, ideal resources
};

/// Gain cancelling the q reflection at mode 1 of the concatenation
/// (pass III) o G(gamma) o (pass I), from the two closed q-sector matrices.
/// Throws ZeroTransmissionPath when a transmission amplitude in the
/// denominator vanishes and AlreadyMatched when no reflection is present.
double matching_gain(const QuadMatrix& t_qq_pass_i, const QuadMatrix& t_qq_pass_iii);

CorrectionPlan correct(const TwoModeTransform& t_i, const TwoModeTransform& t_iii,
                       Direction direction, double tol = 1e-9);

FinishingStep finish_with_squeezing(const CorrectionPlan& plan, double r);
FinishingStep finish_with_homodyne(const CorrectionPlan& plan, double epsilon,
                                   std::optional<double> eta_d_override = {});

struct SixPassResult {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  TwoModeTransform composite;
  double deviation_from_swap = 0.0;
};

/// Builds the six-pass sequence (three swapped-QND gates of the given
/// strengths, daggered middle pass realized by quarter rotations, gain
/// sandwiches) with gains chosen so the residual couplings cancel and the
/// composite is a plain SWAP.
SixPassResult six_pass_swap(double eta1, double eta2, double eta3);

}  // namespace tdx
