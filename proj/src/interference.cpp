#include "tdx/interference.hpp"

#include <cmath>
#include <limits>

namespace tdx {

double matching_gain(const QuadMatrix& t_qq_i, const QuadMatrix& t_qq_iii) {
  const double denom = t_qq_iii(1, 0) * t_qq_i(0, 1);
  const double numer = t_qq_iii(1, 1) * t_qq_i(1, 1);
  const double scale = std::max({std::abs(t_qq_i(0, 0)), std::abs(t_qq_i(1, 1)),
                                 std::abs(t_qq_iii(0, 0)),
                                 std::abs(t_qq_iii(1, 1)), 1.0});
  if (std::abs(denom) < 1e-12 * scale * scale) {
    throw ZeroTransmissionPath(
        "matching_gain: transmission-transmission pathway vanishes");
  }
  if (std::abs(numer) < 1e-12 * scale * scale) {
    throw AlreadyMatched("matching_gain: no q reflection to cancel");
  }
  return -numer / denom;
}

namespace {

bool passthrough_class(const Classification& c) {
  return c.is(2, 1) || c.is(2, 0);
}

double residual_strength(const TwoModeTransform& composite) {
  Eigen::JacobiSVD<QuadMatrix> svd(composite.block(1, 1));
  return svd.singularValues()(0);
}

FinishingStep ideal_finishing(Direction direction, double eta) {
  FinishingStep f;
  if (direction == Direction::TwoToOne) {
    f.kind = FinishingStep::Kind::InjectSqueezing;
    f.squeeze_r = std::numeric_limits<double>::infinity();
  } else {
    f.kind = FinishingStep::Kind::HomodyneFeedforward;
    f.eta_d = eta;
  }
  f.residual_sigma = 0.0;
  return f;
}

}  // namespace

CorrectionPlan correct(const TwoModeTransform& t_i, const TwoModeTransform& t_iii,
                       Direction direction, double tol) {
  const Classification cls_i = classify(t_i, tol);
  if (cls_i.is(0, 2)) {
    throw Uncorrectable("correct: first pass is class [[0,2]] (no coupling)");
  }

  CorrectionPlan plan;
  plan.direction = direction;

  if (passthrough_class(cls_i)) {
    // Already at most one reflected quadrature; no interference needed.
    plan.pass_i = diagonalize_constrained(t_i, Transmitted::Q, tol);
    plan.pass_iii = plan.pass_i;
    plan.gamma = 1.0;
    plan.already_matched = true;
    plan.composite = plan.pass_i.shaped;
  } else {
    const Classification cls_iii = classify(t_iii, tol);
    if (cls_iii.is(0, 2)) {
      throw Uncorrectable("correct: second pass is class [[0,2]] (no coupling)");
    }
    if (passthrough_class(cls_iii)) {
      throw Uncorrectable(
          "correct: second pass must be class [[1,2]] or [[2,2]]");
    }
    // The rank-one transmission of a QND-class pass must sit in the q slot
    // used by its leg of the interference pathway.
    plan.pass_i = diagonalize_constrained(t_i, Transmitted::Q, tol);
    plan.pass_iii = diagonalize_constrained(
        t_iii, cls_iii.is(1, 2) ? Transmitted::P : Transmitted::Q, tol);
    plan.gamma = matching_gain(plan.pass_i.t_qq, plan.pass_iii.t_qq);
    plan.composite =
        plan.pass_iii.shaped * amplify_mode0(plan.gamma) * plan.pass_i.shaped;
  }

  plan.resulting_class = classify(plan.composite, tol);
  plan.residual_eta = residual_strength(plan.composite);
  plan.finishing = ideal_finishing(direction, plan.residual_eta);
  return plan;
}

FinishingStep finish_with_squeezing(const CorrectionPlan& plan, double r) {
  FinishingStep f;
  f.kind = FinishingStep::Kind::InjectSqueezing;
  f.squeeze_r = r;
  f.residual_sigma = plan.residual_eta * std::exp(-r);
  return f;
}

FinishingStep finish_with_homodyne(const CorrectionPlan& plan, double epsilon,
                                   std::optional<double> eta_d_override) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw Error("finish_with_homodyne: inefficiency must lie in [0, 1]");
  }
  const double eta = plan.residual_eta;
  const double eta_d =
      eta_d_override.value_or(eta * std::sqrt(1.0 - epsilon));
  FinishingStep f;
  f.kind = FinishingStep::Kind::HomodyneFeedforward;
  f.eta_d = eta_d;
  f.epsilon = epsilon;
  const double var = eta * eta + eta_d * eta_d -
                     2.0 * eta * eta_d * std::sqrt(1.0 - epsilon);
  f.residual_sigma = std::sqrt(std::max(var, 0.0));
  return f;
}

SixPassResult six_pass_swap(double eta1, double eta2, double eta3) {
  if (eta1 == 0.0 || eta2 == 0.0 || eta3 == 0.0) {
    throw DegenerateStrengths("six_pass_swap: all strengths must be nonzero");
  }
  // One equation, two gains: eta2 = gamma1*eta1 + gamma2*eta3.  Try gamma2=1,
  // then gamma1=1; when either gain comes out near zero (a nearly singular
  // amplification whose inverse would amplify roundoff past the SWAP
  // tolerance), split the strength evenly across both gains instead.
  constexpr double kMinGain = 1e-2;
  double g1 = (eta2 - eta3) / eta1;
  double g2 = 1.0;
  if (std::abs(g1) < kMinGain) {
    g1 = 1.0;
    g2 = (eta2 - eta1) / eta3;
    if (std::abs(g2) < kMinGain) {
      g1 = eta2 / (2.0 * eta1);
      g2 = eta2 / (2.0 * eta3);
    }
  }

  const TwoModeTransform quarter = rotate_both(M_PI / 2.0);
  const TwoModeTransform quarter_back = rotate_both(-M_PI / 2.0);
  const TwoModeTransform middle_dagger =
      quarter_back * swapped_qnd(eta2) * quarter;

  SixPassResult out;
  out.gamma1 = g1;
  out.gamma2 = g2;
  out.composite = amplify_mode0(1.0 / g1) * swapped_qnd(eta3) *
                  amplify_mode0(g2) * middle_dagger * amplify_mode0(g1) *
                  swapped_qnd(eta1) * amplify_mode0(1.0 / g2);
  out.deviation_from_swap =
      (out.composite.matrix() - swap_gate().matrix()).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace tdx
