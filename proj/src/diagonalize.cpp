#include "tdx/diagonalize.hpp"

#include <cmath>

namespace tdx {

std::string CanonicalGate::name() const {
  switch (kind) {
    case CanonicalKind::Identity:
      return "identity";
    case CanonicalKind::Qnd:
      return "QND";
    case CanonicalKind::Tms:
      return "TMS";
    case CanonicalKind::Bs:
      return "BS";
    case CanonicalKind::SwappedTms:
      return "swapped-TMS";
    case CanonicalKind::SwappedQnd:
      return "sQND";
    case CanonicalKind::Swap:
      return "SWAP";
  }
  return "?";
}

TwoModeTransform CanonicalGate::matrix() const {
  switch (kind) {
    case CanonicalKind::Identity:
      return identity_gate();
    case CanonicalKind::Qnd:
      return qnd_gate_p(parameter);
    case CanonicalKind::Tms:
      return two_mode_squeezer(parameter);
    case CanonicalKind::Bs:
      return beam_splitter(parameter);
    case CanonicalKind::SwappedTms:
      return swapped_two_mode_squeezer(parameter);
    case CanonicalKind::SwappedQnd:
      return swapped_qnd(parameter);
    case CanonicalKind::Swap:
      return swap_gate();
  }
  return identity_gate();
}

namespace {

struct Locals {
  std::array<QuadMatrix, 2> in;
  std::array<QuadMatrix, 2> out;
  CanonicalGate gate;
};

TwoModeTransform compose(const TwoModeTransform& t, const Locals& l) {
  return TwoModeTransform::local(l.out[0], l.out[1]) * t *
         TwoModeTransform::local(l.in[0], l.in[1]);
}

// Swaps the roles of q and p in the rank-one split when the p slot is
// preferred.
RotSvd split_rank_one(const QuadMatrix& m, Transmitted prefer, bool zero_first) {
  const bool swapped = (prefer == Transmitted::P) != zero_first;
  return swapped ? rot_svd_swapped(m) : rot_svd(m);
}

Locals plan_identity(const TwoModeTransform& t) {
  Locals l;
  l.out[0] = t.block(0, 0).inverse();
  l.out[1] = t.block(1, 1).inverse();
  l.in[0] = l.in[1] = QuadMatrix::Identity();
  l.gate = {CanonicalKind::Identity, 0.0};
  return l;
}

Locals plan_qnd(const TwoModeTransform& t, Transmitted prefer) {
  // Transmission into mode 0 is rank one; its nonzero singular value is the
  // QND strength in this dressing.
  const RotSvd svd = split_rank_one(t.block(0, 1), prefer, false);
  const double eta = prefer == Transmitted::Q ? svd.d(0) : svd.d(1);
  Locals l;
  l.out[0] = svd.v.transpose();
  l.in[1] = svd.w.transpose();
  l.in[0] = (l.out[0] * t.block(0, 0)).inverse();
  const QuadMatrix u = t.block(1, 1) * l.in[1] * parity();
  l.out[1] = parity() * u.inverse();
  l.gate = {CanonicalKind::Qnd, eta};
  return l;
}

struct TwoTwoRecipe {
  Eigen::Vector2d target;    // wanted diagonal of the dressed 2->2 block
  QuadMatrix l10_target;     // wanted 1->2 transmission block
  QuadMatrix flip;           // sign matrix entering the mode-0 output local
  double denom;              // transmitted amplitude magnitude
  CanonicalGate gate;
};

TwoTwoRecipe two_two_recipe(double chi, const Classification& cls) {
  TwoTwoRecipe r;
  if (cls.subclass == TwoTwoSubclass::Tms) {
    const double sh = std::sqrt(-chi);
    const double ch = std::sqrt(1.0 - chi);
    r.target = Eigen::Vector2d(ch, ch);
    r.l10_target = sh * pauli_z();
    r.flip = pauli_z();
    r.denom = sh;
    r.gate = {CanonicalKind::Tms, std::asinh(sh)};
  } else if (cls.subclass == TwoTwoSubclass::Bs) {
    const double st = std::sqrt(chi);
    const double ct = std::sqrt(1.0 - chi);
    r.target = Eigen::Vector2d(ct, ct);
    r.l10_target = -st * QuadMatrix::Identity();
    r.flip = QuadMatrix::Identity();
    r.denom = st;
    r.gate = {CanonicalKind::Bs, std::asin(std::min(st, 1.0))};
  } else {
    const double ch = std::sqrt(chi);
    const double sh = std::sqrt(chi - 1.0);
    r.target = Eigen::Vector2d(sh, -sh);
    r.l10_target = ch * QuadMatrix::Identity();
    r.flip = QuadMatrix::Identity();
    r.denom = ch;
    r.gate = {CanonicalKind::SwappedTms, std::acosh(std::max(ch, 1.0))};
  }
  return r;
}

// `normalize` selects the fully canonical form (mode-1 squeezing absorbed);
// otherwise the 2->2 block keeps its signed singular values and the mode-1
// locals stay rotations.
Locals plan_two_two(const TwoModeTransform& t, const Classification& cls,
                    bool normalize) {
  const TwoTwoRecipe r = two_two_recipe(cls.chi, cls);
  const RotSvd svd = rot_svd(t.block(1, 1));
  Locals l;
  l.out[1] = svd.v.transpose();
  l.in[1] = svd.w.transpose();
  if (normalize) {
    l.in[1] *= Eigen::Vector2d(r.target(0) / svd.d(0), r.target(1) / svd.d(1))
                   .asDiagonal();
  }
  l.in[0] = (l.out[1] * t.block(1, 0)).inverse() * r.l10_target;
  const QuadMatrix u = (t.block(0, 1) * l.in[1] * r.flip) / r.denom;
  l.out[0] = u.inverse();
  l.gate = r.gate;
  return l;
}

Locals plan_swapped_qnd(const TwoModeTransform& t, Transmitted prefer) {
  // Reflection at mode 1 is rank one; put the zero singular value in the slot
  // selected by `prefer` so the residual coupling lands in the other
  // quadrature.
  const RotSvd svd = split_rank_one(t.block(1, 1), prefer, true);
  const double eta = prefer == Transmitted::Q ? svd.d(1) : svd.d(0);
  Locals l;
  l.out[1] = svd.v.transpose();
  l.in[1] = svd.w.transpose();
  l.in[0] = (l.out[1] * t.block(1, 0)).inverse();
  const QuadMatrix u = -(t.block(0, 1) * l.in[1]);
  l.out[0] = parity() * u.inverse();
  l.gate = {CanonicalKind::SwappedQnd, eta};
  return l;
}

Locals plan_swap(const TwoModeTransform& t) {
  Locals l;
  l.in[0] = t.block(1, 0).inverse();
  l.out[0] = t.block(0, 1).inverse();
  l.in[1] = l.out[1] = QuadMatrix::Identity();
  l.gate = {CanonicalKind::Swap, 0.0};
  return l;
}

Locals plan_for(const TwoModeTransform& t, const Classification& cls,
                Transmitted prefer, bool normalize) {
  if (cls.is(0, 2)) return plan_identity(t);
  if (cls.is(1, 2)) return plan_qnd(t, prefer);
  if (cls.is(2, 2)) return plan_two_two(t, cls, normalize);
  if (cls.is(2, 1)) return plan_swapped_qnd(t, prefer);
  return plan_swap(t);
}

}  // namespace

DiagonalForm diagonalize(const TwoModeTransform& t, Transmitted prefer,
                         double tol) {
  const Classification cls = classify(t, tol);
  const Locals l = plan_for(t, cls, prefer, true);

  DiagonalForm form;
  form.l_in = l.in;
  form.l_out = l.out;
  form.canonical = l.gate;
  form.diagonal = compose(t, l);
  form.near_degenerate = cls.margin < 10.0 * tol;
  const Eigen::Matrix4d& d = form.diagonal.matrix();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      form.lambda_q(i, j) = d(2 * i, 2 * j);
      form.lambda_p(i, j) = d(2 * i + 1, 2 * j + 1);
    }
  }
  return form;
}

ConstrainedForm diagonalize_constrained(const TwoModeTransform& t,
                                        Transmitted prefer, double tol) {
  const Classification cls = classify(t, tol);
  if (cls.is(0, 2)) {
    throw NoTransmission(
        "diagonalize_constrained: class [[0,2]] has no transmitted quadrature");
  }

  ConstrainedForm form;
  form.cls = cls;
  form.near_degenerate = cls.margin < 10.0 * tol;

  Locals l = plan_for(t, cls, prefer, false);
  if (cls.is(1, 2)) {
    // The mode-1 output local from the unconstrained plan may squeeze; keep
    // only its rotation factor and track the triangular remainder.
    const QuadMatrix u = t.block(1, 1) * l.in[1] * parity();
    const QlDecomposition ql = ql_decompose(u);
    l.out[1] = ql.rotation.transpose();
    form.xi = ql.xi;
  }
  form.l_in = l.in;
  form.l_out = l.out;
  form.canonical = l.gate;
  form.shaped = compose(t, l);
  const Eigen::Matrix4d& m = form.shaped.matrix();
  form.t_qq << m(0, 0), m(0, 2), m(2, 0), m(2, 2);
  return form;
}

CanonicalGate canonical_name(const TwoModeTransform& t, double tol) {
  const Classification cls = classify(t, tol);
  // Only the rank-one classes need the full construction to obtain a
  // parameter; the rest read it from determinant invariants.
  return plan_for(t, cls, Transmitted::Q, false).gate;
}

}  // namespace tdx
