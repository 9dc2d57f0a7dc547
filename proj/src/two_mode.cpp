#include "tdx/two_mode.hpp"

#include <cmath>

namespace tdx {

TwoModeTransform TwoModeTransform::from_blocks(const QuadMatrix& t00,
                                               const QuadMatrix& t01,
                                               const QuadMatrix& t10,
                                               const QuadMatrix& t11) {
  Eigen::Matrix4d m;
  m.block<2, 2>(0, 0) = t00;
  m.block<2, 2>(0, 2) = t01;
  m.block<2, 2>(2, 0) = t10;
  m.block<2, 2>(2, 2) = t11;
  return TwoModeTransform(m);
}

TwoModeTransform TwoModeTransform::local(const QuadMatrix& mode0,
                                         const QuadMatrix& mode1) {
  return from_blocks(mode0, QuadMatrix::Zero(), QuadMatrix::Zero(), mode1);
}

const TwoModeTransform& TwoModeTransform::require_symplectic(double tol) const {
  const double res = symplectic_residual();
  if (!(res < tol)) {
    throw NotSymplectic("two-mode transform violates commutation relations", res);
  }
  return *this;
}

TwoModeTransform identity_gate() { return TwoModeTransform(); }

TwoModeTransform swap_gate() {
  return TwoModeTransform::from_blocks(QuadMatrix::Zero(), QuadMatrix::Identity(),
                                       QuadMatrix::Identity(), QuadMatrix::Zero());
}

TwoModeTransform beam_splitter(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return TwoModeTransform::from_blocks(c * QuadMatrix::Identity(),
                                       s * QuadMatrix::Identity(),
                                       -s * QuadMatrix::Identity(),
                                       c * QuadMatrix::Identity());
}

TwoModeTransform two_mode_squeezer(double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  QuadMatrix diagch = ch * QuadMatrix::Identity();
  QuadMatrix shz = sh * pauli_z();
  return TwoModeTransform::from_blocks(diagch, shz, shz, diagch);
}

TwoModeTransform swapped_two_mode_squeezer(double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  QuadMatrix diagch = ch * QuadMatrix::Identity();
  QuadMatrix shz = sh * pauli_z();
  return TwoModeTransform::from_blocks(shz, diagch, diagch, shz);
}

TwoModeTransform qnd_gate_q(double eta) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(2, 0) = -eta;
  m(1, 3) = eta;
  return TwoModeTransform(m);
}

TwoModeTransform qnd_gate_p(double eta) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m(0, 2) = eta;
  m(3, 1) = -eta;
  return TwoModeTransform(m);
}

TwoModeTransform swapped_qnd(double eta) {
  Eigen::Matrix4d m;
  m << -eta, 0, 1, 0,
       0, 0, 0, 1,
       1, 0, 0, 0,
       0, 1, 0, eta;
  return TwoModeTransform(m);
}

TwoModeTransform amplify_mode0(double gamma) {
  return TwoModeTransform::local(amplify(gamma), QuadMatrix::Identity());
}

TwoModeTransform rotate_both(double theta) {
  return TwoModeTransform::local(rotation(theta), rotation(theta));
}

}  // namespace tdx
