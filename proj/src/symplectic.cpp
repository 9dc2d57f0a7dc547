#include "tdx/symplectic.hpp"

#include <cmath>

namespace tdx {

QuadMatrix rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  QuadMatrix r;
  r << c, s, -s, c;
  return r;
}

QuadMatrix squeeze(double r) {
  QuadMatrix s;
  s << std::exp(r), 0.0, 0.0, std::exp(-r);
  return s;
}

QuadMatrix amplify(double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw RankDeficient("amplify: gain must be finite and nonzero");
  }
  QuadMatrix g;
  g << gamma, 0.0, 0.0, 1.0 / gamma;
  return g;
}

double symplectic_residual(const QuadMatrix& m) {
  return (m * omega() * m.transpose() - omega()).cwiseAbs().maxCoeff();
}

bool is_symplectic(const QuadMatrix& m, double tol) {
  return symplectic_residual(m) < tol;
}

RotSvd rot_svd(const QuadMatrix& m) {
  if (!m.allFinite()) throw Error("rot_svd: input has non-finite entries");

  // Scaled rotations (equal singular values, the degenerate case where SVD
  // factors are non-unique) get the deterministic choice w = identity.
  const double det = m.determinant();
  const double scale = std::sqrt(std::abs(det));
  if (scale > 0.0) {
    const QuadMatrix candidate = m / scale;
    if ((candidate * candidate.transpose() - QuadMatrix::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-13) {
      RotSvd out;
      out.w = QuadMatrix::Identity();
      if (det > 0.0) {
        out.d = Eigen::Vector2d(scale, scale);
        out.v = candidate;
      } else {
        out.d = Eigen::Vector2d(scale, -scale);
        out.v = candidate * Eigen::Vector2d(1.0, -1.0).asDiagonal();
      }
      return out;
    }
  } else if (m.cwiseAbs().maxCoeff() == 0.0) {
    return RotSvd{QuadMatrix::Identity(), Eigen::Vector2d::Zero(),
                  QuadMatrix::Identity()};
  }

  Eigen::JacobiSVD<QuadMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  QuadMatrix u = svd.matrixU();
  QuadMatrix v = svd.matrixV();
  const double fu = u.determinant() < 0.0 ? -1.0 : 1.0;
  const double fv = v.determinant() < 0.0 ? -1.0 : 1.0;

  RotSvd out;
  out.v = u * Eigen::Vector2d(1.0, fu).asDiagonal();
  out.w = Eigen::Vector2d(1.0, fv).asDiagonal() * v.transpose();
  out.d = Eigen::Vector2d(svd.singularValues()(0),
                          svd.singularValues()(1) * fu * fv);
  return out;
}

RotSvd rot_svd_swapped(const QuadMatrix& m) {
  const RotSvd base = rot_svd(m);
  RotSvd out;
  out.v = base.v * omega().transpose();
  out.d = Eigen::Vector2d(base.d(1), base.d(0));
  out.w = omega() * base.w;
  return out;
}

QuadMatrix symplectic_from_fullrank(const QuadMatrix& m, Side side) {
  const double det = m.determinant();
  if (!std::isfinite(det) || std::abs(det) < 1e-300) {
    throw RankDeficient("symplectic_from_fullrank: matrix is singular");
  }
  const QuadMatrix inv = m.inverse();
  if (det > 0.0) return std::sqrt(det) * inv;
  const double s = std::sqrt(-det);
  return side == Side::Right ? QuadMatrix(s * inv * pauli_z())
                             : QuadMatrix(s * pauli_z() * inv);
}

QlDecomposition ql_decompose(const QuadMatrix& u) {
  // Pick the rotation whose transpose zeroes the (0,1) entry of u.
  const double hyp = std::hypot(u(1, 1), u(0, 1));
  if (hyp == 0.0) {
    throw RankDeficient("ql_decompose: second column is zero");
  }
  double c = u(1, 1) / hyp;
  double s = u(0, 1) / hyp;
  QuadMatrix rot;
  rot << c, s, -s, c;
  QuadMatrix lower = rot.transpose() * u;
  if (lower(0, 0) < 0.0) {
    rot = -rot;  // a pi rotation keeps the factor proper
    lower = -lower;
  }
  lower(0, 1) = 0.0;
  return QlDecomposition{rot, lower, lower(0, 0)};
}

}  // namespace tdx
