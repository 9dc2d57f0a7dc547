#include "tdx/classify.hpp"

#include <algorithm>
#include <cmath>

namespace tdx {

std::string Classification::canonical_label() const {
  if (is(0, 2)) return "[[0,2]] identity";
  if (is(1, 2)) return "[[1,2]] QND";
  if (is(2, 1)) return "[[2,1]] swapped-QND";
  if (is(2, 0)) return "[[2,0]] SWAP";
  switch (subclass) {
    case TwoTwoSubclass::Tms:
      return "[[2,2]] TMS";
    case TwoTwoSubclass::SwappedTms:
      return "[[2,2]] swapped-TMS";
    default:
      return "[[2,2]] BS";
  }
}

int rank2(const QuadMatrix& m, double tol) {
  Eigen::JacobiSVD<QuadMatrix> svd(m);
  const double thr = tol * std::max(svd.singularValues()(0), 1.0);
  int rank = 0;
  for (int k = 0; k < 2; ++k) {
    if (svd.singularValues()(k) > thr) ++rank;
  }
  return rank;
}

namespace {

double rank_margin(const QuadMatrix& m, double tol) {
  Eigen::JacobiSVD<QuadMatrix> svd(m);
  const double thr = tol * std::max(svd.singularValues()(0), 1.0);
  return std::min(std::abs(svd.singularValues()(0) - thr),
                  std::abs(svd.singularValues()(1) - thr));
}

}  // namespace

Classification classify(const TwoModeTransform& t, double tol) {
  const double scale = std::max(1.0, t.matrix().cwiseAbs().maxCoeff());
  t.require_symplectic(tol * scale * scale);

  const QuadMatrix t00 = t.block(0, 0);
  const QuadMatrix t01 = t.block(0, 1);
  const QuadMatrix t10 = t.block(1, 0);
  const QuadMatrix t11 = t.block(1, 1);

  Classification out;
  out.n_transmitted = rank2(t10, tol);
  out.n_reflected = rank2(t11, tol);
  out.chi = t10.determinant();

  if (rank2(t01, tol) != out.n_transmitted || rank2(t00, tol) != out.n_reflected) {
    throw NotSymplectic("classify: paired-rank constraint violated",
                        t.symplectic_residual());
  }
  const double det_res =
      std::max(std::abs(t10.determinant() + t11.determinant() - 1.0),
               std::abs(t00.determinant() + t01.determinant() - 1.0));
  if (det_res > 1e-10 * scale * scale) {
    throw NotSymplectic("classify: determinant-sum constraint violated", det_res);
  }

  const bool allowed = out.is(0, 2) || out.is(1, 2) || out.is(2, 2) ||
                       out.is(2, 1) || out.is(2, 0);
  if (!allowed) {
    throw NotSymplectic("classify: rank pattern outside the five classes",
                        t.symplectic_residual());
  }

  out.margin = std::min({rank_margin(t00, tol), rank_margin(t01, tol),
                         rank_margin(t10, tol), rank_margin(t11, tol)});

  if (out.is(2, 2)) {
    out.subclass = out.chi < 0.0 ? TwoTwoSubclass::Tms
                   : out.chi < 1.0 ? TwoTwoSubclass::Bs
                                   : TwoTwoSubclass::SwappedTms;
    const double chi_tol = tol * scale * scale;
    out.boundary_warning =
        std::abs(out.chi) < chi_tol || std::abs(out.chi - 1.0) < chi_tol;
  }
  return out;
}

}  // namespace tdx
