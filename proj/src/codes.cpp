#include "tdx/codes.hpp"

#include <cmath>
#include <stdexcept>

#include "tdx/quadrature.hpp"

namespace tdx {

namespace {

int resolve_trunc(const FidelityOptions& opt) {
  return opt.n_trunc > 0 ? opt.n_trunc : default_truncation();
}

// Per-node overlap scalars of the displaced cat basis.  Everything downstream
// (fidelity at any Bloch angle, logical-operator expectations) reduces to
// weighted combinations of these, so each (alpha, sigma) pair costs one set
// of matrix exponentials regardless of how many qubit states are scored.
struct OverlapTable {
  Eigen::VectorXd w;
  Eigen::VectorXd q_zz, q_zo, q_oz, q_oo;
};

OverlapTable build_overlaps(const Eigen::VectorXd& zero,
                            const Eigen::VectorXd& one,
                            const FockWorkspace& ws, double sigma,
                            int quad_order) {
  const QuadratureRule rule = gauss_hermite(quad_order);
  const int m = static_cast<int>(rule.nodes.size());
  OverlapTable t;
  t.w = rule.weights / std::sqrt(M_PI);
  t.q_zz.resize(m);
  t.q_zo.resize(m);
  t.q_oz.resize(m);
  t.q_oo.resize(m);
  for (int i = 0; i < m; ++i) {
    const Eigen::MatrixXd op = ws.displacement(sigma * rule.nodes(i));
    const Eigen::VectorXd oz = op * zero;
    const Eigen::VectorXd oo = op * one;
    t.q_zz(i) = zero.dot(oz);
    t.q_zo(i) = zero.dot(oo);
    t.q_oz(i) = one.dot(oz);
    t.q_oo(i) = one.dot(oo);
  }
  return t;
}

double bloch_fidelity(const OverlapTable& t, double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  double f = 0.0;
  for (int i = 0; i < t.w.size(); ++i) {
    const double re = c * c * t.q_zz(i) + s * s * t.q_oo(i) +
                      c * s * cp * (t.q_zo(i) + t.q_oz(i));
    const double im = c * s * sp * (t.q_zo(i) - t.q_oz(i));
    f += t.w(i) * (re * re + im * im);
  }
  return f;
}

template <typename PointFn>
double sphere_average(int n_theta, int n_phi, PointFn&& f) {
  const QuadratureRule gl = gauss_legendre(n_theta);
  double total = 0.0;
  for (int j = 0; j < n_theta; ++j) {
    const double theta = std::acos(gl.nodes(j));
    double ring = 0.0;
    for (int k = 0; k < n_phi; ++k) {
      ring += f(theta, 2.0 * M_PI * k / n_phi);
    }
    total += gl.weights(j) * ring;
  }
  return total / (2.0 * n_phi);
}

OverlapTable cat_table(double alpha, double sigma, const FidelityOptions& opt) {
  const int n = resolve_trunc(opt);
  const auto [zero, one] = cat_basis(alpha, n);
  const FockWorkspace ws(n);
  return build_overlaps(zero.amp, one.amp, ws, sigma, opt.quad_order);
}

// Squeezed cat states are built in an enlarged space; the squeeze pushes
// support upward and the truncated (orthogonal) exponential hides the
// leakage from the norm, so the tail occupation is checked instead.
struct SqueezedBasis {
  Eigen::VectorXd zero, one;
  int n_big;
};

SqueezedBasis squeezed_cat_states(const SqueezedCatCode& code,
                                  const FidelityOptions& opt) {
  const int n = resolve_trunc(opt);
  const int n_big = n + 96;
  const auto [zero, one] = cat_basis(code.alpha, n_big);
  const FockWorkspace ws(n_big);
  const Eigen::MatrixXd s = ws.squeezer(code.r);
  SqueezedBasis out{s * zero.amp, s * one.amp, n_big};
  // The squeezer matrix is orthogonal even when truncated, so leakage shows
  // up as occupation of the top levels rather than lost norm.
  const double tail =
      out.zero.tail(16).squaredNorm() + out.one.tail(16).squaredNorm();
  if (tail > 1e-8) {
    throw TruncationTooSmall("squeezed cat state leaks into the truncation tail",
                             2 * n_big);
  }
  return out;
}

}  // namespace

double fidelity(double theta, double phi, double sigma, const CatCode& code,
                const FidelityOptions& opt) {
  return bloch_fidelity(cat_table(code.alpha, sigma, opt), theta, phi);
}

double fidelity(double theta, double phi, double sigma,
                const SqueezedCatCode& code, const FidelityOptions& opt) {
  return fidelity(theta, phi, sigma * std::exp(code.r), CatCode{code.alpha},
                  opt);
}

double fidelity_squeezed_direct(double theta, double phi, double sigma,
                                const SqueezedCatCode& code,
                                const FidelityOptions& opt) {
  const SqueezedBasis basis = squeezed_cat_states(code, opt);
  const FockWorkspace ws(basis.n_big);
  const OverlapTable t =
      build_overlaps(basis.zero, basis.one, ws, sigma, opt.quad_order);
  return bloch_fidelity(t, theta, phi);
}

double average_fidelity(double sigma, const CatCode& code,
                        const FidelityOptions& opt, int n_theta, int n_phi) {
  const OverlapTable t = cat_table(code.alpha, sigma, opt);
  return sphere_average(n_theta, n_phi, [&](double th, double ph) {
    return bloch_fidelity(t, th, ph);
  });
}

double average_fidelity(double sigma, const SqueezedCatCode& code,
                        const FidelityOptions& opt, int n_theta, int n_phi) {
  return average_fidelity(sigma * std::exp(code.r), CatCode{code.alpha}, opt,
                          n_theta, n_phi);
}

namespace {

// Normalized Hermite functions at p, h_0..h_{n-1}.
void hermite_functions(double p, int n, Eigen::VectorXd& h) {
  h.resize(n);
  h(0) = std::pow(M_PI, -0.25) * std::exp(-0.5 * p * p);
  if (n > 1) h(1) = std::sqrt(2.0) * p * h(0);
  for (int k = 1; k + 1 < n; ++k) {
    h(k + 1) =
        std::sqrt(2.0 / (k + 1)) * p * h(k) - std::sqrt(double(k) / (k + 1)) * h(k - 1);
  }
}

// integral_0^inf h_m h_n dp on a composite Gauss-Legendre grid.
Eigen::MatrixXd half_line_gram(int n_trunc, int panels, int order) {
  const double p_max = std::sqrt(2.0 * n_trunc) + 8.0;
  const QuadratureRule gl = gauss_legendre(order);
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n_trunc, n_trunc);
  Eigen::VectorXd h;
  for (int panel = 0; panel < panels; ++panel) {
    const double a = p_max * panel / panels;
    const double b = p_max * (panel + 1) / panels;
    for (int i = 0; i < order; ++i) {
      const double p = 0.5 * (b - a) * gl.nodes(i) + 0.5 * (a + b);
      const double w = 0.5 * (b - a) * gl.weights(i);
      hermite_functions(p, n_trunc, h);
      gram.selfadjointView<Eigen::Lower>().rankUpdate(h, w);
    }
  }
  return Eigen::MatrixXd(gram.selfadjointView<Eigen::Lower>());
}

}  // namespace

QspOperators make_qsp_operators(int n_trunc) {
  if (n_trunc < 2) throw Error("make_qsp_operators: truncation must be >= 2");
  const Eigen::MatrixXd coarse = half_line_gram(n_trunc, 64, 24);
  const Eigen::MatrixXd fine = half_line_gram(n_trunc, 128, 24);
  if ((coarse - fine).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::logic_error("make_qsp_operators: sign-matrix quadrature did "
                           "not converge");
  }

  QspOperators ops;
  ops.n_trunc = n_trunc;
  ops.x_m = Eigen::MatrixXd::Zero(n_trunc, n_trunc);
  for (int m = 0; m < n_trunc; ++m) {
    for (int n = 0; n < n_trunc; ++n) {
      if ((m - n) % 2 == 0) continue;  // parity selection rule
      const double value = -2.0 * fine(m, n);
      ops.x_m(m, n) = std::abs(value) < 1e-12 ? 0.0 : value;
    }
  }
  ops.z_diag.resize(n_trunc);
  for (int n = 0; n < n_trunc; ++n) ops.z_diag(n) = n % 2 == 0 ? 1.0 : -1.0;
  return ops;
}

namespace {

struct QspTable {
  Eigen::VectorXd w;
  Eigen::VectorXd x_zz, x_oo, x_zo;  // sign(p) blocks (symmetric)
  Eigen::VectorXd y_zo;              // sign(p)*parity block (antisymmetric)
  Eigen::VectorXd z_zz, z_oo, z_zo;  // parity blocks
};

QspTable build_qsp_table(double alpha, double sigma,
                         const FidelityOptions& opt) {
  const int n = resolve_trunc(opt);
  const auto [zero, one] = cat_basis(alpha, n);
  const FockWorkspace ws(n);
  const QspOperators ops = make_qsp_operators(n);
  const Eigen::MatrixXd xz = ops.x_m * ops.z_diag.asDiagonal();
  const QuadratureRule rule = gauss_hermite(opt.quad_order);
  const int m = static_cast<int>(rule.nodes.size());

  QspTable t;
  t.w = rule.weights / std::sqrt(M_PI);
  t.x_zz.resize(m);
  t.x_oo.resize(m);
  t.x_zo.resize(m);
  t.y_zo.resize(m);
  t.z_zz.resize(m);
  t.z_oo.resize(m);
  t.z_zo.resize(m);
  for (int i = 0; i < m; ++i) {
    const Eigen::MatrixXd op = ws.displacement(sigma * rule.nodes(i));
    const Eigen::VectorXd oz = op * zero.amp;
    const Eigen::VectorXd oo = op * one.amp;
    t.x_zz(i) = oz.dot(ops.x_m * oz);
    t.x_oo(i) = oo.dot(ops.x_m * oo);
    t.x_zo(i) = oz.dot(ops.x_m * oo);
    t.y_zo(i) = oz.dot(xz * oo);
    t.z_zz(i) = oz.dot(ops.z_diag.asDiagonal() * oz);
    t.z_oo(i) = oo.dot(ops.z_diag.asDiagonal() * oo);
    t.z_zo(i) = oz.dot(ops.z_diag.asDiagonal() * oo);
  }
  return t;
}

double qsp_bloch_fidelity(const QspTable& t, double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const double cp = std::cos(phi);
  const double sp = std::sin(phi);
  double ex = 0.0, ey = 0.0, ez = 0.0;
  for (int i = 0; i < t.w.size(); ++i) {
    ex += t.w(i) *
          (c * c * t.x_zz(i) + s * s * t.x_oo(i) + 2.0 * c * s * cp * t.x_zo(i));
    ey += t.w(i) * (-2.0 * c * s * sp * t.y_zo(i));
    ez += t.w(i) *
          (c * c * t.z_zz(i) + s * s * t.z_oo(i) + 2.0 * c * s * cp * t.z_zo(i));
  }
  return 0.5 * (1.0 + std::sin(theta) * cp * ex + std::sin(theta) * sp * ey +
                std::cos(theta) * ez);
}

}  // namespace

double qsp_fidelity(double theta, double phi, double sigma, double alpha,
                    const FidelityOptions& opt) {
  return qsp_bloch_fidelity(build_qsp_table(alpha, sigma, opt), theta, phi);
}

double qsp_average_fidelity(double sigma, double alpha,
                            const FidelityOptions& opt, int n_theta,
                            int n_phi) {
  const QspTable t = build_qsp_table(alpha, sigma, opt);
  return sphere_average(n_theta, n_phi, [&](double th, double ph) {
    return qsp_bloch_fidelity(t, th, ph);
  });
}

}  // namespace tdx
