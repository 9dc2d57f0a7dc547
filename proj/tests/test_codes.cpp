#include <doctest.h>

#include <complex>

#include "tdx/codes.hpp"
#include "tdx/quadrature.hpp"

using namespace tdx;
using std::complex;

namespace {

// Analytic channel fidelity for cat-basis qubits, built from coherent-state
// displacement overlaps and a dense trapezoid integral.  Shares nothing with
// the Fock-space code path.
double analytic_cat_fidelity(double theta, double phi, double sigma,
                             double alpha, int grid = 20001) {
  if (sigma == 0.0) return 1.0;
  const complex<double> I(0.0, 1.0);
  const complex<double> lobes[2] = {I * alpha, -I * alpha};
  const double n_plus = std::sqrt(2.0 * (1.0 + std::exp(-2.0 * alpha * alpha)));
  const double n_minus = std::sqrt(2.0 * (1.0 - std::exp(-2.0 * alpha * alpha)));
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  const complex<double> coeff[2] = {
      c / n_plus + std::exp(I * phi) * s / n_minus,
      c / n_plus - std::exp(I * phi) * s / n_minus};

  auto displaced_overlap = [&](double p) {
    // <psi| D(z) |psi> with D(z) = exp(i p q), z = i p / sqrt(2)
    const complex<double> z = I * p / std::sqrt(2.0);
    complex<double> total = 0.0;
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        const complex<double> beta = lobes[a], betap = lobes[b];
        const complex<double> phase = 0.5 * (z * std::conj(betap) -
                                             std::conj(z) * betap);
        const complex<double> shifted = betap + z;
        const complex<double> overlap =
            std::exp(-0.5 * std::norm(beta) - 0.5 * std::norm(shifted) +
                     std::conj(beta) * shifted);
        total += std::conj(coeff[a]) * coeff[b] * std::exp(phase) * overlap;
      }
    }
    return std::norm(total);
  };
  double acc = 0.0;
  const double lo = -8.0 * sigma, hi = 8.0 * sigma;
  const double h = (hi - lo) / (grid - 1);
  for (int i = 0; i < grid; ++i) {
    const double p = lo + i * h;
    const double w = (i == 0 || i == grid - 1) ? 0.5 : 1.0;
    acc += w * std::exp(-(p / sigma) * (p / sigma)) * displaced_overlap(p);
  }
  return acc * h / (sigma * std::sqrt(M_PI));
}

}  // namespace

TEST_CASE("cat basis") {
  const auto [zero, one] = cat_basis(2.0, 40);
  CHECK(std::abs(zero.amp.dot(one.amp)) < 1e-10);
  CHECK(zero.amp.norm() == doctest::Approx(1.0));
  CHECK(one.amp.norm() == doctest::Approx(1.0));
  CHECK(zero.norm_deficit < 1e-10);
  for (int n = 1; n < 40; n += 2) CHECK(zero.amp(n) == 0.0);
  for (int n = 0; n < 40; n += 2) CHECK(one.amp(n) == 0.0);

  CHECK_THROWS_AS(cat_basis(2.0, 30), TruncationTooSmall);
  CHECK_THROWS_AS(cat_basis(-1.0, 60), Error);
}

TEST_CASE("channel moments and trace preservation") {
  const int n = 50;
  const FockWorkspace ws(n);
  // Quadrature matrices in the module's phase convention.
  Eigen::MatrixXd ladder = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) ladder(k - 1, k) = std::sqrt(double(k));
  const Eigen::MatrixXd p_mat = -(ladder + ladder.transpose()) / std::sqrt(2.0);
  const Eigen::MatrixXd q_sq =
      -0.5 * (ladder.transpose() - ladder) * (ladder.transpose() - ladder);

  FockVector vacuum;
  vacuum.amp = Eigen::VectorXd::Zero(n);
  vacuum.amp(0) = 1.0;

  for (double sigma : {0.1, 0.5, 1.0}) {
    const Eigen::MatrixXcd rho =
        apply_channel(vacuum, DisplacementNoiseChannel{sigma, 41}, ws);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-8);
    CHECK(std::abs(rho.trace().imag()) < 1e-12);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);

    const double mean_p = (p_mat * rho).trace().real();
    const double mean_p2 = (p_mat * p_mat * rho).trace().real();
    const double mean_q2 = (q_sq * rho).trace().real();
    CHECK(std::abs(mean_p) < 1e-10);
    CHECK(mean_p2 == doctest::Approx(0.5 + sigma * sigma / 2.0).epsilon(1e-8));
    CHECK(mean_q2 == doctest::Approx(0.5).epsilon(1e-8));

    // Mixture of unitaries: eigenvalues stay nonnegative.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }

  const Eigen::MatrixXcd id_rho =
      apply_channel(vacuum, DisplacementNoiseChannel{0.0, 41}, ws);
  CHECK(std::abs(id_rho(0, 0).real() - 1.0) < 1e-12);
}

TEST_CASE("fidelity basics and the analytic oracle") {
  const CatCode cat{2.0};
  CHECK(fidelity(0.7, 1.1, 0.0, cat) == doctest::Approx(1.0).epsilon(1e-8));

  // Independent coherent-overlap oracle at several Bloch points.
  for (const auto& [th, ph, sg] :
       {std::tuple{0.0, 0.0, 0.5}, std::tuple{1.2, 0.8, 0.5},
        std::tuple{2.1, 4.0, 0.9}}) {
    const double lib = fidelity(th, ph, sg, cat);
    const double oracle = analytic_cat_fidelity(th, ph, sg, 2.0);
    CHECK(std::abs(lib - oracle) < 1e-6);
  }
}

TEST_CASE("squeezed encoding equals the width-rescaled cat code") {
  const SqueezedCatCode squeezed{2.0, -std::log(2.0)};  // e^r = 1/2
  for (double sigma : {0.2, 0.6, 1.0}) {
    const double reduced = fidelity(0.9, 0.3, sigma, squeezed);
    CHECK(reduced == doctest::Approx(fidelity(0.9, 0.3, sigma / 2.0,
                                              CatCode{2.0}))
                         .epsilon(1e-12));
    const double direct = fidelity_squeezed_direct(0.9, 0.3, sigma, squeezed);
    CHECK(std::abs(direct - reduced) < 1e-6);
  }
}

TEST_CASE("average fidelity: limits, monotonicity, orderings") {
  const CatCode cat{2.0};
  const SqueezedCatCode squeezed{2.0, -std::log(2.0)};

  CHECK(average_fidelity(0.0, cat) == doctest::Approx(1.0).epsilon(1e-8));

  double prev = 2.0;
  for (int i = 0; i <= 10; ++i) {
    const double sigma = 0.1 * i;
    const double f = average_fidelity(sigma, cat);
    CHECK(f <= prev + 1e-12);
    prev = f;
    if (sigma > 0.0) {
      CHECK(average_fidelity(sigma, squeezed) >= f);
    }
  }
}

TEST_CASE("QSP operators") {
  const int n = 60;
  const QspOperators ops = make_qsp_operators(n);

  CHECK((ops.x_m - ops.x_m.transpose()).cwiseAbs().maxCoeff() < 1e-14);
  for (int m = 0; m < n; ++m) {
    for (int k = (m % 2 == 0 ? 0 : 1); k < n; k += 2) {
      CHECK(ops.x_m(m, k) == 0.0);  // equal parity never couples
    }
  }

  const Eigen::MatrixXd z = ops.z_diag.asDiagonal();
  CHECK((ops.x_m * z + z * ops.x_m).cwiseAbs().maxCoeff() < 1e-8);

  // Idempotence of the sign operator on the states the encoding lives on.
  const auto [zero, one] = cat_basis(2.0, n);
  const Eigen::VectorXd plus = ((zero.amp + one.amp) / std::sqrt(2.0));
  for (const Eigen::VectorXd& psi : {zero.amp, one.amp, plus}) {
    const double expect = psi.dot(ops.x_m * (ops.x_m * psi));
    CHECK(std::abs(expect - 1.0) < 1e-4);
  }

  CHECK(zero.amp.dot(z * zero.amp) == doctest::Approx(1.0));
  CHECK(one.amp.dot(z * one.amp) == doctest::Approx(-1.0));
  CHECK(plus.dot(ops.x_m * plus) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("QSP logical fidelity") {
  SUBCASE("noiseless cat input reads out near perfectly") {
    for (const auto& [th, ph] : {std::pair{0.0, 0.0}, std::pair{1.1, 0.7},
                                 std::pair{M_PI / 2, M_PI / 2}}) {
      CHECK(qsp_fidelity(th, ph, 0.0, 2.0) == doctest::Approx(1.0).epsilon(1e-3));
    }
  }

  SUBCASE("logical readout beats state overlap at every noise level") {
    for (int i = 1; i <= 10; ++i) {
      const double sigma = 0.1 * i;
      const double f_qsp = qsp_average_fidelity(sigma, 2.0);
      const double f_cat = average_fidelity(sigma, CatCode{2.0});
      CHECK(f_qsp >= f_cat);
    }
  }
}

TEST_CASE("convergence under truncation and quadrature doubling") {
  FidelityOptions base;
  base.n_trunc = 60;
  base.quad_order = 41;
  FidelityOptions big_trunc = base;
  big_trunc.n_trunc = 120;
  FidelityOptions big_quad = base;
  big_quad.quad_order = 83;

  for (const auto& [alpha, sigma] :
       {std::pair{2.0, 0.5}, std::pair{3.0, 1.5}, std::pair{1.0, 0.3}}) {
    const CatCode cat{alpha};
    const double f0 = average_fidelity(sigma, cat, base);
    CHECK(std::abs(f0 - average_fidelity(sigma, cat, big_trunc)) < 1e-6);
    CHECK(std::abs(f0 - average_fidelity(sigma, cat, big_quad)) < 1e-6);
    // Bloch-grid doubling
    CHECK(std::abs(f0 - average_fidelity(sigma, cat, base, 32, 32)) < 1e-6);
  }

  const double q0 = qsp_average_fidelity(0.6, 2.0, base);
  CHECK(std::abs(q0 - qsp_average_fidelity(0.6, 2.0, big_quad)) < 1e-6);
  CHECK(std::abs(q0 - qsp_average_fidelity(0.6, 2.0, big_trunc)) < 1e-6);
}
