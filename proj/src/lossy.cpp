#include "tdx/lossy.hpp"

#include <cmath>
#include <stdexcept>

namespace tdx {

LossySystemMatrix lossy_bs(double g, double kappa, double t) {
  if (!(g > 0.0) || kappa < 0.0 || t < 0.0) {
    throw Error("lossy_bs: need g > 0, kappa >= 0, t >= 0");
  }
  if (kappa >= 4.0 * g) {
    throw OverdampedUnsupported("lossy_bs: kappa >= 4g (overdamped regime)");
  }
  const double theta = g * t;
  const double sin_gamma = kappa / (4.0 * g);
  const double cos_gamma = std::sqrt(1.0 - sin_gamma * sin_gamma);
  const double gamma_angle = std::asin(sin_gamma);
  const double phase = theta * cos_gamma;
  const double prefactor = std::exp(-theta * sin_gamma) / cos_gamma;

  QuadMatrix t_tilde;
  t_tilde << std::cos(phase + gamma_angle), std::sin(phase),
      -std::sin(phase), std::cos(phase - gamma_angle);
  t_tilde *= prefactor;
  return LossySystemMatrix{t_tilde, g, kappa, t};
}

Eigen::Matrix4d dilate(const QuadMatrix& t_tilde) {
  const RotSvd svd = rot_svd(t_tilde);
  Eigen::Vector2d loss;
  for (int k = 0; k < 2; ++k) {
    const double mag = std::abs(svd.d(k));
    if (mag > 1.0 + 1e-9) {
      throw GainDetected("dilate: singular value exceeds 1 (map has gain)");
    }
    loss(k) = std::sqrt(std::max(0.0, 1.0 - svd.d(k) * svd.d(k)));
  }
  Eigen::Matrix4d full;
  full.topLeftCorner<2, 2>() = t_tilde;
  full.topRightCorner<2, 2>() = svd.v * loss.asDiagonal();
  full.bottomLeftCorner<2, 2>() = (-loss).asDiagonal() * svd.w;
  full.bottomRightCorner<2, 2>() = svd.d.asDiagonal();
  return full;
}

double ProtocolTransform::commutation_residual() const {
  const Eigen::Matrix2d c = tqq * tpp.transpose();
  return (c - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff();
}

ProtocolTransform protocol(double g, double kappa, double tau, double gamma) {
  if (gamma == 0.0 || !std::isfinite(gamma)) {
    throw Error("protocol: mid-protocol gain must be finite and nonzero");
  }
  const LossySystemMatrix half = lossy_bs(g, kappa, tau / 2.0);
  const Eigen::Matrix<double, 2, 4> ext =
      dilate(half.t).topRows<2>();  // [system | pass bath]

  ProtocolTransform pt;
  pt.gamma = gamma;
  pt.g = g;
  pt.kappa = kappa;
  pt.tau = tau;
  for (int i = 0; i < 2; ++i) {
    for (int k = 0; k < 4; ++k) {
      const double through = half.t(i, 0) * ext(0, k);
      const double direct = half.t(i, 1) * ext(1, k);
      pt.tqq(i, k) = gamma * through + direct;
      pt.tpp(i, k) = through / gamma + direct;
    }
    // Second-pass bath enters after the gain, identically in q and p.
    pt.tqq(i, 4) = pt.tpp(i, 4) = ext(i, 2);
    pt.tqq(i, 5) = pt.tpp(i, 5) = ext(i, 3);
  }
  return pt;
}

ProtocolTransform single_pass(double g, double kappa, double tau) {
  const LossySystemMatrix full = lossy_bs(g, kappa, tau);
  const Eigen::Matrix<double, 2, 4> ext = dilate(full.t).topRows<2>();
  ProtocolTransform pt;
  pt.gamma = 1.0;
  pt.g = g;
  pt.kappa = kappa;
  pt.tau = tau;
  pt.tqq.setZero();
  pt.tpp.setZero();
  pt.tqq.leftCols<4>() = ext;
  pt.tpp.leftCols<4>() = ext;
  return pt;
}

double impedance_gain(double g, double kappa, double tau) {
  const QuadMatrix t = lossy_bs(g, kappa, tau / 2.0).t;
  const double denom = t(1, 0) * t(0, 1);
  if (std::abs(denom) < 1e-12) {
    throw ZeroTransmissionPath("impedance_gain: transmission amplitude vanishes");
  }
  const double gamma = -t(1, 1) * t(1, 1) / denom;
  if (std::abs(gamma) < 1e-12) {
    throw AlreadyMatched("impedance_gain: reflection already vanishes");
  }
  return gamma;
}

namespace {

constexpr double kVacuumVariance = 0.5;
constexpr double kNoiselessQuanta = 1e-15;

struct EffectiveRows {
  Eigen::Matrix<double, 6, 1> q;  // coefficients of the transferred output
  Eigen::Matrix<double, 6, 1> p;
  int noise_first;  // first input index contributing noise
  int signal;       // input index carrying the signal
};

NoiseReport score(const EffectiveRows& rows) {
  NoiseReport rep;
  double s_q = 0.0, s_p = 0.0;
  for (int k = rows.noise_first; k < 6; ++k) {
    if (k == rows.signal) continue;
    s_q += rows.q(k) * rows.q(k) * kVacuumVariance;
    s_p += rows.p(k) * rows.p(k) * kVacuumVariance;
  }
  const double tq = rows.q(rows.signal);
  const double tp = rows.p(rows.signal);
  rep.n_q = 0.5 * s_q / (tq * tq);
  rep.n_p = 0.5 * s_p / (tp * tp);
  rep.nbar = rep.n_q + rep.n_p;
  rep.nbar_min = 2.0 * std::sqrt(rep.n_q * rep.n_p);
  rep.tau_c = tq * tp;

  const bool noiseless =
      rep.n_q < kNoiselessQuanta && rep.n_p < kNoiselessQuanta;
  if (noiseless) {
    // Zero added noise forces unit transmissivity through the output
    // commutator; the computed tau_c differs from 1 only by rounding.
    rep.gamma0_opt = 1.0;
    rep.tau_c = 1.0;
    rep.n_c = 0.0;
  } else {
    rep.gamma0_opt = std::pow(rep.n_q / rep.n_p, 0.25);
    const double n_c_raw =
        std::sqrt(s_q * s_p) / std::abs(1.0 - rep.tau_c) - 0.5;
    if (n_c_raw < -0.5 + 1e-12) {
      throw std::logic_error("noise metrics: channel noise number below the "
                             "vacuum floor (internal inconsistency)");
    }
    rep.n_c = std::max(n_c_raw, 0.0);
  }
  rep.q_capacity = capacity_q(rep.tau_c, rep.n_c);
  return rep;
}

}  // namespace

NoiseReport writein_metrics(double g, double kappa, double tau,
                            TransferScheme scheme) {
  ProtocolTransform pt;
  double eta_d = 0.0;
  if (scheme == TransferScheme::Standard) {
    pt = single_pass(g, kappa, tau);
  } else {
    pt = protocol(g, kappa, tau, impedance_gain(g, kappa, tau));
    // The p-noise of the transferred mode is stationary in the feedforward
    // strength at a single point; the quadratic terms cancel and the
    // stationarity condition is linear.
    double num = 0.0, den = 0.0;
    for (int k = 1; k < 6; ++k) {
      const double b = pt.tpp(1, k);
      const double c = pt.tpp(0, k);
      const double d = c * pt.tpp(1, 0) - pt.tpp(0, 0) * b;
      num += b * d;
      den += c * d;
    }
    eta_d = std::abs(den) > 0.0 ? num / den : 0.0;
  }

  EffectiveRows rows;
  rows.q = pt.tqq.row(1).transpose();
  rows.p = (pt.tpp.row(1) - eta_d * pt.tpp.row(0)).transpose();
  rows.noise_first = 1;
  rows.signal = 0;
  NoiseReport rep = score(rows);
  rep.eta_d_opt = eta_d;
  return rep;
}

NoiseReport readout_metrics(double g, double kappa, double tau) {
  const QuadMatrix t = lossy_bs(g, kappa, tau / 2.0).t;
  const double denom = t(0, 1) * t(1, 0);
  if (std::abs(denom) < 1e-12) {
    throw ZeroTransmissionPath("readout_metrics: transmission amplitude vanishes");
  }
  const double gamma = -t(0, 0) * t(0, 0) / denom;
  if (std::abs(gamma) < 1e-12) {
    throw AlreadyMatched("readout_metrics: reflection already vanishes");
  }
  const ProtocolTransform pt = protocol(g, kappa, tau, gamma);
  if (std::abs(pt.tpp(0, 0)) > 1e-8) {
    throw std::logic_error("readout_metrics: p reflection failed to cancel");
  }

  EffectiveRows rows;
  rows.q = pt.tqq.row(0).transpose();
  rows.p = pt.tpp.row(0).transpose();
  // The q reflection is silenced by the injected infinite squeezing and the
  // p reflection by the gain choice; only bath inputs add noise.
  rows.noise_first = 2;
  rows.signal = 1;
  return score(rows);
}

double capacity_q(double tau_c, double n_c) {
  double g_term = 0.0;
  if (n_c > 1e-15) {
    g_term = (n_c + 1.0) * std::log2(n_c + 1.0) - n_c * std::log2(n_c);
  }
  const double raw = std::log2(std::abs(tau_c / (1.0 - tau_c))) - g_term;
  return std::max(0.0, raw);
}

}  // namespace tdx
