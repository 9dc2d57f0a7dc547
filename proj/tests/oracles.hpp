#pragma once

// Test-side oracles, independent of the library code paths they check.

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "tdx/symplectic.hpp"
#include "tdx/two_mode.hpp"

namespace oracles {

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random single-mode symplectic: rotation * squeeze * rotation, optionally
/// with a parity flip folded in.
inline tdx::QuadMatrix random_local(std::mt19937_64& rng, double max_squeeze = 1.0) {
  const double sign = uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
  return tdx::rotation(uniform(rng, 0.0, 2.0 * M_PI)) *
         tdx::amplify(sign * std::exp(uniform(rng, -max_squeeze, max_squeeze))) *
         tdx::rotation(uniform(rng, 0.0, 2.0 * M_PI));
}

inline tdx::QuadMatrix random_rotation(std::mt19937_64& rng) {
  return tdx::rotation(uniform(rng, 0.0, 2.0 * M_PI));
}

inline tdx::TwoModeTransform random_local_pair(std::mt19937_64& rng,
                                               double max_squeeze = 1.0) {
  return tdx::TwoModeTransform::local(random_local(rng, max_squeeze),
                                      random_local(rng, max_squeeze));
}

inline tdx::TwoModeTransform random_rotation_pair(std::mt19937_64& rng) {
  return tdx::TwoModeTransform::local(random_rotation(rng), random_rotation(rng));
}

/// RK4 propagator of the damped-coupling amplitude equations
/// da0/dt = -(kappa/2) a0 + g a1, da1/dt = -g a0, from the identity.
inline Eigen::Matrix2d integrate_lossy_pair(double g, double kappa, double t,
                                            int steps = 4000) {
  Eigen::Matrix2d a;
  a << -kappa / 2.0, g, -g, 0.0;
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  const double h = t / steps;
  for (int i = 0; i < steps; ++i) {
    const Eigen::Matrix2d k1 = a * m;
    const Eigen::Matrix2d k2 = a * (m + 0.5 * h * k1);
    const Eigen::Matrix2d k3 = a * (m + 0.5 * h * k2);
    const Eigen::Matrix2d k4 = a * (m + h * k3);
    m += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return m;
}

/// Golden-section minimizer for smooth single-minimum functions.  Comparing
/// function values cannot resolve a flat quadratic minimum below about
/// sqrt(machine epsilon), so the bracketed result is polished by bisecting
/// the central-difference slope.
inline double golden_minimize(const std::function<double(double)>& f, double lo,
                              double hi, int iters = 120) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < iters && b - a > 1e-6; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = f(d);
    }
  }

  const double h = 1e-4 * std::max(1.0, std::abs(a) + std::abs(b));
  auto slope = [&](double x) { return f(x + h) - f(x - h); };
  double sa = a - 10.0 * h, sb = b + 10.0 * h;
  double ga = slope(sa), gb = slope(sb);
  if (ga > 0.0 || gb < 0.0) return 0.5 * (a + b);  // bracket failed; keep it
  for (int i = 0; i < 200 && sb - sa > 1e-12; ++i) {
    const double mid = 0.5 * (sa + sb);
    const double gm = slope(mid);
    if (gm <= 0.0) {
      sa = mid;
      ga = gm;
    } else {
      sb = mid;
      gb = gm;
    }
  }
  return 0.5 * (sa + sb);
}

}  // namespace oracles
