#pragma once

#include <stdexcept>
#include <string>

namespace tdx {

/// Base class for all domain errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A matrix required to preserve the canonical commutation form failed the
/// symplectic check.  Carries the maximum residual of M*Omega*M^T - Omega.
class NotSymplectic : public Error {
 public:
  NotSymplectic(const std::string& what, double residual)
      : Error(what + " (max residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// A transmission amplitude needed by the interference construction vanished.
class ZeroTransmissionPath : public Error {
 public:
  using Error::Error;
};

/// The reflection to be cancelled is already zero, so no matching gain is
/// needed (a gain of exactly zero is not an invertible operation).
class AlreadyMatched : public Error {
 public:
  using Error::Error;
};

/// Inputs of class [[0,2]] have no transmission and cannot be corrected.
class Uncorrectable : public Error {
 public:
  using Error::Error;
};

class NoTransmission : public Error {
 public:
  using Error::Error;
};

class DegenerateStrengths : public Error {
 public:
  using Error::Error;
};

class OverdampedUnsupported : public Error {
 public:
  using Error::Error;
};

class GainDetected : public Error {
 public:
  using Error::Error;
};

class TruncationTooSmall : public Error {
 public:
  TruncationTooSmall(const std::string& what, int suggested)
      : Error(what + " (suggest n_trunc >= " + std::to_string(suggested) + ")"),
        suggested_(suggested) {}
  int suggested() const { return suggested_; }

 private:
  int suggested_;
};

}  // namespace tdx
