#pragma once

#include <string>

#include "tdx/two_mode.hpp"

// Plain-text transducer files: a version header, an optional label, then the
// 16 entries of the quadrature matrix, row-major in (q1, p1, q2, p2) order.
// '#' starts a comment anywhere.  Loading validates the symplectic condition
// and reports the worst commutator residual on failure.

namespace tdx {

struct TransducerFile {
  TwoModeTransform transform;
  std::string label;
};

TransducerFile read_transducer_file(const std::string& path,
                                    double tol = 1e-9);

/// Writes via a temporary file and rename, so a failed write never leaves a
/// partial file behind.
void write_transducer_file(const std::string& path, const TwoModeTransform& t,
                           const std::string& label = "");

/// Parses from an already-loaded string (same grammar as the file form).
TransducerFile parse_transducer_text(const std::string& text,
                                     double tol = 1e-9);

/// Fixed-format number for machine-readable output: 12 significant digits,
/// '.' decimal separator regardless of locale.
std::string format_sig12(double v);

/// Atomic text-file write (temporary + rename), LF line endings as-is.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace tdx
