#pragma once

#include <stdexcept>
#include <string>

#include "acfilter/spectral.hpp"

namespace acfilter {

/// Which bounded steady state a converged field is.
struct Classification {
  enum class Verdict { zero, plus_one, minus_one, ground };
  Verdict verdict = Verdict::zero;
  // Meaningful for `ground`: u(x) = sign * U_{j kappa}(j x + shift).
  int j = 0;
  int sign = 1;
  double shift = 0.0;
  double match_error = 0.0;  // L^2 distance to the matched state

  /// `zero`, `plus_one`, `minus_one` or `ground(j=..,sign=..,c=..)`.
  std::string to_string() const;
};

class ClassificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClassifyOptions {
  double residual_limit = 1e-6;   // caller's near-steadiness precondition
  double constant_tol = 1e-4;     // L^2 distance that decides 0 / +1 / -1
  double mismatch_limit = 1e-2;   // beyond this the state is unclassified
};

/// Matches u against 0, +1, -1 and the rescaled ground states
/// +-U_{j kappa}(j x + c), j = 1..m_kappa.
///
/// Because -U(y) = U(y + pi), a ground-state match is reported with the shift
/// in [-pi/2, pi/2) and the sign absorbing the rest.
///
/// Throws std::invalid_argument if the residual precondition fails, and
/// ClassificationError if kappa >= 1 with a non-constant u or if no catalogue
/// entry is within `mismatch_limit`.
Classification classify_steady(const SpectralField1D& u, double kappa, ClassifyOptions opts = {});

}  // namespace acfilter
