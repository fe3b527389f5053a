#ifndef NLSV_CLASSIFY_HPP
#define NLSV_CLASSIFY_HPP

#include <string>

#include "nlsv/conserved.hpp"
#include "nlsv/field.hpp"

namespace nlsv {

struct GroundState;

enum class Verdict {
  GlobalBounded,         // ratio < 1 and eta < 1: global, gradient stays below Q's
  PossibleDivergence,    // ratio < 1 and eta > 1: blow-up or unbounded gradient sequence
  BoundaryIndeterminate, // eta or ratio within deadband of 1; strict inequalities required
  AboveThreshold,        // ratio >= 1: the dichotomy does not apply
};

std::string to_string(Verdict verdict);

struct DichotomyReport {
  double ratio = 0.0;         // M^((1-s_c)/s_c) E normalized by the ground state
  double eta = 0.0;           // eta(0)
  double lambda_minus = 0.0;  // 0 when ratio < 0 (lower root does not exist)
  double lambda_plus = 0.0;
  bool lambda_valid = false;  // roots populated (ratio < 1 outside the deadband)
  Verdict verdict = Verdict::BoundaryIndeterminate;
  ConservedQuantities quantities;  // of u, for downstream reporting
};

/// Classify initial data against the dichotomy. Strict-inequality verdicts
/// use a deadband of `boundary_tol` around 1 to stay deterministic under
/// round-off.
DichotomyReport classify(const Field& u, const GroundState& gs,
                         double boundary_tol = 1e-9);

}  // namespace nlsv

#endif
