#include "nlsv/classify.hpp"

#include <cmath>

#include "nlsv/errors.hpp"
#include "nlsv/groundstate.hpp"

namespace nlsv {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::GlobalBounded: return "GlobalBounded";
    case Verdict::PossibleDivergence: return "PossibleDivergence";
    case Verdict::BoundaryIndeterminate: return "BoundaryIndeterminate";
    case Verdict::AboveThreshold: return "AboveThreshold";
  }
  return "?";
}

DichotomyReport classify(const Field& u, const GroundState& gs, double boundary_tol) {
  if (!(u.params.dim == gs.profile.params.dim && u.params.power == gs.profile.params.power))
    throw ValidationError("classify: field and ground state disagree on (N, p)");

  DichotomyReport report;
  report.quantities = conserved(u);
  report.ratio = mass_energy_ratio(report.quantities, gs.norms, u.params);
  report.eta = eta_value(report.quantities, gs.norms, u.params);

  if (std::abs(report.eta - 1.0) <= boundary_tol || std::abs(report.ratio - 1.0) <= boundary_tol) {
    report.verdict = Verdict::BoundaryIndeterminate;
    return report;
  }
  if (report.ratio >= 1.0) {
    report.verdict = Verdict::AboveThreshold;
    return report;
  }

  // ratio < 1: populate the roots. For negative energy only the upper root
  // exists; the lower is reported as 0 with the ratio retained.
  if (report.ratio >= 0.0) {
    const auto roots = lambda_roots(report.ratio, u.params);
    report.lambda_minus = roots.first;
    report.lambda_plus = roots.second;
  } else {
    report.lambda_minus = 0.0;
    report.lambda_plus = lambda_plus_root(report.ratio, u.params);
  }
  report.lambda_valid = true;

  report.verdict = (report.eta < 1.0) ? Verdict::GlobalBounded : Verdict::PossibleDivergence;
  return report;
}

}  // namespace nlsv
