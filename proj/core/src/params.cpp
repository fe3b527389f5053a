#include "nlsv/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "nlsv/errors.hpp"

namespace nlsv {

ProblemParams make_params(int dim, double power) {
  if (dim < 1 || dim > 3) {
    std::ostringstream msg;
    msg << "make_params: dimension " << dim << " unsupported (need 1, 2 or 3)";
    throw OutOfRange(msg.str());
  }
  const double lower = 1.0 + 4.0 / dim;
  const double upper = (dim >= 3) ? 1.0 + 4.0 / (dim - 2) : std::numeric_limits<double>::infinity();
  if (!(power > lower) || !(power < upper)) {
    std::ostringstream msg;
    msg << "make_params: p = " << power << " outside the open window (" << lower << ", ";
    if (std::isfinite(upper))
      msg << upper;
    else
      msg << "inf";
    msg << ") for N = " << dim;
    throw OutOfRange(msg.str());
  }

  ProblemParams params;
  params.dim = dim;
  params.power = power;
  params.s_c = 0.5 * dim - 2.0 / (power - 1.0);
  const double denom = dim * (power - 1.0) - 4.0;  // > 0 in the window
  params.omega1 = dim * (power - 1.0) / denom;
  params.omega2 = 4.0 / denom;
  return params;
}

double dichotomy_poly(double lambda, const ProblemParams& params) {
  return params.omega1 * lambda * lambda -
         params.omega2 * std::pow(lambda, 0.5 * params.np1());
}

namespace {

// Bisection of f(lambda) = ratio, run down to the last representable
// midpoint so the polynomial residual is limited by round-off only.
double bisect(double lo, double hi, double ratio, const ProblemParams& params) {
  double flo = dichotomy_poly(lo, params) - ratio;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fmid = dichotomy_poly(mid, params) - ratio;
    if ((fmid <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double lambda_plus_root(double ratio, const ProblemParams& params) {
  if (!(ratio < 1.0)) throw RatioOutOfRange("lambda_plus_root: need ratio < 1");
  // f(1) = 1 > ratio and f decreases beyond 1; grow the bracket until f < ratio.
  double hi = 2.0;
  while (dichotomy_poly(hi, params) > ratio) hi *= 2.0;
  return bisect(1.0, hi, ratio, params);
}

std::pair<double, double> lambda_roots(double ratio, const ProblemParams& params) {
  if (ratio < 0.0 || ratio >= 1.0) {
    std::ostringstream msg;
    msg << "lambda_roots: ratio = " << ratio
        << " outside [0, 1); the roots coalesce at the maximum f(1) = 1";
    throw RatioOutOfRange(msg.str());
  }
  // f increases from 0 to 1 on [0, 1], so the bracket is always valid.
  const double minus = (ratio == 0.0) ? 0.0 : bisect(0.0, 1.0, ratio, params);
  return {minus, lambda_plus_root(ratio, params)};
}

}  // namespace nlsv
