#ifndef NLSV_PARAMS_HPP
#define NLSV_PARAMS_HPP

#include <utility>

namespace nlsv {

/// Problem parameterization for i u_t + Lap u + |u|^(p-1) u = 0 in the
/// mass-supercritical, energy-subcritical window 0 < s_c < 1.
struct ProblemParams {
  int dim = 0;          // spatial dimension N in {1, 2, 3}
  double power = 0.0;   // nonlinearity exponent p
  double s_c = 0.0;     // N/2 - 2/(p-1)
  double omega1 = 0.0;  // N(p-1) / (N(p-1) - 4)
  double omega2 = 0.0;  // 4 / (N(p-1) - 4)

  double np1() const { return dim * (power - 1.0); }  // N(p-1), always > 4 here
};

ProblemParams make_params(int dim, double power);

/// f(lambda) = omega1 lambda^2 - omega2 lambda^(N(p-1)/2).
/// Increases from f(0)=0 to the global maximum f(1)=1, then decreases to -inf.
double dichotomy_poly(double lambda, const ProblemParams& params);

/// The two nonnegative solutions of f(lambda) = ratio for 0 <= ratio < 1,
/// bracketed bisection to 1e-12 absolute. Throws RatioOutOfRange otherwise.
std::pair<double, double> lambda_roots(double ratio, const ProblemParams& params);

/// The solution > 1 of f(lambda) = ratio, defined for every ratio < 1
/// (used for negative-energy data, where the lower root does not exist).
double lambda_plus_root(double ratio, const ProblemParams& params);

}  // namespace nlsv

#endif
