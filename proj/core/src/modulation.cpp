#include "nlsv/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlsv/errors.hpp"
#include "nlsv/fft.hpp"
#include "nlsv/spectral.hpp"

namespace nlsv {

std::pair<bool, bool> hypotheses_check(const Field& u, const GroundState& gs,
                                       double lambda, double rho, double mass_tol) {
  const ConservedQuantities q = conserved(u);
  if (std::abs(q.mass - gs.norms.mass) > mass_tol * gs.norms.mass) {
    std::ostringstream msg;
    msg << "hypotheses_check: M(u) = " << q.mass << " vs M(Q) = " << gs.norms.mass
        << "; rescale the mass first";
    throw MassMismatch(msg.str());
  }
  const ProblemParams& params = u.params;
  const double lam_pow = std::pow(lambda, 0.5 * params.np1());

  const double energy_gap =
      std::abs(q.energy / gs.norms.energy -
               (params.omega1 * lambda * lambda - params.omega2 * lam_pow));
  const bool energy_ok = energy_gap <= rho * lam_pow;

  const double grad_ratio = std::sqrt(q.grad_norm_sq / gs.norms.grad_norm_sq);
  const double grad_slack = (lambda >= 1.0) ? rho * lambda : rho * lambda * lambda;
  const bool grad_ok = std::abs(grad_ratio - lambda) <= grad_slack;

  return {energy_ok, grad_ok};
}

namespace {

// Parabolic vertex offset from three samples around a discrete peak,
// clamped to half a cell.
double parabolic_offset(double left, double center, double right) {
  const double denom = left - 2.0 * center + right;
  if (denom >= 0.0) return 0.0;  // flat or non-concave: stay on the lattice
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

}  // namespace

ModulationFit fit(const Field& u, const GroundState& gs, double lambda) {
  require_finite(u, "fit");
  if (!(lambda > 0.0)) throw OutOfRange("fit: lambda must be positive");
  const Grid& grid = u.grid;
  if (!(grid == gs.profile.grid)) throw ValidationError("fit: field and Q on different grids");

  if (fwhm_cells(grid, gs.profile.values) / lambda < 4.0) {
    std::ostringstream msg;
    msg << "fit: lambda = " << lambda << " squeezes the soliton below 4 grid cells";
    throw ScaleUnresolvable(msg.str());
  }

  const int dim = grid.dim();
  const std::size_t n = grid.points();
  const std::size_t size = grid.size();
  const double w = grid.weight();

  // Q_lambda(x) = lambda^{N/2} Q(lambda x), spectrally resampled about the center.
  std::vector<Complex> q_lambda = resample_scale(grid, gs.profile.values, lambda);
  const double amp = std::pow(lambda, 0.5 * dim);
  for (auto& v : q_lambda) v *= amp;

  // <u, Q_l(. - a)> over all lattice shifts in one inverse transform.
  std::vector<Complex> u_hat = u.values;
  fft_forward(grid, u_hat);
  std::vector<Complex> q_hat = q_lambda;
  fft_forward(grid, q_hat);
  std::vector<Complex> corr(size);
  for (std::size_t i = 0; i < size; ++i) corr[i] = u_hat[i] * std::conj(q_hat[i]);
  fft_inverse(grid, corr);

  std::size_t peak = 0;
  double peak_val = -1.0;
  for (std::size_t i = 0; i < size; ++i) {
    const double a = std::abs(corr[i]);
    if (a > peak_val) {
      peak_val = a;
      peak = i;
    }
  }

  // sub-grid refinement, one parabola per axis through the peak
  const auto peak_idx = grid.unflatten(peak);
  const double h = grid.spacing();
  std::array<double, 3> x0 = {0, 0, 0};
  for (int a = 0; a < dim; ++a) {
    std::size_t stride = 1;
    for (int b = dim - 1; b > a; --b) stride *= n;
    const std::size_t base = peak - peak_idx[a] * stride;
    const std::size_t prev = base + ((peak_idx[a] + n - 1) % n) * stride;
    const std::size_t next = base + ((peak_idx[a] + 1) % n) * stride;
    const double offset =
        parabolic_offset(std::abs(corr[prev]), peak_val, std::abs(corr[next]));
    const long signed_idx = (peak_idx[a] < n / 2) ? static_cast<long>(peak_idx[a])
                                                  : static_cast<long>(peak_idx[a]) - static_cast<long>(n);
    x0[a] = (static_cast<double>(signed_idx) + offset) * h;
  }

  // Newton polish of |C(x0)|^2 per axis; C and derivatives are Fourier sums
  const auto& waves = grid.axis_wavenumbers();
  auto correlation_at = [&](const std::array<double, 3>& shift, int deriv_axis,
                            int order) -> Complex {
    Complex acc{0.0, 0.0};
    std::array<std::size_t, 3> idx = {0, 0, 0};
    for (std::size_t flat = 0; flat < size; ++flat) {
      double phase = 0.0;
      for (int a = 0; a < dim; ++a) phase += waves[idx[a]] * shift[a];
      Complex term = u_hat[flat] * std::conj(q_hat[flat]) * std::polar(1.0, phase);
      for (int d = 0; d < order; ++d) term *= Complex(0.0, waves[idx[deriv_axis]]);
      acc += term;
      for (int a = dim - 1; a >= 0; --a) {
        if (++idx[a] < n) break;
        idx[a] = 0;
      }
    }
    return acc / static_cast<double>(size);
  };

  for (int sweep = 0; sweep < 3; ++sweep) {
    for (int a = 0; a < dim; ++a) {
      const Complex c0 = correlation_at(x0, a, 0);
      const Complex c1 = correlation_at(x0, a, 1);
      const Complex c2 = correlation_at(x0, a, 2);
      const double slope = 2.0 * std::real(std::conj(c0) * c1);
      const double curve = 2.0 * (std::norm(c1) + std::real(std::conj(c0) * c2));
      if (curve >= 0.0) continue;  // not locally concave: keep the estimate
      const double delta = std::clamp(-slope / curve, -0.5 * h, 0.5 * h);
      x0[a] += delta;
    }
  }

  // exact correlation value at the refined shift fixes the phase
  const Complex at_x0 = correlation_at(x0, 0, 0);

  ModulationFit result;
  result.lambda = lambda;
  result.x0 = x0;
  double theta = std::arg(at_x0);
  const double two_pi = 2.0 * std::numbers::pi;
  theta = std::fmod(theta, two_pi);
  if (theta < 0.0) theta += two_pi;
  result.theta = theta;

  // residual norms at the optimum
  std::vector<Complex> matched = translate(grid, q_lambda, x0);
  const Complex phase = std::polar(1.0, result.theta);
  std::vector<Complex> diff(size);
  double l2_sq = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    diff[i] = u.values[i] - phase * matched[i];
    l2_sq += std::norm(diff[i]);
  }
  result.dist_l2 = std::sqrt(l2_sq * w);

  const auto grad = gradient(grid, diff);
  double h1_sq = 0.0;
  for (int a = 0; a < dim; ++a)
    for (std::size_t i = 0; i < size; ++i) h1_sq += std::norm(grad[a][i]);
  result.dist_h1dot = std::sqrt(h1_sq * w);
  return result;
}

}  // namespace nlsv
