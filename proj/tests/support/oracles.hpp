// Independent test oracles: high-resolution quadrature over the closed-form
// soliton, naive direct-summation DFT quantities, and deterministic random
// field generators. Nothing here reuses the library's spectral path.
#ifndef NLSV_TEST_ORACLES_HPP
#define NLSV_TEST_ORACLES_HPP

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "nlsv/field.hpp"

namespace oracles {

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return (scale == 0.0) ? 0.0 : std::abs(a - b) / scale;
}

// Trapezoid quadrature on [-X, X]; superalgebraically accurate for smooth
// integrands decaying to zero at the endpoints.
inline double integrate(const std::function<double(double)>& f, double X,
                        std::size_t n = (1u << 20)) {
  const double h = 2.0 * X / static_cast<double>(n);
  double acc = 0.5 * (f(-X) + f(X));
  for (std::size_t i = 1; i < n; ++i) acc += f(-X + static_cast<double>(i) * h);
  return acc * h;
}

// Closed-form 1D soliton of -mu q + q'' + q^p = 0.
struct Soliton1D {
  double mu, p;
  double amplitude() const { return std::pow(mu * (p + 1.0) / 2.0, 1.0 / (p - 1.0)); }
  double rate() const { return std::sqrt(mu) * (p - 1.0) / 2.0; }
  double operator()(double x) const {
    return amplitude() * std::pow(1.0 / std::cosh(rate() * x), 2.0 / (p - 1.0));
  }
  double derivative(double x) const {
    // d/dx sech^nu(ax) = -nu a tanh(ax) sech^nu(ax)
    const double nu = 2.0 / (p - 1.0);
    return -nu * rate() * std::tanh(rate() * x) * (*this)(x);
  }
  // int x^w |q|^m dx by quadrature
  double moment(double weight_exp, double m, double X = 50.0) const {
    return integrate(
        [&](double x) { return std::pow(std::abs(x), weight_exp) * std::pow((*this)(x), m); }, X);
  }
  double grad_sq(double X = 50.0) const {
    return integrate([&](double x) { return derivative(x) * derivative(x); }, X);
  }
};

// Naive O(n^2) spectral derivative on an 8-point-sized 1D grid: direct
// DFT sums with the same wavenumber convention as the library.
inline std::vector<std::complex<double>> naive_spectral_derivative(
    const std::vector<std::complex<double>>& u, double extent) {
  const std::size_t n = u.size();
  const std::complex<double> I{0.0, 1.0};
  std::vector<std::complex<double>> hat(n, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      hat[k] += u[j] * std::exp(-I * (2.0 * std::numbers::pi * static_cast<double>(k * j) /
                                      static_cast<double>(n)));
  std::vector<std::complex<double>> out(n, {0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const long m = (k < n / 2) ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
      // same convention as the library: the unpaired Nyquist mode differentiates to zero
      const double wave =
          (k == n / 2) ? 0.0 : std::numbers::pi / extent * static_cast<double>(m);
      out[j] += I * wave * hat[k] *
                std::exp(I * (2.0 * std::numbers::pi * static_cast<double>(k * j) /
                              static_cast<double>(n)));
    }
    out[j] /= static_cast<double>(n);
  }
  return out;
}

// Smooth localized random field: low-wavenumber Fourier modes under a
// Gaussian envelope, deterministic per seed.
inline nlsv::Field random_localized_field(const nlsv::ProblemParams& params,
                                          const nlsv::Grid& grid, unsigned seed,
                                          int max_mode = 4, double envelope_frac = 0.2) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int dim = grid.dim();

  struct Mode {
    std::array<double, 3> k;
    std::complex<double> c;
  };
  std::vector<Mode> modes;
  const double k_unit = std::numbers::pi / grid.extent();
  const int n_modes = 6;
  for (int m = 0; m < n_modes; ++m) {
    Mode mode;
    for (int a = 0; a < dim; ++a) {
      std::uniform_int_distribution<int> pick(-max_mode, max_mode);
      mode.k[a] = k_unit * pick(rng);
    }
    mode.c = {gauss(rng), gauss(rng)};
    modes.push_back(mode);
  }

  nlsv::Field u(grid, params);
  const double sigma = envelope_frac * grid.extent();
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto x = grid.coord(flat);
    std::complex<double> acc{0.0, 0.0};
    for (const auto& mode : modes) {
      double phase = 0.0;
      for (int a = 0; a < dim; ++a) phase += mode.k[a] * x[a];
      acc += mode.c * std::polar(1.0, phase);
    }
    acc *= std::exp(-grid.radius_sq(flat) / (2.0 * sigma * sigma));
    u.values[flat] = acc;
  }
  return u;
}

inline nlsv::Field scaled(const nlsv::Field& f, std::complex<double> c) {
  nlsv::Field out = f;
  for (auto& v : out.values) v *= c;
  return out;
}

}  // namespace oracles

#endif
