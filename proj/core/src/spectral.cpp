#include "nlsv/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "nlsv/errors.hpp"
#include "nlsv/fft.hpp"

namespace nlsv {

namespace {

// Row-major stride of an axis: last axis is contiguous.
std::size_t axis_stride(const Grid& grid, int axis) {
  std::size_t stride = 1;
  for (int a = grid.dim() - 1; a > axis; --a) stride *= grid.points();
  return stride;
}

}  // namespace

std::array<std::vector<Complex>, 3> gradient(const Grid& grid,
                                             const std::vector<Complex>& values) {
  std::vector<Complex> spectrum = values;
  fft_forward(grid, spectrum);

  const auto& waves = grid.axis_wavenumbers();
  const std::size_t n = grid.points();
  std::array<std::vector<Complex>, 3> out;
  std::array<std::size_t, 3> idx = {0, 0, 0};
  for (int axis = 0; axis < grid.dim(); ++axis) {
    std::vector<Complex> d(spectrum.size());
    for (std::size_t flat = 0; flat < spectrum.size(); ++flat) {
      // unpaired Nyquist mode differentiates to zero, keeping real fields real
      const double wave = (idx[axis] == n / 2) ? 0.0 : waves[idx[axis]];
      d[flat] = Complex(0.0, wave) * spectrum[flat];
      // advance the mixed-radix counter (row-major, last axis fastest)
      for (int a = grid.dim() - 1; a >= 0; --a) {
        if (++idx[a] < n) break;
        idx[a] = 0;
      }
    }
    fft_inverse(grid, d);
    out[axis] = std::move(d);
  }
  return out;
}

std::vector<Complex> laplacian(const Grid& grid, const std::vector<Complex>& values) {
  std::vector<Complex> spectrum = values;
  fft_forward(grid, spectrum);

  const auto& waves = grid.axis_wavenumbers();
  const std::size_t n = grid.points();
  std::array<std::size_t, 3> idx = {0, 0, 0};
  for (std::size_t flat = 0; flat < spectrum.size(); ++flat) {
    double k2 = 0.0;
    for (int a = 0; a < grid.dim(); ++a) k2 += waves[idx[a]] * waves[idx[a]];
    spectrum[flat] *= -k2;
    for (int a = grid.dim() - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  fft_inverse(grid, spectrum);
  return spectrum;
}

void dealias_two_thirds(const Grid& grid, std::vector<Complex>& spectrum) {
  const std::size_t n = grid.points();
  const long cut = static_cast<long>(n) / 3;  // keep |m| <= n/3
  std::array<std::size_t, 3> idx = {0, 0, 0};
  for (std::size_t flat = 0; flat < spectrum.size(); ++flat) {
    for (int a = 0; a < grid.dim(); ++a) {
      const long m = (idx[a] < n / 2) ? static_cast<long>(idx[a])
                                      : static_cast<long>(idx[a]) - static_cast<long>(n);
      if (m > cut || m < -cut) {
        spectrum[flat] = Complex{0.0, 0.0};
        break;
      }
    }
    for (int a = grid.dim() - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
}

std::vector<Complex> resample_scale(const Grid& grid, const std::vector<Complex>& values,
                                    double beta) {
  if (!(beta > 0.0)) throw OutOfRange("resample_scale: beta must be positive");
  if (beta == 1.0) return values;

  const std::size_t n = grid.points();
  const auto& coords = grid.axis_coords();
  const auto& waves = grid.axis_wavenumbers();

  // Zoom matrix: Z[j][m] = exp(i k_m (beta x_j + L))/n -- the +L offset is
  // the DFT's index origin. Rows are zeroed where beta x_j leaves the box
  // (whole-space reading; no wrap-around ghosts).
  std::vector<Complex> zoom(n * n, Complex{0.0, 0.0});
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double target = beta * coords[j];
    if (std::abs(target) > grid.extent()) continue;
    for (std::size_t m = 0; m < n; ++m)
      zoom[j * n + m] = std::polar(inv_n, waves[m] * (target + grid.extent()));
  }

  std::vector<Complex> data = values;
  std::vector<Complex> line(n), hat(n), out_line(n);
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const std::size_t stride = axis_stride(grid, axis);
    const std::size_t n_lines = grid.size() / n;
    for (std::size_t l = 0; l < n_lines; ++l) {
      // base offset of the l-th line along this axis
      const std::size_t block = l / stride;
      const std::size_t within = l % stride;
      const std::size_t base = block * stride * n + within;
      for (std::size_t i = 0; i < n; ++i) hat[i] = data[base + i * stride];
      fft_forward_1d(n, hat.data());
      for (std::size_t j = 0; j < n; ++j) {
        Complex acc{0.0, 0.0};
        const Complex* row = &zoom[j * n];
        for (std::size_t m = 0; m < n; ++m) acc += row[m] * hat[m];
        out_line[j] = acc;
      }
      for (std::size_t i = 0; i < n; ++i) data[base + i * stride] = out_line[i];
    }
  }
  return data;
}

std::vector<Complex> translate(const Grid& grid, const std::vector<Complex>& values,
                               const std::array<double, 3>& shift) {
  std::vector<Complex> spectrum = values;
  fft_forward(grid, spectrum);
  const auto& waves = grid.axis_wavenumbers();
  const std::size_t n = grid.points();
  std::array<std::size_t, 3> idx = {0, 0, 0};
  for (std::size_t flat = 0; flat < spectrum.size(); ++flat) {
    double phase = 0.0;
    for (int a = 0; a < grid.dim(); ++a) phase -= waves[idx[a]] * shift[a];
    spectrum[flat] *= std::polar(1.0, phase);
    for (int a = grid.dim() - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  fft_inverse(grid, spectrum);
  return spectrum;
}

double boundary_mass_fraction(const Grid& grid, const std::vector<Complex>& values) {
  const double half = 0.5 * grid.extent();
  const double half_sq = half * half;
  double outside = 0.0, total = 0.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const double m = std::norm(values[flat]);
    total += m;
    if (grid.radius_sq(flat) > half_sq) outside += m;
  }
  return (total > 0.0) ? outside / total : 0.0;
}

double fwhm_cells(const Grid& grid, const std::vector<Complex>& values) {
  const std::size_t n = grid.points();
  std::size_t peak = 0;
  double peak_val = 0.0;
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const double a = std::abs(values[flat]);
    if (a > peak_val) {
      peak_val = a;
      peak = flat;
    }
  }
  if (peak_val == 0.0) return 0.0;
  const double half = 0.5 * peak_val;
  const auto peak_idx = grid.unflatten(peak);

  double width = static_cast<double>(n);
  for (int axis = 0; axis < grid.dim(); ++axis) {
    const std::size_t stride = axis_stride(grid, axis);
    const std::size_t base = peak - peak_idx[axis] * stride;
    auto at = [&](long i) {
      const std::size_t wrapped = static_cast<std::size_t>(((i % static_cast<long>(n)) + n) % n);
      return std::abs(values[base + wrapped * stride]);
    };
    double w = 0.0;
    for (int dir : {+1, -1}) {
      double prev = peak_val;
      for (std::size_t s = 1; s <= n; ++s) {
        const double cur = at(static_cast<long>(peak_idx[axis]) + dir * static_cast<long>(s));
        if (cur < half) {
          w += static_cast<double>(s - 1) + (prev - half) / std::max(prev - cur, 1e-300);
          break;
        }
        prev = cur;
        if (s == n) w += static_cast<double>(n) / 2.0;  // never below half along the loop
      }
    }
    width = std::min(width, w);
  }
  return width;
}

}  // namespace nlsv
