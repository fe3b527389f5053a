#ifndef NLSV_SPECTRAL_HPP
#define NLSV_SPECTRAL_HPP

#include <array>
#include <complex>
#include <vector>

#include "nlsv/field.hpp"
#include "nlsv/grid.hpp"

namespace nlsv {

/// Spectral partial derivatives du/dx_a for every axis, by one forward
/// transform and dim inverse transforms.
std::array<std::vector<Complex>, 3> gradient(const Grid& grid,
                                             const std::vector<Complex>& values);

/// Spectral Laplacian.
std::vector<Complex> laplacian(const Grid& grid, const std::vector<Complex>& values);

/// Zero every mode with |m| > n/3 on any axis (2/3 rule), acting on an
/// unnormalized spectrum laid out like the grid.
void dealias_two_thirds(const Grid& grid, std::vector<Complex>& spectrum);

/// Evaluate the trigonometric interpolant of `values` at the scaled points
/// beta*x. Points that land outside the box are set to zero rather than
/// wrapped, matching the whole-space reading of a localized field.
std::vector<Complex> resample_scale(const Grid& grid, const std::vector<Complex>& values,
                                    double beta);

/// Circular translation by a real offset via Fourier phase shift:
/// result(x) = interpolant(x - shift).
std::vector<Complex> translate(const Grid& grid, const std::vector<Complex>& values,
                               const std::array<double, 3>& shift);

/// Fraction of mass at |x| > extent/2 (where x-weighted quadrature stops
/// being trustworthy on a periodic box).
double boundary_mass_fraction(const Grid& grid, const std::vector<Complex>& values);

/// Full width at half maximum of |u| along axis lines through the global
/// peak, in grid cells; returns the minimum over axes.
double fwhm_cells(const Grid& grid, const std::vector<Complex>& values);

}  // namespace nlsv

#endif
