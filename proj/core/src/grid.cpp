#include "nlsv/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "nlsv/errors.hpp"

namespace nlsv {

Grid::Grid(int dim, double extent, std::size_t points) : dim_(dim), extent_(extent), points_(points) {
  if (dim < 1 || dim > 3) throw OutOfRange("Grid: dimension must be 1, 2 or 3");
  if (!(extent > 0.0)) throw OutOfRange("Grid: extent must be positive");
  if (points < 4 || (points & (points - 1)) != 0)
    throw OutOfRange("Grid: per-axis point count must be a power of two >= 4");

  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= points;

  const double h = spacing();
  coords_.resize(points);
  waves_.resize(points);
  const double k_unit = std::numbers::pi / extent;  // box period is 2L
  for (std::size_t i = 0; i < points; ++i) {
    coords_[i] = -extent + static_cast<double>(i) * h;
    const auto signed_index =
        (i < points / 2) ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(points);
    waves_[i] = k_unit * static_cast<double>(signed_index);
  }
}

double Grid::weight() const {
  double w = 1.0;
  for (int a = 0; a < dim_; ++a) w *= spacing();
  return w;
}

std::array<std::size_t, 3> Grid::unflatten(std::size_t flat) const {
  std::array<std::size_t, 3> idx = {0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = flat % points_;
    flat /= points_;
  }
  return idx;
}

std::size_t Grid::flatten(const std::array<std::size_t, 3>& idx) const {
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) flat = flat * points_ + idx[a];
  return flat;
}

std::array<double, 3> Grid::coord(std::size_t flat) const {
  const auto idx = unflatten(flat);
  std::array<double, 3> x = {0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = coords_[idx[a]];
  return x;
}

double Grid::radius_sq(std::size_t flat) const {
  const auto x = coord(flat);
  double r2 = 0.0;
  for (int a = 0; a < dim_; ++a) r2 += x[a] * x[a];
  return r2;
}

}  // namespace nlsv
