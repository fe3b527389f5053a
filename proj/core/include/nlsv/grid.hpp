#ifndef NLSV_GRID_HPP
#define NLSV_GRID_HPP

#include <array>
#include <cstddef>
#include <vector>

namespace nlsv {

/// Uniform periodic tensor grid on [-L, L)^N with a power-of-two point count
/// per axis. Index 0 sits at x = -L; the box center x = 0 is a grid point.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, double extent, std::size_t points);

  int dim() const { return dim_; }
  double extent() const { return extent_; }
  std::size_t points() const { return points_; }
  double spacing() const { return 2.0 * extent_ / static_cast<double>(points_); }
  std::size_t size() const { return size_; }
  double weight() const;  // quadrature weight = spacing^N

  /// x_i = -L + i h along one axis.
  const std::vector<double>& axis_coords() const { return coords_; }
  /// Discrete wavenumbers k_m = m pi / L, m in [-n/2, n/2).
  const std::vector<double>& axis_wavenumbers() const { return waves_; }

  /// Per-axis index decomposition of a flat (row-major) index.
  std::array<std::size_t, 3> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, 3>& idx) const;

  /// Position vector of a flat index (entries beyond dim are 0).
  std::array<double, 3> coord(std::size_t flat) const;
  double radius_sq(std::size_t flat) const;

  bool operator==(const Grid& other) const {
    return dim_ == other.dim_ && extent_ == other.extent_ && points_ == other.points_;
  }

 private:
  int dim_ = 0;
  double extent_ = 0.0;
  std::size_t points_ = 0;
  std::size_t size_ = 0;
  std::vector<double> coords_;
  std::vector<double> waves_;
};

}  // namespace nlsv

#endif
