#ifndef NLSV_FIELD_HPP
#define NLSV_FIELD_HPP

#include <complex>
#include <vector>

#include "nlsv/grid.hpp"
#include "nlsv/params.hpp"

namespace nlsv {

using Complex = std::complex<double>;

/// Complex samples of u(x) over a periodic grid, tagged with the problem
/// parameters it belongs to.
struct Field {
  Grid grid;
  ProblemParams params;
  std::vector<Complex> values;

  Field() = default;
  Field(const Grid& g, const ProblemParams& p)
      : grid(g), params(p), values(g.size(), Complex{0.0, 0.0}) {}

  bool all_finite() const;
};

/// Throws NonFinite if any sample is NaN or Inf.
void require_finite(const Field& u, const char* where);

}  // namespace nlsv

#endif
