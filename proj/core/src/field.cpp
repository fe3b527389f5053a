#include "nlsv/field.hpp"

#include <cmath>

#include "nlsv/errors.hpp"

namespace nlsv {

bool Field::all_finite() const {
  for (const auto& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

void require_finite(const Field& u, const char* where) {
  if (!u.all_finite()) throw NonFinite(std::string(where) + ": field contains NaN/Inf samples");
}

}  // namespace nlsv
