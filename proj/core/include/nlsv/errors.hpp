#ifndef NLSV_ERRORS_HPP
#define NLSV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nlsv {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define NLSV_DEFINE_ERROR(Name)                                   \
  struct Name : Error {                                           \
    explicit Name(const std::string& what) : Error(what) {}       \
  }

NLSV_DEFINE_ERROR(OutOfRange);            // (N, p) outside the admissible window
NLSV_DEFINE_ERROR(RatioOutOfRange);       // lambda roots requested outside [0, 1)
NLSV_DEFINE_ERROR(NonFinite);             // NaN/Inf encountered in field data
NLSV_DEFINE_ERROR(ZeroMass);              // operation undefined for M(u) = 0
NLSV_DEFINE_ERROR(AliasRisk);             // rescale would underresolve the profile
NLSV_DEFINE_ERROR(NoConvergence);         // iteration exhausted without meeting tolerance
NLSV_DEFINE_ERROR(GridTooCoarse);         // grid cannot resolve the expected profile
NLSV_DEFINE_ERROR(WrongDimension);
NLSV_DEFINE_ERROR(BoundaryMass);          // too much mass near the box edge for x-weighted integrals
NLSV_DEFINE_ERROR(NotCase2);              // blow-up bound requires the divergence branch
NLSV_DEFINE_ERROR(NegativeDenominator);   // scaled-variance denominator lost positivity
NLSV_DEFINE_ERROR(RadiusTooLarge);
NLSV_DEFINE_ERROR(RadiusTooSmall);
NLSV_DEFINE_ERROR(GammaOutOfWindow);
NLSV_DEFINE_ERROR(LambdaNotSupercritical);
NLSV_DEFINE_ERROR(NotRadial);
NLSV_DEFINE_ERROR(MassMismatch);
NLSV_DEFINE_ERROR(ScaleUnresolvable);
NLSV_DEFINE_ERROR(ValidationError);       // scenario / input validation
NLSV_DEFINE_ERROR(IoError);

#undef NLSV_DEFINE_ERROR

}  // namespace nlsv

#endif
