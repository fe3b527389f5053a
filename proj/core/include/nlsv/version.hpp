#ifndef NLSV_VERSION_HPP
#define NLSV_VERSION_HPP

namespace nlsv {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

}  // namespace nlsv

#endif
