#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace airylab {

using complex = std::complex<double>;

// Error taxonomy. Argument/size/domain errors are caller bugs; numeric_error
// reports a failed tolerance and carries the achieved estimate.
struct argument_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct size_error : std::length_error {
  using std::length_error::length_error;
};
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct range_error : std::out_of_range {
  using std::out_of_range::out_of_range;
};
struct invariant_error : std::logic_error {
  using std::logic_error::logic_error;
};
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct numeric_error : std::runtime_error {
  double estimate;
  explicit numeric_error(const std::string& what, double est)
      : std::runtime_error(what), estimate(est) {}
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw argument_error(msg);
}

constexpr double pi = 3.14159265358979323846264338327950288;

inline bool close_rel(double a, double b, double rel) {
  double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace airylab
