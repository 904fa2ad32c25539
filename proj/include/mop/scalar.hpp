#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

namespace mop {

// Extended-precision scalar for ill-conditioned Hankel-type windows
// (50 significant decimal digits).
using Extended = boost::multiprecision::cpp_bin_float_50;

template <class S>
double to_double(const S& x) {
  return static_cast<double>(x);
}

template <class S>
S abs_val(const S& x) {
  using std::abs;
  return abs(x);
}

template <class S>
S sqrt_val(const S& x) {
  using std::sqrt;
  return sqrt(x);
}

template <class S>
bool finite_val(const S& x) {
  using std::isfinite;
  return static_cast<bool>(isfinite(x));
}

template <class S>
S max_val(const S& x, const S& y) {
  return x < y ? y : x;
}

}  // namespace mop
