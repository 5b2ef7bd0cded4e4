#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <string>

#include "mzv/rational.hpp"

namespace mzv {

// Working precision: 50 decimal digits, which leaves well over the required
// guard digits at the tightest supported tolerance (1e-30).
using real = boost::multiprecision::cpp_bin_float_50;

real to_real(const rational& q);
std::string to_decimal(const real& v, unsigned digits = 40);

}  // namespace mzv
