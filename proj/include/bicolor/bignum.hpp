#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace bicolor {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
/// Wide float for logarithms of counts far beyond double range.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }
/// Natural log of a positive integer of any size.
inline double log_big(const BigInt& n) { return static_cast<double>(boost::multiprecision::log(BigFloat(n))); }

}  // namespace bicolor
