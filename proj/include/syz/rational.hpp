#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace syz {

// All coefficient arithmetic is exact over Q. The backing types are
// arbitrary-precision; cpp_rational keeps values canonical (reduced,
// positive denominator) after every operation.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int numerator(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int denominator(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Renders "a" for integers and "a/b" otherwise.
inline std::string to_string(const Rat& r) { return r.str(); }

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }

}  // namespace syz
