#pragma once

#include <gmpxx.h>

#include <string>

namespace crn {

// Exact arbitrary-precision rational.  GMP's canonical form (reduced,
// positive denominator) is maintained by mpq_class for all arithmetic.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline int sgn(const Rat& r) { return ::sgn(r); }

// Renders "7", "-3/2", "0".
std::string to_string(const Rat& r);

// Parses "7", "-3/2"; throws Error(Parse) on garbage or zero denominator.
Rat rat_from_string(const std::string& s);

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace crn
