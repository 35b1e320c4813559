#pragma once

#include <gmpxx.h>

#include <string>

namespace qks {

/// Arbitrary-precision rational backing the exact oracle.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace qks
