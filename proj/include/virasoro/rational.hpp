#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vir {

// mpq_class keeps numerator/denominator reduced with a positive denominator
// as long as every value goes through canonicalize(); the helpers below do.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "p", "p/q", "-p/q".
Rational parse_rational(std::string_view s);

inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline double to_double(const Rational& r) { return r.get_d(); }

Rational factorial(unsigned n);
Rational binomial(long n, long k);

}  // namespace vir
