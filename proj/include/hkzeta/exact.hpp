#pragma once

// Exact arithmetic shared by every other header: arbitrary precision
// integers/rationals and constants carrying an explicit power of log q.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hkzeta {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, long e) {
  if (e < 0) throw std::domain_error("ipow: negative exponent");
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Rat rpow(const Rat& base, long e) {
  if (e >= 0)
    return Rat(ipow(numerator(base), e), ipow(denominator(base), e));
  if (base == 0) throw std::domain_error("rpow: 0^negative");
  return Rat(ipow(denominator(base), -e), ipow(numerator(base), -e));
}

// q^e for integer q >= 2 and any integer e, as an exact rational.
inline Rat qpow(const Int& q, long e) {
  if (e >= 0) return Rat(ipow(q, e));
  return Rat(1, ipow(q, -e));
}

inline Rat binom_rat(const Rat& x, int k) {
  // binomial coefficient with rational (or integer) top argument
  Rat r = 1;
  for (int i = 0; i < k; ++i) r *= (x - i) / (i + 1);
  return r;
}

// value * log(q)^log_exp; the transcendental part is never evaluated, only
// tracked, so comparisons between constants stay exact.
struct ScaledConstant {
  Rat value = 0;
  int log_exp = 0;

  friend ScaledConstant operator*(const ScaledConstant& a, const ScaledConstant& b) {
    return {a.value * b.value, a.log_exp + b.log_exp};
  }
  friend ScaledConstant operator/(const ScaledConstant& a, const ScaledConstant& b) {
    if (b.value == 0) throw std::domain_error("ScaledConstant: division by zero");
    return {a.value / b.value, a.log_exp - b.log_exp};
  }
  friend bool operator==(const ScaledConstant& a, const ScaledConstant& b) {
    if (a.value == 0 && b.value == 0) return true;
    return a.value == b.value && a.log_exp == b.log_exp;
  }
};

inline std::string to_string(const Rat& r) {
  return numerator(r).str() + (denominator(r) == 1 ? "" : "/" + denominator(r).str());
}

}  // namespace hkzeta
