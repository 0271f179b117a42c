#pragma once

// Zeta function of the base curve and the derived special values: Z_K(T) as
// a factored rational function, exact values zeta_K(s) at integers s >= 2,
// the residue constant at s = 1, and the shifted sums
//
//   R_K(a, b) = sum over effective D of q^{-(a ell(D) + b deg D)}
//             = q^{a(g-1)} zeta_K(a+b) + S_K(a,b),   a <= 0, a + b >= 2,
//
// with S_K the finite correction over divisors of degree <= 2g - 2.

#include "hkzeta/curvedata.hpp"
#include "hkzeta/divisor.hpp"
#include "hkzeta/exact.hpp"
#include "hkzeta/series.hpp"

#include <stdexcept>

namespace hkzeta {

// Z_K(c T^m) as a factored rational function; Z_K(T) = L(T)/((1-T)(1-qT))
inline FactoredRational zeta_series(const CurveData& C, const Int& c = 1, int m = 1) {
  Int q = C.q();
  ratpoly::P L(C.Lcoeffs.size());
  for (size_t i = 0; i < C.Lcoeffs.size(); ++i) L[i] = Rat(C.Lcoeffs[i]);
  FactoredRational r(L);
  r = r * FactoredRational::geometric(1, 1) * FactoredRational::geometric(q, 1);
  return m == 1 && c == 1 ? r : r.substituted(c, m);
}

// zeta_K(s) = Z_K(q^{-s}) for integer s >= 2 (exact rational)
inline Rat zeta_value(const CurveData& C, long s) {
  if (s < 2) throw std::domain_error("zeta_value: need s >= 2");
  return zeta_series(C).eval(qpow(C.q(), -s));
}

// residue of zeta_K at s = 1: h_K q^{1-g} / ((q-1) log q)
inline ScaledConstant zeta_residue(const CurveData& C) {
  Int q = C.q();
  return {Rat(C.class_number()) * qpow(q, 1 - C.genus) / Rat(q - 1), -1};
}

inline Rat R_K(const CurveData& C, long a, long b) {
  if (a > 0) throw std::domain_error("R_K: need a <= 0");
  if (a + b < 2) throw std::domain_error("R_K: need a + b >= 2 for convergence");
  Int q = C.q();
  Rat main = qpow(q, a * (C.genus - 1)) * zeta_value(C, a + b);
  if (C.genus == 0) return main;
  Rat corr = 0;  // divisors where ell(D) differs from deg + 1 - g
  for (int n = 0; n <= 2 * C.genus - 2; ++n)
    for (const Divisor& D : effective_divisors(C, n)) {
      long long l = ell(D, C);
      corr += qpow(q, -(a * l) - b * n) - qpow(q, a * (C.genus - 1) - (a + b) * n);
    }
  return main + corr;
}

}  // namespace hkzeta
