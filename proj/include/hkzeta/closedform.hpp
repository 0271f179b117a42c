#pragma once

// Closed-form height zeta functions of the varieties X_d(a) over K and the
// exact constants in the point count asymptotics.  Everything is expressed
// through T = q^{-s}: the chart zeta function Z_{U,L}(T), the projective
// space zeta Z_{P^n}(T), products for the split case a_r = 0, leading
// constants at the dominant pole, and the residue class sums Q_L(M).

#include "hkzeta/counting.hpp"
#include "hkzeta/curve.hpp"
#include "hkzeta/curvedata.hpp"
#include "hkzeta/divisor.hpp"
#include "hkzeta/exact.hpp"
#include "hkzeta/hkgeom.hpp"
#include "hkzeta/series.hpp"

#include <numeric>
#include <stdexcept>

namespace hkzeta {

struct ZetaResult {
  FactoredRational Z;
  Classification cls;
  ScaledConstant lead;  // pole-limit constant at s = a(L), order b(L)
  bool has_lead = true;
};

// the exact constants P_1, P_2, P_3 correcting Riemann-Roch below degree
// 2g - 1; identically zero in genus 0

inline ratpoly::P correction_P1(const HKVariety& X, const LineBundle& L, const CurveData& C) {
  ratpoly::P P;
  if (C.genus == 0) return P;
  int g = C.genus, r = X.r, NX = X.n_max();
  long long e = (long long)(r + 1) * X.a_max() - X.a_sum();
  long long cL = L.gamma * X.a_max() + L.xi;
  int A = X.a_max() - (NX == r ? 0 : X.a[r - NX - 1]);
  Int q = C.q();
  for (int n = 0; n <= 2 * g - 2; ++n)
    for (const Divisor& D : effective_divisors(C, n))
      for (int n2 = 0; A * n2 + n <= 2 * g - 2; ++n2)
        for (const Divisor& D2 : effective_divisors(C, n2)) {
          Rat prod = 1, rrprod = 1;
          for (int j = 0; j <= r - NX; ++j) {
            int aj = (j == 0) ? 0 : X.a[j - 1];
            prod *= Rat(N_m(D + (long long)(X.a_max() - aj) * D2, 1, C));
            rrprod *= qpow(q, n + (long long)(X.a_max() - aj) * n2);
          }
          Rat term = Rat(N_tilde(D2, X.t - 1, C)) * rpow(Rat(N_m(D, 1, C)), NX - 1) *
                     (prod - qpow(q, (long long)(r + 1 - NX) * (1 - g)) * rrprod);
          if (term == 0) continue;
          size_t idx = (size_t)(L.gamma * n + cL * n2);
          if (P.size() <= idx) P.resize(idx + 1, Rat(0));
          P[idx] += term;
        }
  (void)e;
  ratpoly::trim(P);
  return P;
}

inline ratpoly::P correction_P2(const HKVariety& X, const LineBundle& L, const CurveData& C) {
  ratpoly::P P;
  if (C.genus == 0) return P;
  int g = C.genus, r = X.r, NX = X.n_max();
  Int q = C.q();
  for (int n = 0; n <= 2 * g - 2; ++n)
    for (const Divisor& D : effective_divisors(C, n)) {
      Rat term = rpow(Rat(N_m(D, 1, C)), NX - 1) - qpow(q, (long long)(NX - 1) * (1 - g + n));
      if (term == 0) continue;
      term *= qpow(q, (long long)(r + 1 - NX) * n);
      size_t idx = (size_t)(L.gamma * n);
      if (P.size() <= idx) P.resize(idx + 1, Rat(0));
      P[idx] += term;
    }
  ratpoly::trim(P);
  return P;
}

inline ratpoly::P correction_P3(const HKVariety& X, const LineBundle& L, const CurveData& C) {
  ratpoly::P P;
  if (C.genus == 0) return P;
  int g = C.genus, t = X.t, r = X.r;
  long long e = (long long)(r + 1) * X.a_max() - X.a_sum();
  long long cL = L.gamma * X.a_max() + L.xi;
  Int q = C.q();
  for (int n = 0; n <= 2 * g - 2; ++n)
    for (const Divisor& D : effective_divisors(C, n)) {
      Rat term = rpow(Rat(N_m(D, 1, C)), t - 1) - qpow(q, (long long)(t - 1) * (1 - g + n));
      if (term == 0) continue;
      term *= qpow(q, e * n);
      size_t idx = (size_t)(cL * n);
      if (P.size() <= idx) P.resize(idx + 1, Rat(0));
      P[idx] += term;
    }
  ratpoly::trim(P);
  return P;
}

// pole-limit constant at s = a(L) per the classification case
inline ScaledConstant leading_constant(const Classification& cls, const HKVariety& X,
                                       const CurveData& C) {
  Int q = C.q();
  int d = X.dim(), r = X.r, t = X.t, g = C.genus, NX = X.n_max();
  Rat h(C.class_number());
  long long e = (long long)(r + 1) * X.a_max() - X.a_sum();
  long long gamma = cls.primitive.gamma * cls.eta_L;
  auto as_int = [](const Rat& x, const char* what) {
    if (denominator(x) != 1)
      throw std::domain_error(std::string("leading_constant: ") + what +
                              " is not an integer at this pole");
    return (long)numerator(x).convert_to<long long>();
  };
  if (cls.b == 2) {
    Rat v = qpow(q, (long long)(d + 2) * (1 - g)) * h * h /
            (zeta_value(C, t) * zeta_value(C, r + 1) * Rat(cls.c_L) * Rat(gamma) *
             rpow(Rat(q - 1), 2));
    return {v, -2};
  }
  if (cls.A < cls.B) {
    long gw = as_int(Rat(gamma) * cls.B, "gamma*a(L)");
    Rat v = qpow(q, (long long)(d + 2 - NX) * (1 - g)) * h *
            R_K(C, 1 - NX, gw - r + NX - 1) /
            (zeta_value(C, t) * zeta_value(C, gw) * Rat(cls.c_L) * Rat(q - 1));
    return {v, -1};
  }
  long cw = as_int(Rat(cls.c_L) * cls.A - e, "c_L*a(L)-e");
  Rat v = qpow(q, (long long)(r + 1) * (1 - g)) * h * R_K(C, 1 - t, cw) /
          (zeta_value(C, cw) * zeta_value(C, r + 1) * Rat(gamma) * Rat(q - 1));
  return {v, -1};
}

// Z_{U,L}(T) for the good open chart of X with a_r > 0 and L primitive big
inline ZetaResult zeta_chart(const HKVariety& X, const LineBundle& L, const CurveData& C) {
  if (X.a_max() == 0)
    throw std::domain_error("zeta_chart: a_r = 0 is a product of projective spaces");
  Classification cls = classify(L, X);
  if (cls.eta_L != 1)
    throw std::domain_error("zeta_chart: L must be primitive; reduce and reindex T");
  Int q = C.q();
  int d = X.dim(), r = X.r, t = X.t, g = C.genus, NX = X.n_max();
  long long e = (long long)(r + 1) * X.a_max() - X.a_sum();
  long long cL = cls.c_L;
  int gamma = (int)L.gamma;

  FactoredRational Zc_high = zeta_series(C, ipow(q, e + t - 1), (int)cL);
  FactoredRational Zc_low = zeta_series(C, ipow(q, e), (int)cL);
  FactoredRational Zg_high = zeta_series(C, ipow(q, r), gamma);
  FactoredRational Zg_low = zeta_series(C, 1, gamma);
  FactoredRational den = Zc_low * Zg_low;

  FactoredRational Z =
      FactoredRational(qpow(q, (long long)d * (1 - g))) * Zc_high * Zg_high / den;
  if (g > 0) {
    FactoredRational P1{correction_P1(X, L, C)}, P2{correction_P2(X, L, C)},
        P3{correction_P3(X, L, C)};
    Z = Z + FactoredRational(qpow(q, (long long)r * (1 - g))) * P3 * Zg_high / den;
    Z = Z + FactoredRational(qpow(q, (long long)(d + 1 - NX) * (1 - g))) * P2 * Zc_high / den;
    Z = Z + FactoredRational(qpow(q, (long long)(r + 1 - NX) * (1 - g))) * P2 * P3 / den;
    Z = Z + P1 / Zg_low;
  }
  ZetaResult res{Z, cls, {0, 0}};
  try {
    res.lead = leading_constant(cls, X, C);
  } catch (const std::domain_error&) {
    res.has_lead = false;  // pole exponent not integral, no closed constant
  }
  return res;
}

// any big class with a_r > 0: reduce to the primitive class and reindex T
inline ZetaResult zeta_chart_general(const HKVariety& X, const LineBundle& L,
                                     const CurveData& C) {
  Classification cls = classify(L, X);
  ZetaResult res = zeta_chart(X, cls.primitive, C);
  res.Z = res.Z.substituted(1, (int)cls.eta_L);
  res.cls = cls;
  try {
    res.lead = leading_constant(cls, X, C);
  } catch (const std::domain_error&) {
    res.lead = {0, 0};  // pole exponent not integral, no closed constant
    res.has_lead = false;
  }
  return res;
}

// Z_{P^n}(T): T^d coefficient counts points of height q^d (genus 0)
inline FactoredRational projective_zeta(int n, const CurveData& C) {
  if (C.genus != 0)
    throw std::domain_error("projective_zeta: closed form restricted to genus 0");
  Int q = C.q();
  Int Q = ipow(q, n + 1);
  // (Q - 1)/(q - 1) * (1 - q T)/(1 - Q T)
  ratpoly::P num = {Rat(Q - 1, q - 1), Rat(-(Q - 1), q - 1) * Rat(q)};
  return FactoredRational(num) * FactoredRational::geometric(Q, 1);
}

// zeta of the product X = P^r x P^{t-1} (a_r = 0): factor substitution
inline ZetaResult zeta_product(const HKVariety& X, const LineBundle& L, const CurveData& C) {
  if (X.a_max() != 0) throw std::domain_error("zeta_product: needs a_r = 0");
  Classification cls = classify(L, X);
  if (L.xi <= 0) throw std::domain_error("zeta_product: product case needs xi > 0");
  FactoredRational Z = projective_zeta(X.r, C).substituted(1, (int)L.gamma) *
                       projective_zeta(X.t - 1, C).substituted(1, (int)L.xi);
  return {Z, cls, leading_constant(cls, X, C)};
}

// zeta of the chart relative to the anticanonical class, any eta_X
inline ZetaResult anticanonical_zeta(const HKVariety& X, const CurveData& C) {
  LineBundle K = anticanonical(X);
  int eta = X.eta();
  LineBundle L0{K.gamma / eta, K.xi / eta};
  ZetaResult res;
  if (X.a_max() > 0) {
    res = zeta_chart(X, L0, C);
    res.Z = res.Z.substituted(1, eta);
  } else {
    // zeta_{U,-K}(s) = zeta_{X,L0}(eta s) minus the complement's zeta
    ZetaResult prod = zeta_product(X, L0, C);
    res.cls = prod.cls;
    res.lead = prod.lead;
    FactoredRational full = prod.Z.substituted(1, eta);
    if (X.r == 1) {
      res.Z = full - projective_zeta(X.t - 1, C).substituted(1, X.t);
    } else {
      HKVariety sub(X.r - 1, X.t, std::vector<int>(X.r - 1, 0));
      ZetaResult s2 = zeta_product(sub, L0, C);
      res.Z = full - s2.Z.substituted(1, eta);
    }
  }
  // the anticanonical constant of the main theorem: the limit at s = 1 of
  // (s-1)^2 zeta, i.e. eta^{-2} times the primitive-class constant
  res.lead.value /= Rat((long long)eta * eta);
  res.cls = classify(K, X);
  return res;
}

// corollary form: the M-slope of the counting asymptotics
// N(U, H_{-K}, q^M) ~ C_1 M q^M with C_1 = eta_X * (pole constant) * log(q)^2
inline ScaledConstant anticanonical_slope(const HKVariety& X, const CurveData& C) {
  ZetaResult r = anticanonical_zeta(X, C);
  return {r.lead.value * X.eta(), r.lead.log_exp + 2};
}

// Q_L(M): the exact residue class sums of the counting theorems
struct QLValue {
  ScaledConstant value;  // partial sum (cases 2, 3) or the slope constant (case 1)
  Rat tail_bound = 0;    // exact geometric bound on the truncated remainder
  int case_id = 1;       // 1: A=B, 2: A<B, 3: A>B
};

inline QLValue Q_L_formula(const HKVariety& X, const LineBundle& L, long long M,
                           const CurveData& C, int cutoff = 12) {
  Classification cls = classify(L, X);
  Int q = C.q();
  Rat h(C.class_number());
  int g = C.genus, r = X.r, t = X.t, NX = X.n_max();
  if (cls.b == 2) {
    // slope of Q_L(M) = C_L M + periodic: C_L = eta_L * pole constant
    ScaledConstant lead = leading_constant(cls, X, C);
    return {{lead.value * cls.eta_L, lead.log_exp + 2}, 0, 1};
  }
  if (g != 0)
    throw std::domain_error("Q_L_formula: divisor sums implemented for genus 0 only");
  if (M % cls.eta_L != 0) return {{0, 0}, 0, cls.A < cls.B ? 2 : 3};
  long long M0 = M / cls.eta_L;
  long long gamma0 = cls.primitive.gamma;
  long long c0 = gamma0 * X.a_max() + cls.primitive.xi;
  long long e = (long long)(r + 1) * X.a_max() - X.a_sum();

  auto inv_mod = [](long long a, long long n) {
    a %= n;
    if (a < 0) a += n;
    for (long long x = 0; x < n; ++x)
      if ((a * x) % n == 1 % n) return x;
    throw std::domain_error("Q_L_formula: residues not coprime");
  };
  auto need_int = [](const Rat& x) {
    if (denominator(x) != 1)
      throw std::domain_error("Q_L_formula: non-integer height exponent unsupported");
    return x.convert_to<long long>();
  };

  int m, b;           // the convolved pair (N~_m * F_b)
  long long mod, res; // arithmetic progression deg(D) = res mod `mod`
  long long x;        // per-degree decay exponent
  Rat front;
  int case_id;
  if (cls.A < cls.B) {
    case_id = 2;
    m = NX - 1;
    b = r + 1 - NX;
    mod = c0;
    res = (M0 % mod) * inv_mod(gamma0, mod) % mod;
    x = need_int(Rat(L.gamma) * cls.B - (r - NX + 1));
    front = qpow(q, (long long)(X.dim() + 2 - NX) * (1 - g)) * h /
            (zeta_value(C, t) * Rat(q - 1));
  } else {
    case_id = 3;
    m = t - 1;
    b = 0;
    mod = gamma0;
    res = (M0 % mod) * inv_mod(c0, mod) % mod;
    x = need_int(Rat(cls.c_L) * cls.A - e);
    front = qpow(q, (long long)(r + 1) * (1 - g)) * h /
            (zeta_value(C, r + 1) * Rat(q - 1));
  }

  Rat sum = 0;
  for (long long n = res % mod; n <= cutoff; n += mod)
    for (const Divisor& D : effective_divisors(C, (int)n)) {
      Rat conv = convolve(
          [&](const Divisor& E) { return Rat(N_tilde(E, m, C)); },
          [&](const Divisor& E) { return F_m(E, b, C); }, D);
      sum += conv * qpow(q, -x * n);
    }
  // term bound: sum_{deg = n} (N~_m * F_b)(D) <= #Div(n) q^{m(n+1)}
  //           <= 2 q^m (q^{m+1-x})^n, summable when x > m + 1
  Rat tail = 0;
  if (x <= m + 1)
    throw std::domain_error("Q_L_formula: no geometric tail bound at this exponent");
  Rat rho = qpow(q, (long long)(m + 1 - x));
  tail = abs(front) * Rat(2) * qpow(q, m) * rpow(rho, cutoff + 1) / (1 - rho);
  return {{front * sum, 0}, tail, case_id};
}

}  // namespace hkzeta
