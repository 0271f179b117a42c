#pragma once

// Exact point counts over K = F_q(T) by exhaustive enumeration: projective
// spaces, the good open charts of the varieties X_d(a) through the explicit
// parametrization by A^d, and the full variety through its biprojective
// embedding.  These are the ground truth the closed formulas are checked
// against; everything here is brute force on purpose.

#include "hkzeta/curvedata.hpp"
#include "hkzeta/divisor.hpp"
#include "hkzeta/fq.hpp"
#include "hkzeta/hkgeom.hpp"

#include <functional>
#include <map>
#include <thread>
#include <vector>

namespace hkzeta {

// clear denominators and remove common factors: the unique representative
// of a projective point with polynomial coordinates, gcd 1 and monic first
// nonzero entry
inline std::vector<PolyFq> canonical_tuple(const std::vector<RationalFq>& v) {
  const FieldPtr* Fp = nullptr;
  for (const auto& x : v)
    if (x.field()) {
      Fp = &x.field();
      break;
    }
  if (!Fp) throw std::domain_error("canonical_tuple: empty point");
  const FieldPtr& F = *Fp;
  PolyFq l = PolyFq::constant(F, 1);  // lcm of denominators
  for (const auto& x : v)
    if (!x.is_zero()) l = (l * x.den()) / poly_gcd(l, x.den());
  std::vector<PolyFq> w;
  w.reserve(v.size());
  for (const auto& x : v)
    w.push_back(x.is_zero() ? PolyFq(F, {}) : x.num() * (l / x.den()));
  PolyFq g(F, {});
  for (const auto& p : w) g = g.is_zero() ? p : (p.is_zero() ? g : poly_gcd(g, p));
  if (g.is_zero()) throw std::domain_error("canonical_tuple: zero point");
  g = g.monic();
  int lead = 0;
  for (auto& p : w) p = p / g;
  while (w[lead].is_zero()) ++lead;
  int s = F->inv(w[lead].lead());
  for (auto& p : w) p = p.scaled(s);
  return w;
}

// log_q of the standard projective height
inline long long height_exp(const std::vector<RationalFq>& v) {
  long long h = 0;
  for (const auto& p : canonical_tuple(v)) h = std::max<long long>(h, p.degree());
  return h;
}

// point of X in the biprojective embedding P^{rt} x P^{t-1}
struct HKPoint {
  std::vector<RationalFq> xblock;  // [x_0, x_{ij}] with (i,j) row major, i in I_t, j in I_r
  std::vector<RationalFq> yblock;  // [y_1 ... y_t]
};

// image of (x_1,...,x_d) in A^d under the chart parametrization
inline HKPoint param_to_point(const HKVariety& X, const std::vector<RationalFq>& xs) {
  if ((int)xs.size() != X.dim()) throw std::domain_error("param_to_point: wrong arity");
  const FieldPtr& F = xs[0].field() ? xs[0].field() : xs[1].field();
  RationalFq one(PolyFq::constant(F, 1));
  int r = X.r, t = X.t, d = X.dim();
  HKPoint P;
  P.xblock.push_back(xs[d - 1]);  // x_0 = x_d
  for (int i = 1; i <= t; ++i)
    for (int j = 1; j <= r; ++j) {
      RationalFq val;
      if (i < t && j < r)
        val = xs[t - 1 + j - 1] * xs[i - 1].pow(X.a[j - 1]);
      else if (i == t && j < r)
        val = xs[t - 1 + j - 1];
      else if (i < t && j == r)
        val = xs[i - 1].pow(X.a[r - 1]);
      else
        val = one;
      P.xblock.push_back(val);
    }
  for (int i = 1; i < t; ++i) P.yblock.push_back(xs[i - 1]);
  P.yblock.push_back(one);
  return P;
}

inline bool satisfies_equations(const HKVariety& X, const HKPoint& P) {
  int r = X.r, t = X.t;
  auto xc = [&](int i, int j) { return P.xblock[1 + (i - 1) * r + (j - 1)]; };
  for (int j = 1; j <= r; ++j)
    for (int m = 1; m <= t; ++m)
      for (int n = m + 1; n <= t; ++n)
        if (xc(m, j) * P.yblock[n - 1].pow(X.a[j - 1]) !=
            xc(n, j) * P.yblock[m - 1].pow(X.a[j - 1]))
          return false;
  return true;
}

// H_L(P) = q^{gamma h(xblock) + xi h(yblock)}
inline long long height_exp_L(const HKPoint& P, const LineBundle& L) {
  return L.gamma * height_exp(P.xblock) + L.xi * height_exp(P.yblock);
}

// local height divisor of a chart point: deg d_L(x) = log_q H_L of its image
inline Divisor d_L_divisor(const HKVariety& X, const LineBundle& L,
                           const std::vector<RationalFq>& xs) {
  int r = X.r, t = X.t, d = X.dim();
  Divisor s1 = pole_divisor(xs[d - 1]);
  for (int i = 1; i < t; ++i) {
    Divisor pi = pole_divisor(xs[i - 1]);
    for (int j = 1; j < r; ++j)
      s1 = sup(s1, pole_divisor(xs[t - 1 + j - 1]) + X.a[j - 1] * pi);
    s1 = sup(s1, X.a[r - 1] * pi);
  }
  Divisor s2;
  for (int i = 1; i < t; ++i) s2 = sup(s2, pole_divisor(xs[i - 1]));
  return L.gamma * s1 + L.xi * s2;
}

// enumerate chart points with deg d_L <= Mmax grouped by the divisor d_L;
// the per-coordinate pole bounds Mmax/c_L (base) and Mmax/gamma (fibre)
// are implied by the sup formula
inline std::map<Divisor, Int> chart_histogram(const HKVariety& X, const LineBundle& L,
                                              const FieldPtr& F, long long Mmax,
                                              int jobs = 1) {
  if (L.gamma <= 0) throw std::domain_error("chart_histogram: need gamma > 0");
  long long cL = L.gamma * X.a_max() + L.xi;
  if (cL <= 0) throw std::domain_error("chart_histogram: need gamma a_r + xi > 0");
  int t = X.t, d = X.dim();
  std::vector<std::vector<RationalFq>> pool(d);
  for (int i = 0; i < d; ++i) {
    // base coordinates cost c_L per pole degree; fibre coordinates cost
    // gamma, except that for xi < 0 a fibre pole can hide under a base
    // pole of the same place, where it only costs c_L/a_r
    long long B = (i < t - 1)
                      ? Mmax / cL
                      : std::max(Mmax / L.gamma, X.a_max() * Mmax / cL);
    pool[i] = enumerate_rational_functions(F, (int)B);
  }
  int nthreads = std::max(1, jobs);
  std::vector<std::map<Divisor, Int>> part(nthreads);
  auto work = [&](int tid) {
    std::vector<RationalFq> xs(d);
    std::function<void(int)> rec = [&](int i) {
      if (i == d) {
        Divisor D = d_L_divisor(X, L, xs);
        if (D.degree() <= Mmax) part[tid][D] += 1;
        return;
      }
      for (const auto& x : pool[i]) {
        xs[i] = x;
        rec(i + 1);
      }
    };
    for (size_t k = tid; k < pool[0].size(); k += nthreads) {
      xs[0] = pool[0][k];
      rec(1);
    }
  };
  if (nthreads == 1) {
    work(0);
  } else {
    std::vector<std::thread> th;
    for (int i = 0; i < nthreads; ++i) th.emplace_back(work, i);
    for (auto& t_ : th) t_.join();
  }
  std::map<Divisor, Int> out;
  for (auto& p : part)
    for (auto& [D, c] : p) out[D] += c;
  return out;
}

// counts per M of chart points with deg d_L(x) = M, 0 <= M <= Mmax
inline std::vector<Int> count_chart(const HKVariety& X, const LineBundle& L,
                                    const FieldPtr& F, long long Mmax, int jobs = 1) {
  std::vector<Int> out(Mmax + 1, Int(0));
  for (auto& [D, c] : chart_histogram(X, L, F, Mmax, jobs)) out[D.degree()] += c;
  return out;
}

// all projective points of P^n(K) of height <= q^dmax, as canonical tuples
template <class Fn>
inline void enumerate_projective(const FieldPtr& F, int n, int dmax, Fn&& f) {
  int q = F->q();
  long long nall = 1;  // polynomials of degree <= dmax
  for (int i = 0; i <= dmax; ++i) nall *= q;
  std::vector<PolyFq> all;
  all.reserve(nall);
  {
    std::vector<int> c(dmax + 1, 0);
    for (long long code = 0; code < nall; ++code) {
      long long tt = code;
      for (int i = 0; i <= dmax; ++i) {
        c[i] = (int)(tt % q);
        tt /= q;
      }
      all.emplace_back(F, c);
    }
  }
  std::vector<PolyFq> tup(n + 1, PolyFq(F, {}));
  // leading index k: previous coordinates zero, coordinate k monic
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i < k; ++i) tup[i] = PolyFq(F, {});
    std::function<void(int, PolyFq)> rec = [&](int i, PolyFq g) {
      if (i == n + 1) {
        if (g.degree() == 0) f(tup);
        return;
      }
      for (const PolyFq& p : all) {
        if (i > k && !p.is_zero() && g.degree() > 0) {
          PolyFq g2 = poly_gcd(g, p);
          tup[i] = p;
          rec(i + 1, g2);
        } else if (i > k) {
          tup[i] = p;
          rec(i + 1, g);
        }
      }
    };
    // coordinate k: monic of any degree <= dmax
    for (int dk = 0; dk <= dmax; ++dk)
      for (const PolyFq& m : monic_polys_of_degree(F, dk)) {
        tup[k] = m;
        rec(k + 1, m);
      }
  }
}

// counts per d of points of P^n(K) with height exactly q^d
inline std::vector<Int> count_projective(const FieldPtr& F, int n, int dmax) {
  std::vector<Int> out(dmax + 1, Int(0));
  enumerate_projective(F, n, dmax, [&](const std::vector<PolyFq>& tup) {
    int h = 0;
    for (const PolyFq& p : tup) h = std::max(h, p.degree());
    out[h] += 1;
  });
  return out;
}

// direct enumeration of X(K) in the biprojective embedding, counted by
// height exponent M = gamma h_x + xi h_y; requires gamma, xi > 0
inline std::vector<Int> count_variety(const HKVariety& X, const LineBundle& L,
                                      const FieldPtr& F, long long Mmax) {
  if (L.gamma <= 0 || L.xi <= 0)
    throw std::domain_error("count_variety: need gamma, xi > 0 to bound the search");
  int r = X.r, t = X.t;
  std::vector<Int> out(Mmax + 1, Int(0));
  // group y points by height so the x loop can cut off early
  std::vector<std::vector<std::vector<PolyFq>>> ys_by_h(Mmax / L.xi + 1);
  enumerate_projective(F, t - 1, (int)(Mmax / L.xi), [&](const std::vector<PolyFq>& v) {
    long long h = 0;
    for (const PolyFq& p : v) h = std::max<long long>(h, p.degree());
    ys_by_h[h].push_back(v);
  });
  enumerate_projective(F, r * t, (int)(Mmax / L.gamma), [&](const std::vector<PolyFq>& xv) {
    long long hx = 0;
    for (const PolyFq& p : xv) hx = std::max<long long>(hx, p.degree());
    HKPoint P;
    for (const PolyFq& p : xv) P.xblock.emplace_back(p);
    for (long long hy = 0; hy < (long long)ys_by_h.size(); ++hy) {
      long long M = L.gamma * hx + L.xi * hy;
      if (M > Mmax) break;
      for (const auto& yv : ys_by_h[hy]) {
        P.yblock.clear();
        for (const PolyFq& p : yv) P.yblock.emplace_back(p);
        if (satisfies_equations(X, P)) out[M] += 1;
      }
    }
  });
  return out;
}

// counts for one stratum of the decomposition
inline std::vector<Int> count_stratum(const Stratum& S, const FieldPtr& F, long long Mmax,
                                      int jobs = 1) {
  std::vector<Int> out(Mmax + 1, Int(0));
  if (S.kind != Stratum::Kind::good_open && S.height_exp <= 0) {
    if (S.height_exp == 0)
      throw std::domain_error("count_stratum: height is constant on this piece");
    // restricted height < 1 off the height-1 locus: only h = 0 contributes
    out[0] = count_projective(F, S.n, 0)[0];
    if (S.kind == Stratum::Kind::affine) out[0] -= count_projective(F, S.n - 1, 0)[0];
    return out;
  }
  switch (S.kind) {
    case Stratum::Kind::projective: {
      auto c = count_projective(F, S.n, (int)(Mmax / S.height_exp));
      for (long long h = 0; h < (long long)c.size(); ++h)
        if (h * S.height_exp <= Mmax) out[h * S.height_exp] += c[h];
      break;
    }
    case Stratum::Kind::affine: {
      // A^n = P^n minus a hyperplane P^{n-1}
      auto c = count_projective(F, S.n, (int)(Mmax / S.height_exp));
      auto c0 = count_projective(F, S.n - 1, (int)(Mmax / S.height_exp));
      for (long long h = 0; h < (long long)c.size(); ++h)
        if (h * S.height_exp <= Mmax) {
          out[h * S.height_exp] += c[h];
          if (h < (long long)c0.size()) out[h * S.height_exp] -= c0[h];
        }
      break;
    }
    case Stratum::Kind::good_open: {
      auto c = count_chart(S.variety, S.bundle, F, Mmax, jobs);
      for (long long M = 0; M <= Mmax; ++M) out[M] += c[M];
      break;
    }
  }
  return out;
}

}  // namespace hkzeta
