#pragma once

// Combinatorial geometry of the varieties X_d(a_1,...,a_r): Picard lattice
// invariants, the anticanonical class, bigness, the expected leading
// exponents a(L) and pole orders b(L), the alpha invariant, and the
// stratification into simpler pieces used for independent point counts.
//
// X_d(a) sits in P^{rt} x P^{t-1} (d = r + t - 1, 0 <= a_1 <= ... <= a_r)
// cut out by x_{mj} y_n^{a_j} = x_{nj} y_m^{a_j}; Pic X = Z h + Z f and a
// class L = gamma h + xi f is big iff gamma > 0 and xi > -gamma a_r.

#include "hkzeta/exact.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkzeta {

struct HKVariety {
  int r = 1, t = 2;
  std::vector<int> a;  // weakly increasing, size r, entries >= 0

  HKVariety() { a = {0}; }
  HKVariety(int r_, int t_, std::vector<int> a_) : r(r_), t(t_), a(std::move(a_)) {
    if (r < 1 || t < 2 || (int)a.size() != r)
      throw std::domain_error("HKVariety: need r >= 1, t >= 2, |a| = r");
    for (int i = 0; i < r; ++i)
      if (a[i] < 0 || (i && a[i] < a[i - 1]))
        throw std::domain_error("HKVariety: weights must be weakly increasing and >= 0");
  }

  int dim() const { return r + t - 1; }
  int a_sum() const { return std::accumulate(a.begin(), a.end(), 0); }
  int a_max() const { return a.back(); }
  // number of maximal weights
  int n_max() const {
    int n = 0;
    for (int w : a)
      if (w == a.back()) ++n;
    return n;
  }
  int eta() const { return std::gcd(r + 1, t - a_sum()); }

  std::string str() const {
    std::string s = "HK(r=" + std::to_string(r) + ",t=" + std::to_string(t) + ";a=";
    for (int i = 0; i < r; ++i) s += (i ? "," : "") + std::to_string(a[i]);
    return s + ")";
  }
};

struct LineBundle {
  long long gamma = 0, xi = 0;
  friend bool operator==(const LineBundle& a, const LineBundle& b) {
    return a.gamma == b.gamma && a.xi == b.xi;
  }
};

inline LineBundle anticanonical(const HKVariety& X) {
  return {X.r + 1, X.t - X.a_sum()};
}

inline bool is_big(const LineBundle& L, const HKVariety& X) {
  return L.gamma > 0 && L.xi > -L.gamma * X.a_max();
}

// alpha-invariant 1/((r+1)((r+1)a_r + t - |a|)); equals the expected volume
// normalization of the anticanonical class
inline Rat alpha_star(const HKVariety& X) {
  long long c = (long long)(X.r + 1) * X.a_max() + X.t - X.a_sum();
  if (c <= 0) throw std::domain_error("alpha_star: anticanonical class not big");
  return Rat(1, (long long)(X.r + 1) * c);
}

// Comparison data for a big class L: the two candidate growth exponents
//   A_L = (r+1)/gamma,   B_L = ((r+1)a_r - |a| + t)/(gamma a_r + xi),
// a(L) = max of the two, b(L) = 2 exactly when they agree (else 1), and the
// secondary exponent bounding the error term.
struct Classification {
  Rat A, B, a;
  int b;
  Rat a_second;       // a'(L) for a_r > 0, a''(L) for a_r = 0
  long long eta_L;    // gcd(gamma, xi): L = eta_L * primitive
  long long c_L;      // gamma a_r + xi
  LineBundle primitive;
};

inline Classification classify(const LineBundle& L, const HKVariety& X) {
  if (!is_big(L, X)) throw std::domain_error("classify: L is not big");
  Classification c;
  long long r1 = X.r + 1;
  c.c_L = L.gamma * X.a_max() + L.xi;
  c.A = Rat(r1, L.gamma);
  c.B = Rat(r1 * X.a_max() - X.a_sum() + X.t, c.c_L);
  c.a = std::max(c.A, c.B);
  c.b = (c.A == c.B) ? 2 : 1;
  c.eta_L = std::gcd(L.gamma, L.xi < 0 ? -L.xi : L.xi);
  c.primitive = {L.gamma / c.eta_L, L.xi / c.eta_L};
  if (X.a_max() > 0) {
    if (c.A == c.B)
      c.a_second = std::max(c.A - Rat(1, L.gamma), c.B - Rat(1, c.c_L));
    else if (c.A < c.B)
      c.a_second = std::max(c.A, c.B - Rat(1, c.c_L));
    else
      c.a_second = std::max(c.A - Rat(1, L.gamma), c.B);
  } else {
    // product case: half-exponents come from the square root error term in
    // the projective space counts
    if (c.A == c.B)
      c.a_second = std::max(Rat(1, 2 * L.gamma), Rat(1, 2 * L.xi));
    else if (c.A < c.B)
      c.a_second = std::max(c.A, Rat(1, 2 * L.xi));
    else
      c.a_second = std::max(Rat(1, 2 * L.gamma), c.B);
  }
  return c;
}

// Strata of the decomposition of X(K).  Projective pieces carry the
// standard height raised to height_exp; good open pieces are the dense
// affine charts U of (possibly smaller) varieties of the same weight type,
// with the restricted class in the same (gamma, xi) coordinates.
struct Stratum {
  enum class Kind { projective, affine, good_open } kind;
  int n = 0;             // P^n or A^n
  long long height_exp = 1;  // projective/affine pieces only
  HKVariety variety;     // good_open only
  LineBundle bundle;     // good_open only
};

// full stratification of X(K) relative to a big class L
inline std::vector<Stratum> decompose(const HKVariety& X, const LineBundle& L) {
  if (!is_big(L, X)) throw std::domain_error("decompose: L is not big");
  std::vector<Stratum> out;
  // recursion matching the blow-down structure: a variety with a_r > 0
  // splits into a smaller variety, one affine cell, and good open charts;
  // a product (a_r = 0) splits into its base and the dense chart
  std::vector<std::pair<HKVariety, LineBundle>> stack = {{X, L}};
  while (!stack.empty()) {
    auto [V, B] = stack.back();
    stack.pop_back();
    if (V.a_max() == 0) {
      if (V.r >= 2) {
        HKVariety sub(V.r - 1, V.t, std::vector<int>(V.r - 1, 0));
        stack.push_back({sub, B});
      } else {
        out.push_back({Stratum::Kind::projective, V.t - 1, B.xi, {}, {}});
      }
      out.push_back({Stratum::Kind::good_open, 0, 0, V, B});
      continue;
    }
    if (V.r == 1) {
      out.push_back({Stratum::Kind::projective, V.t - 1, B.xi, {}, {}});
      out.push_back({Stratum::Kind::affine, 1, B.gamma, {}, {}});
      for (int t2 = 2; t2 <= V.t; ++t2)
        out.push_back({Stratum::Kind::good_open, 0, 0, HKVariety(1, t2, V.a), B});
      continue;
    }
    std::vector<int> a_head(V.a.begin(), V.a.end() - 1);
    stack.push_back({HKVariety(V.r - 1, V.t, a_head), B});
    out.push_back({Stratum::Kind::affine, V.r, B.gamma, {}, {}});
    for (int t2 = 2; t2 <= V.t; ++t2)
      out.push_back({Stratum::Kind::good_open, 0, 0, HKVariety(V.r, t2, V.a), B});
  }
  return out;
}

}  // namespace hkzeta
