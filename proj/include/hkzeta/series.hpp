#pragma once

// Rational generating functions kept in factored form
//
//     num(T) * prod (1 - c T^m)^{-k}  / gden(T)
//
// with exact rational coefficients.  Multiplication and division act on the
// exponent map, so common factors cancel identically.  The optional general
// denominator gden absorbs polynomials with no (1 - c T^m) factorization
// (zeta numerators of positive genus curves); expansion still works for
// those, but exact asymptotics require an empty gden.
//
// Asymptotics: every root of (1 - c T^m) has modulus c^{-1/m}.  Factors
// sharing that modulus are merged to a common (c', lcm m) before an exact
// partial fraction decomposition, after which the coefficient sequence
// splits into residue classes mod the dominant period, each carried by a
// polynomial.

#include "hkzeta/exact.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hkzeta {

// dense polynomial helpers over Rat
namespace ratpoly {

using P = std::vector<Rat>;

inline void trim(P& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int deg(const P& a) { return (int)a.size() - 1; }

inline P add(const P& a, const P& b) {
  P r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}
inline P sub(const P& a, const P& b) {
  P r(std::max(a.size(), b.size()), Rat(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}
inline P mul(const P& a, const P& b) {
  if (a.empty() || b.empty()) return {};
  P r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}
inline P scale(P a, const Rat& s) {
  for (Rat& c : a) c *= s;
  trim(a);
  return a;
}
inline Rat eval(const P& a, const Rat& x) {
  Rat r = 0;
  for (int i = deg(a); i >= 0; --i) r = r * x + a[i];
  return r;
}
// substitute T -> c T^m
inline P subst(const P& a, const Rat& c, int m) {
  if (a.empty()) return {};
  P r(((size_t)deg(a)) * m + 1, Rat(0));
  Rat pw = 1;
  for (size_t i = 0; i < a.size(); ++i) {
    r[i * m] = a[i] * pw;
    pw *= c;
  }
  trim(r);
  return r;
}
inline P one_minus(const Rat& c, int m) {  // 1 - c T^m
  P r(m + 1, Rat(0));
  r[0] = 1;
  r[m] = -c;
  return r;
}

}  // namespace ratpoly

// factor (1 - c T^m), c a positive integer
struct FactorKey {
  Int c;
  int m;
  friend bool operator<(const FactorKey& a, const FactorKey& b) {
    if (a.m != b.m) return a.m < b.m;
    return a.c < b.c;
  }
  friend bool operator==(const FactorKey& a, const FactorKey& b) {
    return a.c == b.c && a.m == b.m;
  }
};

class FactoredRational {
 public:
  FactoredRational() = default;
  explicit FactoredRational(const Rat& c) : num_{c} { ratpoly::trim(num_); }
  explicit FactoredRational(ratpoly::P num) : num_(std::move(num)) {
    ratpoly::trim(num_);
  }

  // (1 - c T^m)^{-k}
  static FactoredRational geometric(const Int& c, int m, int k = 1) {
    FactoredRational r(Rat(1));
    r.bump({c, m}, k);
    return r;
  }

  const ratpoly::P& num() const { return num_; }
  const std::map<FactorKey, int>& factors() const { return fac_; }
  const ratpoly::P& general_den() const { return gden_; }
  bool has_general_den() const { return !gden_.empty(); }
  bool is_zero() const { return num_.empty(); }

  friend FactoredRational operator*(const FactoredRational& a, const FactoredRational& b) {
    FactoredRational r;
    r.num_ = ratpoly::mul(a.num_, b.num_);
    r.fac_ = a.fac_;
    for (auto& [k, e] : b.fac_) r.bump(k, e);
    r.gden_ = mul_gden(a.gden_, b.gden_);
    if (r.is_zero()) {
      r.fac_.clear();
      r.gden_.clear();
    }
    return r;
  }
  friend FactoredRational operator/(const FactoredRational& a, const FactoredRational& b) {
    if (b.is_zero()) throw std::domain_error("FactoredRational: division by zero");
    if (a.is_zero()) return FactoredRational(ratpoly::P{});
    FactoredRational r;
    // b.num must be a nonzero constant or it moves to the general denominator
    if (ratpoly::deg(b.num_) == 0) {
      r.num_ = ratpoly::scale(a.num_, 1 / b.num_[0]);
      r.gden_ = mul_gden(a.gden_, {});
    } else {
      r.num_ = a.num_;
      r.gden_ = mul_gden(a.gden_, b.num_);
    }
    if (!b.gden_.empty()) r.num_ = ratpoly::mul(r.num_, b.gden_);
    r.fac_ = a.fac_;
    for (auto& [k, e] : b.fac_) r.bump(k, -e);
    return r;
  }
  friend FactoredRational operator+(const FactoredRational& a, const FactoredRational& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    FactoredRational an = a.folded(), bn = b.folded();
    // union denominator
    std::map<FactorKey, int> common = an.fac_;
    for (auto& [k, e] : bn.fac_) {
      int& c = common[k];
      c = std::max(c, e);
    }
    auto lift = [&](const FactoredRational& x, const ratpoly::P& other_gden) {
      ratpoly::P n = x.num_;
      for (auto& [k, e] : common) {
        int extra = e - (x.fac_.count(k) ? x.fac_.at(k) : 0);
        for (int i = 0; i < extra; ++i)
          n = ratpoly::mul(n, ratpoly::one_minus(Rat(k.c), k.m));
      }
      if (!other_gden.empty()) n = ratpoly::mul(n, other_gden);
      return n;
    };
    FactoredRational r;
    r.num_ = ratpoly::add(lift(an, bn.gden_), lift(bn, an.gden_));
    r.fac_ = common;
    r.gden_ = mul_gden(an.gden_, bn.gden_);
    if (r.num_.empty()) return FactoredRational(ratpoly::P{});
    return r;
  }
  friend FactoredRational operator-(const FactoredRational& a, const FactoredRational& b) {
    return a + b * FactoredRational(Rat(-1));
  }

  // substitute T -> c T^m (c a positive integer, m >= 1)
  FactoredRational substituted(const Int& c, int m) const {
    FactoredRational r;
    r.num_ = ratpoly::subst(num_, Rat(c), m);
    r.gden_ = ratpoly::subst(gden_, Rat(c), m);
    for (auto& [k, e] : fac_) r.fac_[{k.c * ipow(c, k.m), k.m * m}] = e;
    return r;
  }

  // first N + 1 series coefficients
  std::vector<Rat> expand(int N) const {
    std::vector<Rat> a(N + 1, Rat(0));
    for (int i = 0; i <= N && i < (int)num_.size(); ++i) a[i] = num_[i];
    for (auto& [k, e] : fac_) {
      Rat c(k.c);
      for (int rep = 0; rep < e; ++rep)  // divide by (1 - c T^m)
        for (int i = k.m; i <= N; ++i) a[i] += c * a[i - k.m];
      for (int rep = 0; rep < -e; ++rep)  // multiply by (1 - c T^m)
        for (int i = N; i >= k.m; --i) a[i] -= c * a[i - k.m];
    }
    if (!gden_.empty()) {
      if (gden_[0] == 0) throw std::domain_error("FactoredRational: gden(0) = 0");
      Rat g0 = gden_[0];
      for (int i = 0; i <= N; ++i) {
        Rat s = a[i];
        for (int j = 1; j <= i && j < (int)gden_.size(); ++j) s -= gden_[j] * a[i - j];
        a[i] = s / g0;
      }
    }
    return a;
  }

  Rat coefficient(int n) const { return expand(n)[n]; }

  // value at T = t; throws if some factor vanishes there
  Rat eval(const Rat& t) const {
    Rat v = ratpoly::eval(num_, t);
    for (auto& [k, e] : fac_) {
      Rat f = 1 - Rat(k.c) * rpow(t, k.m);
      if (f == 0) throw std::domain_error("FactoredRational: pole at evaluation point");
      v /= rpow(f, e);
    }
    if (!gden_.empty()) {
      Rat g = ratpoly::eval(gden_, t);
      if (g == 0) throw std::domain_error("FactoredRational: gden pole at evaluation point");
      v /= g;
    }
    return v;
  }

  // move factors with negative exponent into the numerator polynomial
  FactoredRational folded() const {
    FactoredRational r;
    r.num_ = num_;
    r.gden_ = gden_;
    for (auto& [k, e] : fac_) {
      if (e > 0)
        r.fac_[k] = e;
      else
        for (int i = 0; i < -e; ++i)
          r.num_ = ratpoly::mul(r.num_, ratpoly::one_minus(Rat(k.c), k.m));
    }
    return r;
  }

  friend bool operator==(const FactoredRational& a, const FactoredRational& b) {
    FactoredRational d = a - b;
    return d.is_zero();
  }

 private:
  ratpoly::P num_ = {Rat(1)};
  std::map<FactorKey, int> fac_;  // exponent k: contributes (1 - cT^m)^{-k}
  ratpoly::P gden_;               // empty means 1

  void bump(const FactorKey& k, int e) {
    auto it = fac_.find(k);
    if (it == fac_.end()) {
      if (e) fac_[k] = e;
    } else {
      it->second += e;
      if (it->second == 0) fac_.erase(it);
    }
  }
  static ratpoly::P mul_gden(const ratpoly::P& a, const ratpoly::P& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return ratpoly::mul(a, b);
  }
};

// exact dense linear solve, A x = rhs, A square nonsingular
inline std::vector<Rat> solve_linear(std::vector<std::vector<Rat>> A, std::vector<Rat> rhs) {
  size_t n = A.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("solve_linear: singular system");
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    Rat d = A[col][col];
    for (size_t j = col; j < n; ++j) A[col][j] /= d;
    rhs[col] /= d;
    for (size_t i = 0; i < n; ++i) {
      if (i == col || A[i][col] == 0) continue;
      Rat f = A[i][col];
      for (size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
      rhs[i] -= f * rhs[col];
    }
  }
  return rhs;
}

// Exact asymptotic data for the coefficient sequence of a FactoredRational.
// After merging, denominator groups have pairwise distinct root moduli; the
// full partial fraction decomposition is retained, so coefficient(n)
// reconstructs the sequence exactly for n beyond the polynomial part.
struct AsymptoticExpansion {
  struct Term {
    Int c;
    int m;
    int order;                        // k: (1 - c T^m)^{-k}
    std::vector<ratpoly::P> class_u;  // per residue j < m: poly Q_j(u), coeff contribution Q_j(u) c^u at n = j + u m
  };

  bool finitely_supported = false;
  ratpoly::P poly_part;      // W(T), finite support correction
  std::vector<Term> terms;   // sorted by decreasing root modulus growth c^{1/m}
  const Term* dominant() const { return terms.empty() ? nullptr : &terms[0]; }
  bool has_secondary() const { return terms.size() > 1; }

  // growth comparison: c1^{1/m1} > c2^{1/m2}  <=>  c1^{m2} > c2^{m1}
  static int cmp_growth(const Int& c1, int m1, const Int& c2, int m2) {
    Int a = ipow(c1, m2), b = ipow(c2, m1);
    return a > b ? 1 : (a < b ? -1 : 0);
  }

  Rat coefficient(long n) const {
    Rat total = 0;
    if (n >= 0 && n < (long)poly_part.size()) total += poly_part[n];
    for (const Term& t : terms) {
      long j = n % t.m;
      long u = n / t.m;
      if (u < 0) continue;
      total += ratpoly::eval(t.class_u[j], Rat(u)) * Rat(ipow(t.c, u));
    }
    return total;
  }

  // dominant per-class polynomial rewritten in n with growth base q:
  // contribution = S_j(n) q^{alpha n} where c = q^{alpha m}; requires alpha
  // to be a nonnegative integer
  ratpoly::P dominant_class_in_n(int j, const Int& q) const {
    if (terms.empty()) throw std::domain_error("no dominant term");
    const Term& t = terms[0];
    long alpha = 0;
    while (ipow(q, alpha * t.m) < t.c) ++alpha;
    if (ipow(q, alpha * t.m) != t.c)
      throw std::domain_error("dominant c is not an integer power of q^m");
    // S_j(n) = Q_j((n - j)/m) * q^{-alpha j}
    ratpoly::P lin = {Rat(-j, t.m), Rat(1, t.m)};  // u = (n - j)/m
    ratpoly::P s = {Rat(0)};
    ratpoly::P pw = {Rat(1)};
    const ratpoly::P& Q = t.class_u[j];
    for (size_t i = 0; i < Q.size(); ++i) {
      s = ratpoly::add(s, ratpoly::scale(pw, Q[i]));
      pw = ratpoly::mul(pw, lin);
    }
    return ratpoly::scale(s, qpow(q, -alpha * j));
  }
};

inline AsymptoticExpansion asymptotics(const FactoredRational& fr) {
  FactoredRational f = fr.folded();
  if (f.has_general_den())
    throw std::domain_error("asymptotics: denominator not in factored form");

  AsymptoticExpansion out;
  if (f.factors().empty()) {
    out.finitely_supported = true;
    out.poly_part = f.num();
    return out;
  }

  // group factors by root modulus and merge each group to (c', M)
  std::vector<std::pair<FactorKey, int>> fac(f.factors().begin(), f.factors().end());
  for (auto& [k, e] : fac)
    if (e < 0) throw std::logic_error("asymptotics: negative exponent after folding");
  std::vector<std::vector<size_t>> groups;
  std::vector<char> used(fac.size(), 0);
  for (size_t i = 0; i < fac.size(); ++i) {
    if (used[i]) continue;
    groups.push_back({i});
    used[i] = 1;
    for (size_t j = i + 1; j < fac.size(); ++j)
      if (!used[j] && AsymptoticExpansion::cmp_growth(fac[i].first.c, fac[i].first.m,
                                                      fac[j].first.c, fac[j].first.m) == 0) {
        groups.back().push_back(j);
        used[j] = 1;
      }
  }

  ratpoly::P num = f.num();
  struct Merged {
    Int c;
    int m;
    int order;
  };
  std::vector<Merged> den;
  for (auto& g : groups) {
    int M = 1;
    for (size_t i : g) M = std::lcm(M, fac[i].first.m);
    Int cM = ipow(fac[g[0]].first.c, M / fac[g[0]].first.m);
    int order = 0;
    for (size_t i : g) {
      const FactorKey& k = fac[i].first;
      Int ci = ipow(k.c, M / k.m);
      if (ci != cM) throw std::logic_error("asymptotics: inconsistent merge");
      order += fac[i].second;
      // (1 - cM T^M)/(1 - c T^m) = sum_{j<M/m} (c T^m)^j
      ratpoly::P quot(((size_t)(M / k.m - 1)) * k.m + 1, Rat(0));
      Rat pw = 1;
      for (int j = 0; j < M / k.m; ++j) {
        quot[(size_t)j * k.m] = pw;
        pw *= Rat(k.c);
      }
      for (int rep = 0; rep < fac[i].second; ++rep) num = ratpoly::mul(num, quot);
    }
    den.push_back({cM, M, order});
  }
  std::sort(den.begin(), den.end(), [](const Merged& a, const Merged& b) {
    return AsymptoticExpansion::cmp_growth(a.c, a.m, b.c, b.m) > 0;
  });

  // partial fractions: num = W * prod_g (1-c_g T^{M_g})^{k_g}
  //                        + sum_{g,i<=k_g} P_{g,i} * prod / (1-c_g T^{M_g})^i
  int D = 0;
  for (auto& d : den) D += d.m * d.order;
  int dn = ratpoly::deg(num);
  int wdeg = dn - D;  // degree of polynomial part, < 0 if absent
  int unknowns = D + (wdeg >= 0 ? wdeg + 1 : 0);
  int rows = std::max(dn + 1, D);

  ratpoly::P full = {Rat(1)};
  for (auto& d : den)
    for (int i = 0; i < d.order; ++i)
      full = ratpoly::mul(full, ratpoly::one_minus(Rat(d.c), d.m));

  std::vector<std::vector<Rat>> A(rows, std::vector<Rat>(unknowns, Rat(0)));
  std::vector<Rat> rhs(rows, Rat(0));
  for (int i = 0; i <= dn; ++i) rhs[i] = num[i];
  int col = 0;
  std::vector<std::array<int, 3>> layout;  // (group, order i, offset j) per column block
  for (size_t g = 0; g < den.size(); ++g) {
    for (int i = 1; i <= den[g].order; ++i) {
      // multiplier polynomial: full / (1 - c_g T^{M_g})^i
      ratpoly::P mult = {Rat(1)};
      for (size_t h = 0; h < den.size(); ++h) {
        int e = den[h].order - (h == g ? i : 0);
        for (int rep = 0; rep < e; ++rep)
          mult = ratpoly::mul(mult, ratpoly::one_minus(Rat(den[h].c), den[h].m));
      }
      for (int j = 0; j < den[g].m; ++j, ++col)
        for (int s = 0; s < (int)mult.size(); ++s)
          if (j + s < rows) A[j + s][col] += mult[s];
    }
  }
  if (wdeg >= 0)
    for (int j = 0; j <= wdeg; ++j, ++col)
      for (int s = 0; s < (int)full.size(); ++s)
        if (j + s < rows) A[j + s][col] += full[s];

  std::vector<Rat> sol = solve_linear(std::move(A), std::move(rhs));

  col = 0;
  for (auto& d : den) {
    AsymptoticExpansion::Term term;
    term.c = d.c;
    term.m = d.m;
    term.order = d.order;
    term.class_u.assign(d.m, ratpoly::P{});
    for (int i = 1; i <= d.order; ++i)
      for (int j = 0; j < d.m; ++j, ++col) {
        // P_i coefficient at T^j feeds class j:
        // [T^n] T^j/(1-cT^M)^i = binom(u+i-1, i-1) c^u, n = j + uM
        if (sol[col] == 0) continue;
        ratpoly::P b = {Rat(1)};  // binom(u+i-1, i-1) as polynomial in u
        for (int s = 1; s < i; ++s)
          b = ratpoly::scale(ratpoly::mul(b, {Rat(s), Rat(1)}), Rat(1, s));
        term.class_u[j] = ratpoly::add(term.class_u[j], ratpoly::scale(b, sol[col]));
      }
    out.terms.push_back(std::move(term));
  }
  if (wdeg >= 0) {
    out.poly_part.assign(wdeg + 1, Rat(0));
    for (int j = 0; j <= wdeg; ++j) out.poly_part[j] = sol[col++];
  }
  return out;
}

}  // namespace hkzeta
