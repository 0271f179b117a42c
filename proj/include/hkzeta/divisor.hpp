#pragma once

// Divisors on the base curve with exact support, the lattice operations on
// them (sup, floor division, subdivisor iteration), Riemann-Roch dimensions,
// the divisor Moebius function and convolution, and the point counting
// functions built from them.

#include "hkzeta/curvedata.hpp"
#include "hkzeta/exact.hpp"
#include "hkzeta/fq.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hkzeta {

// A place of K: the infinite place of F_q(T), a finite place given by a
// monic irreducible, or an abstract labelled place of a supplied curve.
struct Place {
  enum class Kind { infinite, finite, abstract_ } kind = Kind::infinite;
  PolyFq prime;       // finite only
  int deg = 1;        // residue degree f_v
  long long index = 0;  // abstract only, 0-based within its degree

  static Place infinity() { return Place{}; }
  static Place from_prime(PolyFq p) {
    Place v;
    v.kind = Kind::finite;
    v.deg = p.degree();
    v.prime = std::move(p);
    return v;
  }
  static Place abstract(int deg, long long index) {
    Place v;
    v.kind = Kind::abstract_;
    v.deg = deg;
    v.index = index;
    return v;
  }

  int residue_degree() const { return deg; }

  friend bool operator==(const Place& a, const Place& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Kind::infinite: return true;
      case Kind::finite: return a.prime == b.prime;
      default: return a.deg == b.deg && a.index == b.index;
    }
  }
  // infinity first, then finite by graded order, then abstract
  friend bool operator<(const Place& a, const Place& b) {
    if (a.kind != b.kind) return (int)a.kind < (int)b.kind;
    switch (a.kind) {
      case Kind::infinite: return false;
      case Kind::finite: return a.prime < b.prime;
      default:
        if (a.deg != b.deg) return a.deg < b.deg;
        return a.index < b.index;
    }
  }

  std::string str() const {
    switch (kind) {
      case Kind::infinite: return "inf";
      case Kind::finite: return prime.str();
      default: return "p_" + std::to_string(deg) + "_" + std::to_string(index);
    }
  }
};

// Finitely supported Z-valued function on places; zero coefficients are
// never stored.
class Divisor {
 public:
  Divisor() = default;

  const std::map<Place, long long>& support() const { return c_; }
  long long v(const Place& p) const {
    auto it = c_.find(p);
    return it == c_.end() ? 0 : it->second;
  }
  void set(const Place& p, long long m) {
    if (m == 0)
      c_.erase(p);
    else
      c_[p] = m;
  }
  void add(const Place& p, long long m) { set(p, v(p) + m); }

  bool is_zero() const { return c_.empty(); }
  bool is_effective() const {
    for (auto& [p, m] : c_)
      if (m < 0) return false;
    return true;
  }
  long long degree() const {
    long long d = 0;
    for (auto& [p, m] : c_) d += (long long)p.residue_degree() * m;
    return d;
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (auto& [p, m] : b.c_) r.add(p, m);
    return r;
  }
  friend Divisor operator-(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (auto& [p, m] : b.c_) r.add(p, -m);
    return r;
  }
  friend Divisor operator*(long long s, const Divisor& a) {
    Divisor r;
    if (s != 0)
      for (auto& [p, m] : a.c_) r.set(p, s * m);
    return r;
  }

  // coefficientwise max
  friend Divisor sup(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (auto& [p, m] : b.c_)
      if (m > r.v(p)) r.set(p, m);
    return r;
  }
  // coefficientwise floor of D/n, n >= 1
  Divisor floor_div(long long n) const {
    Divisor r;
    for (auto& [p, m] : c_) {
      long long f = m >= 0 ? m / n : -((-m + n - 1) / n);
      r.set(p, f);
    }
    return r;
  }

  // a <= b coefficientwise
  friend bool leq(const Divisor& a, const Divisor& b) {
    for (auto& [p, m] : a.c_)
      if (m > b.v(p)) return false;
    for (auto& [p, m] : b.c_)
      if (m < 0 && a.v(p) > m) return false;
    return true;
  }

  friend bool operator==(const Divisor& a, const Divisor& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
  friend bool operator<(const Divisor& a, const Divisor& b) { return a.c_ < b.c_; }

  std::string str() const {
    if (c_.empty()) return "0";
    std::string s;
    for (auto& [p, m] : c_) {
      if (!s.empty()) s += " + ";
      if (m != 1) s += std::to_string(m) + "*";
      s += "[" + p.str() + "]";
    }
    return s;
  }

 private:
  std::map<Place, long long> c_;
};

// pole divisor (x)_inf of x in F_q(T)
inline Divisor pole_divisor(const RationalFq& x) {
  Divisor D;
  if (x.is_zero()) return D;
  for (auto& [p, m] : factor_poly(x.den())) D.set(Place::from_prime(p), m);
  int e = x.num().degree() - x.den().degree();
  if (e > 0) D.set(Place::infinity(), e);
  return D;
}

// zero divisor (x)_0
inline Divisor zero_divisor(const RationalFq& x) {
  if (x.is_zero()) throw std::domain_error("zero_divisor: x = 0");
  Divisor D;
  if (x.num().degree() > 0)
    for (auto& [p, m] : factor_poly(x.num())) D.set(Place::from_prime(p), m);
  int e = x.den().degree() - x.num().degree();
  if (e > 0) D.set(Place::infinity(), e);
  return D;
}

// dimension of the Riemann-Roch space L(D)
inline long long ell(const Divisor& D, const CurveData& C) {
  long long d = D.degree();
  if (d < 0) return 0;
  if (C.genus == 0) return d + 1;
  if (d > 2 * C.genus - 2) return d + 1 - C.genus;
  auto it = C.ell_table.find(D.str());
  if (it == C.ell_table.end())
    throw std::domain_error("ell: no table entry for " + D.str() +
                            " (deg <= 2g-2 needs supplied data)");
  return it->second;
}

// places of K of exact degree d, in canonical order
inline std::vector<Place> places_of_degree(const CurveData& C, int d) {
  std::vector<Place> out;
  if (C.concrete()) {
    if (d == 1) out.push_back(Place::infinity());
    for (const PolyFq& p : monic_irreducibles(C.field, d))
      out.push_back(Place::from_prime(p));
  } else {
    long long n = C.places_of_degree(d);
    for (long long i = 0; i < n; ++i) out.push_back(Place::abstract(d, i));
  }
  return out;
}

// all effective divisors of exact degree n
inline std::vector<Divisor> effective_divisors(const CurveData& C, int n) {
  std::vector<std::vector<Place>> pl(n + 1);
  for (int d = 1; d <= n; ++d) pl[d] = places_of_degree(C, d);

  std::vector<Divisor> out;
  Divisor cur;
  // places ordered by (degree, canonical); choose multiplicities with a
  // running degree budget, never revisiting earlier places
  std::function<void(int, size_t, int)> rec = [&](int d, size_t i, int rem) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    if (d > rem) return;
    if (i >= pl[d].size()) {
      rec(d + 1, 0, rem);
      return;
    }
    rec(d, i + 1, rem);  // skip this place
    for (int m = 1; m * d <= rem; ++m) {
      cur.set(pl[d][i], m);
      rec(d, i + 1, rem - m * d);
    }
    cur.set(pl[d][i], 0);
  };
  if (n == 0)
    out.push_back(cur);
  else
    rec(1, 0, n);
  return out;
}

// iterate f over all effective E <= D (D effective)
template <class Fn>
inline void for_subdivisors(const Divisor& D, Fn&& f) {
  std::vector<std::pair<Place, long long>> sup(D.support().begin(), D.support().end());
  Divisor cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == sup.size()) {
      f(cur);
      return;
    }
    for (long long m = 0; m <= sup[i].second; ++m) {
      cur.set(sup[i].first, m);
      rec(i + 1);
    }
    cur.set(sup[i].first, 0);
  };
  rec(0);
}

// Moebius function of the divisor lattice: (-1)^{#places} on squarefree
// effective divisors, 0 otherwise
inline int moebius(const Divisor& D) {
  int sign = 1;
  for (auto& [p, m] : D.support()) {
    if (m != 1) return 0;
    sign = -sign;
  }
  return sign;
}

// (f * g)(D) = sum over effective E <= D of f(E) g(D - E)
template <class F, class G>
inline Rat convolve(F&& f, G&& g, const Divisor& D) {
  Rat total = 0;
  for_subdivisors(D, [&](const Divisor& E) { total += f(E) * g(D - E); });
  return total;
}

// counting functions

inline Int N_m(const Divisor& D, int m, const CurveData& C) {
  return ipow(Int(C.q()), m * ell(D, C));
}

inline Int N_m_n(const Divisor& D, int m, long long n, const CurveData& C) {
  return N_m(D.floor_div(n), m, C);
}

// Moebius transform of N_m; for m = 0 this is the unit of convolution
inline Int N_tilde(const Divisor& D, int m, const CurveData& C) {
  if (m == 0) return D.is_zero() ? 1 : 0;
  Int total = 0;
  for_subdivisors(D, [&](const Divisor& E) {
    int mu = moebius(D - E);
    if (mu) total += mu * N_m(E, m, C);
  });
  return total;
}

// F_m(D) = prod over places in supp(D) of (1 - q^{-m f_v}); F_0 = unit
inline Rat F_m(const Divisor& D, int m, const CurveData& C) {
  if (m == 0) return D.is_zero() ? 1 : 0;
  Rat r = 1;
  for (auto& [p, mult] : D.support()) {
    (void)mult;
    r *= 1 - qpow(C.q(), -(long)m * p.residue_degree());
  }
  return r;
}

}  // namespace hkzeta
