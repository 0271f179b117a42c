#pragma once

// Finite fields F_q (q = p^k <= a few hundred), dense polynomials over them,
// and normalized rational functions f/g with g monic and gcd(f,g) = 1.
// Field elements are integers in [0,q) whose base-p digits are the
// coefficients of the residue polynomial in u; all arithmetic is table
// driven, so a field object is built once and shared.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkzeta {

class FqField {
 public:
  explicit FqField(int q) : q_(q) {
    if (q < 2) throw std::domain_error("FqField: q must be >= 2");
    p_ = smallest_prime_factor(q);
    k_ = 0;
    int m = q;
    while (m > 1) {
      if (m % p_ != 0) throw std::domain_error("FqField: q is not a prime power");
      m /= p_;
      ++k_;
    }
    if (k_ > 1) modulus_ = find_modulus();
    build_tables();
  }

  int q() const { return q_; }
  int p() const { return p_; }
  int k() const { return k_; }
  // coefficients c_0..c_{k-1} of the monic degree-k modulus (k > 1 only)
  const std::vector<int>& modulus() const { return modulus_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inv(int a) const {
    if (a == 0) throw std::domain_error("FqField: inverse of zero");
    return inv_[a];
  }
  int div(int a, int b) const { return mul(a, inv(b)); }

  std::string elem_str(int a) const {
    if (k_ == 1) return std::to_string(a);
    std::string s;
    bool first = true;
    for (int i = k_ - 1; i >= 0; --i) {
      int c = digit(a, i);
      if (c == 0) continue;
      if (!first) s += "+";
      first = false;
      if (i == 0)
        s += std::to_string(c);
      else {
        if (c != 1) s += std::to_string(c) + "*";
        s += (i == 1) ? "u" : "u^" + std::to_string(i);
      }
    }
    return first ? "0" : s;
  }

 private:
  int q_, p_, k_;
  std::vector<int> modulus_;
  std::vector<int> add_, mul_, neg_, inv_;

  static int smallest_prime_factor(int n) {
    for (int d = 2; d * d <= n; ++d)
      if (n % d == 0) return d;
    return n;
  }

  int digit(int a, int i) const {
    for (int j = 0; j < i; ++j) a /= p_;
    return a % p_;
  }

  // residue polynomials as digit vectors over F_p
  std::vector<int> to_poly(int a) const {
    std::vector<int> v(k_);
    for (int i = 0; i < k_; ++i) {
      v[i] = a % p_;
      a /= p_;
    }
    return v;
  }

  static void trim(std::vector<int>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
  }

  std::vector<int> fp_mul(const std::vector<int>& a, const std::vector<int>& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j)
        r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    trim(r);
    return r;
  }

  // remainder mod a monic F_p polynomial
  std::vector<int> fp_mod(std::vector<int> a, const std::vector<int>& m) const {
    int dm = (int)m.size() - 1;
    while ((int)a.size() - 1 >= dm) {
      int c = a.back();
      int shift = (int)a.size() - 1 - dm;
      for (int i = 0; i <= dm; ++i) {
        int& t = a[shift + i];
        t = ((t - c * m[i]) % p_ + p_) % p_;
      }
      trim(a);
      if (a.empty()) break;
    }
    return a;
  }

  bool fp_irreducible(const std::vector<int>& f) const {
    int df = (int)f.size() - 1;
    if (df <= 0) return false;
    // trial division by every monic polynomial of degree <= df/2
    for (int d = 1; 2 * d <= df; ++d) {
      int count = 1;
      for (int i = 0; i < d; ++i) count *= p_;
      for (int code = 0; code < count; ++code) {
        std::vector<int> g(d + 1, 0);
        int c = code;
        for (int i = 0; i < d; ++i) {
          g[i] = c % p_;
          c /= p_;
        }
        g[d] = 1;
        if (fp_mod(f, g).empty()) return false;
      }
    }
    return true;
  }

  // smallest monic irreducible of degree k over F_p, ordered by the base-p
  // value of the lower coefficients
  std::vector<int> find_modulus() const {
    int count = 1;
    for (int i = 0; i < k_; ++i) count *= p_;
    for (int code = 0; code < count; ++code) {
      std::vector<int> f(k_ + 1, 0);
      int c = code;
      for (int i = 0; i < k_; ++i) {
        f[i] = c % p_;
        c /= p_;
      }
      f[k_] = 1;
      if (fp_irreducible(f)) return f;
    }
    throw std::logic_error("FqField: no irreducible modulus found");
  }

  void build_tables() {
    add_.assign(q_ * q_, 0);
    mul_.assign(q_ * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);
    for (int a = 0; a < q_; ++a) {
      for (int b = 0; b < q_; ++b) {
        // digitwise sum
        int s = 0, pw = 1, aa = a, bb = b;
        for (int i = 0; i < k_; ++i) {
          s += ((aa % p_) + (bb % p_)) % p_ * pw;
          aa /= p_;
          bb /= p_;
          pw *= p_;
        }
        add_[a * q_ + b] = s;
        // product mod the modulus
        std::vector<int> prod = fp_mul(to_poly(a), to_poly(b));
        if (k_ > 1) prod = fp_mod(prod, modulus_);
        int v = 0;
        pw = 1;
        for (size_t i = 0; i < prod.size(); ++i) {
          v += prod[i] * pw;
          pw *= p_;
        }
        mul_[a * q_ + b] = v;
      }
    }
    for (int a = 0; a < q_; ++a)
      for (int b = 0; b < q_; ++b) {
        if (add_[a * q_ + b] == 0) neg_[a] = b;
        if (a != 0 && mul_[a * q_ + b] == 1) inv_[a] = b;
      }
  }
};

using FieldPtr = std::shared_ptr<const FqField>;

inline FieldPtr make_field(int q) { return std::make_shared<FqField>(q); }

// Dense polynomial in T over F_q.  Coefficient vector is always trimmed;
// the zero polynomial has degree -1.
class PolyFq {
 public:
  PolyFq() = default;
  PolyFq(FieldPtr F, std::vector<int> c) : F_(std::move(F)), c_(std::move(c)) { trim(); }
  static PolyFq constant(FieldPtr F, int a) {
    return PolyFq(std::move(F), std::vector<int>{a});
  }
  static PolyFq monomial(FieldPtr F, int a, int n) {
    std::vector<int> c(n + 1, 0);
    c[n] = a;
    return PolyFq(std::move(F), std::move(c));
  }

  const FieldPtr& field() const { return F_; }
  const std::vector<int>& coeffs() const { return c_; }
  int degree() const { return (int)c_.size() - 1; }
  bool is_zero() const { return c_.empty(); }
  int lead() const { return c_.empty() ? 0 : c_.back(); }
  int coeff(int i) const { return (i >= 0 && i < (int)c_.size()) ? c_[i] : 0; }
  bool is_monic() const { return lead() == 1; }

  friend PolyFq operator+(const PolyFq& a, const PolyFq& b) {
    const FqField& F = a.fld(b);
    std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff((int)i), b.coeff((int)i));
    return PolyFq(a.F_ ? a.F_ : b.F_, std::move(c));
  }
  friend PolyFq operator-(const PolyFq& a, const PolyFq& b) {
    const FqField& F = a.fld(b);
    std::vector<int> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff((int)i), b.coeff((int)i));
    return PolyFq(a.F_ ? a.F_ : b.F_, std::move(c));
  }
  friend PolyFq operator*(const PolyFq& a, const PolyFq& b) {
    if (a.is_zero() || b.is_zero()) return PolyFq(a.F_ ? a.F_ : b.F_, {});
    const FqField& F = *a.F_;
    std::vector<int> c(a.c_.size() + b.c_.size() - 1, 0);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] = F.add(c[i + j], F.mul(a.c_[i], b.c_[j]));
    return PolyFq(a.F_, std::move(c));
  }

  PolyFq scaled(int s) const {
    std::vector<int> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = F_->mul(c_[i], s);
    return PolyFq(F_, std::move(c));
  }

  // quotient and remainder by a nonzero divisor
  static std::pair<PolyFq, PolyFq> divmod(const PolyFq& a, const PolyFq& b) {
    if (b.is_zero()) throw std::domain_error("PolyFq: division by zero");
    const FqField& F = *b.F_;
    std::vector<int> rem = a.c_;
    int db = b.degree();
    int linv = F.inv(b.lead());
    std::vector<int> quo(std::max<int>((int)rem.size() - db, 0), 0);
    for (int i = (int)rem.size() - 1; i >= db; --i) {
      if (rem[i] == 0) continue;
      int c = F.mul(rem[i], linv);
      quo[i - db] = c;
      for (int j = 0; j <= db; ++j)
        rem[i - db + j] = F.sub(rem[i - db + j], F.mul(c, b.c_[j]));
    }
    PolyFq q(b.F_, std::move(quo));
    PolyFq r(b.F_, std::move(rem));
    return {q, r};
  }
  friend PolyFq operator/(const PolyFq& a, const PolyFq& b) { return divmod(a, b).first; }
  friend PolyFq operator%(const PolyFq& a, const PolyFq& b) { return divmod(a, b).second; }

  PolyFq monic() const {
    if (is_zero()) return *this;
    return scaled(F_->inv(lead()));
  }

  friend bool operator==(const PolyFq& a, const PolyFq& b) { return a.c_ == b.c_; }
  friend bool operator!=(const PolyFq& a, const PolyFq& b) { return !(a == b); }
  // graded ordering: by degree, then coefficient vectors from the top
  friend bool operator<(const PolyFq& a, const PolyFq& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
  }

  int eval(int x) const {
    const FqField& F = *F_;
    int r = 0;
    for (int i = degree(); i >= 0; --i) r = F.add(F.mul(r, x), c_[i]);
    return r;
  }

  std::string str() const {
    if (is_zero()) return "0";
    const FqField& F = *F_;
    std::string s;
    for (int i = degree(); i >= 0; --i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += "+";
      std::string coef = F.elem_str(c_[i]);
      if (i == 0) {
        s += (coef.find('+') != std::string::npos) ? "(" + coef + ")" : coef;
        continue;
      }
      if (c_[i] != 1) {
        s += (coef.find('+') != std::string::npos) ? "(" + coef + ")*" : coef + "*";
      }
      s += (i == 1) ? "T" : "T^" + std::to_string(i);
    }
    return s;
  }

 private:
  FieldPtr F_;
  std::vector<int> c_;

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  const FqField& fld(const PolyFq& other) const {
    if (F_) return *F_;
    if (other.F_) return *other.F_;
    throw std::logic_error("PolyFq: no field attached");
  }
};

inline PolyFq poly_gcd(PolyFq a, PolyFq b) {
  while (!b.is_zero()) {
    PolyFq r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

// parse "T^3+2*T+1" style text; coefficients in [0,q), "u" terms in
// parentheses for non-prime q, e.g. "(u+1)*T^2+u"
PolyFq parse_poly(const FieldPtr& F, const std::string& text);

namespace detail {
inline int parse_elem_expr(const FqField& F, const std::string& s) {
  // sum of terms c, u, c*u, u^i, c*u^i
  int total = 0;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t next = s.find('+', pos);
    std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
    pos = (next == std::string::npos) ? s.size() : next + 1;
    int c = 1;
    size_t upos = term.find('u');
    std::string num = (upos == std::string::npos) ? term : term.substr(0, term.find_first_of("u*"));
    if (!num.empty()) c = std::stoi(num);
    int val;
    if (upos == std::string::npos) {
      val = c % F.p();
    } else {
      int e = 1;
      size_t caret = term.find('^', upos);
      if (caret != std::string::npos) e = std::stoi(term.substr(caret + 1));
      int u = F.p();  // element with digit vector (0,1)
      int uv = 1;
      for (int i = 0; i < e; ++i) uv = F.mul(uv, u);
      val = F.mul(c % F.p(), uv);
    }
    total = F.add(total, val);
  }
  return total;
}
}  // namespace detail

inline PolyFq parse_poly(const FieldPtr& F, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace((unsigned char)ch)) s += ch;
  if (s.empty() || s == "0") return PolyFq(F, {});
  std::vector<int> coeffs;
  size_t pos = 0;
  while (pos < s.size()) {
    // find end of term: next '+' at paren depth 0
    int depth = 0;
    size_t end = pos;
    while (end < s.size() && !(s[end] == '+' && depth == 0)) {
      if (s[end] == '(') ++depth;
      if (s[end] == ')') --depth;
      ++end;
    }
    std::string term = s.substr(pos, end - pos);
    pos = (end == s.size()) ? end : end + 1;

    int exp = 0;
    std::string coefstr = term;
    size_t tpos = term.find('T');
    if (tpos != std::string::npos) {
      exp = 1;
      if (tpos + 1 < term.size() && term[tpos + 1] == '^')
        exp = std::stoi(term.substr(tpos + 2));
      coefstr = term.substr(0, tpos);
      if (!coefstr.empty() && coefstr.back() == '*') coefstr.pop_back();
    }
    int c;
    if (coefstr.empty())
      c = 1;
    else if (coefstr.front() == '(')
      c = detail::parse_elem_expr(*F, coefstr.substr(1, coefstr.size() - 2));
    else
      c = detail::parse_elem_expr(*F, coefstr);
    if ((int)coeffs.size() <= exp) coeffs.resize(exp + 1, 0);
    coeffs[exp] = F->add(coeffs[exp], c);
  }
  return PolyFq(F, std::move(coeffs));
}

// all monic polynomials of exact degree d, graded-lex order
inline std::vector<PolyFq> monic_polys_of_degree(const FieldPtr& F, int d) {
  std::vector<PolyFq> out;
  int q = F->q();
  long long count = 1;
  for (int i = 0; i < d; ++i) count *= q;
  out.reserve(count);
  std::vector<int> c(d + 1, 0);
  c[d] = 1;
  for (long long code = 0; code < count; ++code) {
    long long t = code;
    for (int i = 0; i < d; ++i) {
      c[i] = (int)(t % q);
      t /= q;
    }
    out.emplace_back(F, c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {
struct IrrCache {
  std::vector<std::vector<PolyFq>> by_degree;  // [d] = monic irreducibles of degree d
};
inline IrrCache& irr_cache_for(const FieldPtr& F) {
  static std::map<int, IrrCache> cache;
  return cache[F->q()];
}
}  // namespace detail

// monic irreducibles of exact degree d (cached per q; fields with equal q
// share the canonical modulus, so polynomials are interchangeable)
inline const std::vector<PolyFq>& monic_irreducibles(const FieldPtr& F, int d) {
  auto& cache = detail::irr_cache_for(F);
  while ((int)cache.by_degree.size() <= d) {
    int n = (int)cache.by_degree.size();
    std::vector<PolyFq> irr;
    if (n >= 1) {
      for (const PolyFq& f : monic_polys_of_degree(F, n)) {
        bool red = false;
        for (int e = 1; !red && 2 * e <= n; ++e)
          for (const PolyFq& g : cache.by_degree[e]) {
            if ((f % g).is_zero()) {
              red = true;
              break;
            }
          }
        if (!red) irr.push_back(f);
      }
    }
    cache.by_degree.push_back(std::move(irr));
  }
  return cache.by_degree[d];
}

// factor a nonzero polynomial into monic irreducibles (with multiplicity);
// the unit is dropped
inline std::vector<std::pair<PolyFq, int>> factor_poly(const PolyFq& f) {
  if (f.is_zero()) throw std::domain_error("factor_poly: zero polynomial");
  std::vector<std::pair<PolyFq, int>> out;
  PolyFq rem = f.monic();
  const FieldPtr& F = f.field();
  for (int d = 1; 2 * d <= rem.degree(); ++d) {
    for (const PolyFq& p : monic_irreducibles(F, d)) {
      if (rem.degree() < 2 * d) break;
      int mult = 0;
      while ((rem % p).is_zero()) {
        rem = rem / p;
        ++mult;
      }
      if (mult) out.emplace_back(p, mult);
    }
  }
  if (rem.degree() >= 1) out.emplace_back(rem, 1);  // leftover cofactor is irreducible
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

// Element of F_q(T), kept normalized: den monic, gcd(num,den) = 1, 0 = 0/1.
class RationalFq {
 public:
  RationalFq() = default;
  explicit RationalFq(const PolyFq& num)
      : num_(num), den_(PolyFq::constant(num.field(), 1)) {}
  RationalFq(PolyFq num, PolyFq den) { normalize(std::move(num), std::move(den)); }

  const PolyFq& num() const { return num_; }
  const PolyFq& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  const FieldPtr& field() const { return num_.field() ? num_.field() : den_.field(); }

  // degree of the pole divisor: max(deg num, deg den)
  int pole_degree() const { return std::max(num_.degree(), den_.degree()); }

  friend RationalFq operator+(const RationalFq& a, const RationalFq& b) {
    return RationalFq(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFq operator-(const RationalFq& a, const RationalFq& b) {
    return RationalFq(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFq operator*(const RationalFq& a, const RationalFq& b) {
    return RationalFq(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFq operator/(const RationalFq& a, const RationalFq& b) {
    if (b.is_zero()) throw std::domain_error("RationalFq: division by zero");
    return RationalFq(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFq pow(int e) const {
    if (e < 0) return RationalFq(PolyFq::constant(field(), 1)) / pow(-e);
    RationalFq r(PolyFq::constant(field(), 1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const RationalFq& a, const RationalFq& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFq& a, const RationalFq& b) { return !(a == b); }
  friend bool operator<(const RationalFq& a, const RationalFq& b) {
    if (a.den_ != b.den_) return a.den_ < b.den_;
    return a.num_ < b.num_;
  }

  std::string str() const {
    if (den_.degree() == 0) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  PolyFq num_, den_;

  void normalize(PolyFq num, PolyFq den) {
    if (den.is_zero()) throw std::domain_error("RationalFq: zero denominator");
    const FieldPtr& F = den.field();
    if (num.is_zero()) {
      num_ = PolyFq(F, {});
      den_ = PolyFq::constant(F, 1);
      return;
    }
    PolyFq g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = num / g;
      den = den / g;
    }
    int s = F->inv(den.lead());
    num_ = num.scaled(s);
    den_ = den.scaled(s);
  }
};

// every x in F_q(T) with deg(x)_inf <= B, i.e. max(deg num, deg den) <= B
inline std::vector<RationalFq> enumerate_rational_functions(const FieldPtr& F, int B) {
  std::vector<RationalFq> out;
  std::vector<PolyFq> all;  // all polynomials of degree <= B
  {
    int q = F->q();
    long long count = 1;
    for (int i = 0; i <= B; ++i) count *= q;
    std::vector<int> c(B + 1, 0);
    for (long long code = 0; code < count; ++code) {
      long long t = code;
      for (int i = 0; i <= B; ++i) {
        c[i] = (int)(t % q);
        t /= q;
      }
      all.emplace_back(F, c);
    }
  }
  for (int dg = 0; dg <= B; ++dg)
    for (const PolyFq& g : monic_polys_of_degree(F, dg))
      for (const PolyFq& f : all) {
        if (f.is_zero()) {
          if (dg == 0) out.emplace_back(f);  // x = 0 once
          continue;
        }
        if (poly_gcd(f, g).degree() == 0) out.emplace_back(RationalFq(f, g));
      }
  return out;
}

}  // namespace hkzeta
