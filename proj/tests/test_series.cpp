#include <hkzeta/series.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace hkzeta;

static FactoredRational geo(long long c, int m, int k = 1) {
  return FactoredRational::geometric(Int(c), m, k);
}

TEST_CASE("geometric expansion") {
  auto co = geo(3, 1).expand(5);
  for (int n = 0; n <= 5; ++n) REQUIRE(co[n] == Rat(ipow(Int(3), n)));
  auto co2 = geo(2, 3).expand(7);
  for (int n = 0; n <= 7; ++n)
    REQUIRE(co2[n] == (n % 3 ? Rat(0) : Rat(ipow(Int(2), n / 3))));
}

TEST_CASE("negative binomial: 1/(1-qT)^b") {
  for (long long q : {2, 3})
    for (int b : {1, 2, 3, 4}) {
      auto co = geo(q, 1, b).expand(20);
      for (long n = 0; n <= 20; ++n) {
        Rat bin = binom_rat(Rat(n + b - 1), b - 1);
        REQUIRE(co[n] == bin * Rat(ipow(Int(q), n)));
      }
    }
}

TEST_CASE("factor cancellation in products") {
  FactoredRational f = geo(2, 1) / geo(2, 1);
  REQUIRE(f.factors().empty());
  auto co = f.expand(3);
  REQUIRE(co[0] == 1);
  REQUIRE(co[1] == -2 + 2);
  FactoredRational g = geo(2, 1, 2) / geo(2, 1);  // one factor survives
  REQUIRE(g.factors().size() == 1);
  REQUIRE(g.factors().begin()->second == 1);
}

TEST_CASE("arithmetic against direct evaluation") {
  FactoredRational a = geo(2, 1) * geo(3, 2);
  FactoredRational b = geo(5, 1);
  FactoredRational s = a + b, p = a * b, d = a - b;
  Rat at(1, 100);  // inside every radius of convergence
  REQUIRE(s.eval(at) == a.eval(at) + b.eval(at));
  REQUIRE(p.eval(at) == a.eval(at) * b.eval(at));
  REQUIRE(d.eval(at) == a.eval(at) - b.eval(at));
  auto ca = a.expand(10), cb = b.expand(10), cs = s.expand(10);
  for (int n = 0; n <= 10; ++n) REQUIRE(cs[n] == ca[n] + cb[n]);
}

TEST_CASE("substitution T -> c T^m") {
  FactoredRational f = geo(2, 1) + geo(3, 1);
  FactoredRational g = f.substituted(1, 2);
  auto cf = f.expand(5), cg = g.expand(10);
  for (int n = 0; n <= 10; ++n) REQUIRE(cg[n] == (n % 2 ? Rat(0) : cf[n / 2]));
  FactoredRational h = f.substituted(4, 1);  // T -> 4T
  auto ch = h.expand(5);
  for (int n = 0; n <= 5; ++n) REQUIRE(ch[n] == cf[n] * Rat(ipow(Int(4), n)));
}

static void check_reconstruction(const FactoredRational& f, long N) {
  auto direct = f.expand(N);
  auto asy = asymptotics(f.folded());
  for (long n = 0; n <= N; ++n) REQUIRE(asy.coefficient(n) == direct[n]);
}

TEST_CASE("partial fraction reconstruction") {
  // Z_K and Z_K^2 for genus 0
  FactoredRational zk = geo(1, 1) * geo(2, 1);
  check_reconstruction(zk, 20);
  check_reconstruction(zk * zk, 20);
  // mixed exponents sharing a radius: 1/((1-4T^2)(1-2T)) and friends
  check_reconstruction(geo(4, 2) * geo(2, 1), 20);
  check_reconstruction(geo(8, 3) * geo(2, 1) * geo(4, 2), 24);
  // numerator polynomial on top
  FactoredRational num{ratpoly::P{Rat(3), Rat(0), Rat(-5), Rat(7)}};
  check_reconstruction(num * zk, 20);
}

TEST_CASE("randomized reconstruction") {
  std::mt19937 rng(20240817);
  for (int trial = 0; trial < 3; ++trial) {
    FactoredRational f{ratpoly::P{Rat(1 + (long long)(rng() % 5)),
                                  Rat((long long)(rng() % 7) - 3)}};
    for (int i = 0; i < 3; ++i) {
      long long c = 1 + rng() % 8;
      int m = 1 + rng() % 3;
      f = f * geo(c, m);
    }
    check_reconstruction(f, 20);
  }
}

TEST_CASE("dominant term ordering") {
  auto asy = asymptotics((geo(2, 1) * geo(9, 2)).folded());
  REQUIRE(asy.terms.size() == 2);
  // 9^{1/2} = 3 beats 2
  REQUIRE(asy.terms[0].c == 9);
  REQUIRE(asy.terms[0].m == 2);
  REQUIRE(AsymptoticExpansion::cmp_growth(Int(9), 2, Int(2), 1) > 0);
  REQUIRE(AsymptoticExpansion::cmp_growth(Int(4), 2, Int(2), 1) == 0);
}

TEST_CASE("finitely supported series") {
  FactoredRational f = (geo(2, 1, -1)) * geo(2, 1);  // (1-2T)/(1-2T) = 1
  REQUIRE(f.factors().empty());
  FactoredRational poly{ratpoly::P{Rat(1), Rat(4), Rat(4)}};
  auto asy = asymptotics(poly.folded());
  REQUIRE(asy.finitely_supported);
  REQUIRE(asy.coefficient(1) == 4);
  REQUIRE(asy.coefficient(5) == 0);
}

TEST_CASE("linear solver is exact") {
  // 3x3 system with rational entries
  std::vector<std::vector<Rat>> A = {{Rat(2), Rat(1), Rat(0)},
                                     {Rat(1, 2), Rat(1), Rat(3)},
                                     {Rat(0), Rat(5), Rat(1)}};
  std::vector<Rat> b = {Rat(7), Rat(9), Rat(11)};
  auto x = solve_linear(A, b);
  for (int i = 0; i < 3; ++i) {
    Rat s = 0;
    for (int j = 0; j < 3; ++j) s += A[i][j] * x[j];
    REQUIRE(s == b[i]);
  }
}
