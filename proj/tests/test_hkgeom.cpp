#include <hkzeta/hkgeom.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace hkzeta;

TEST_CASE("constructor validation") {
  REQUIRE_THROWS_AS(HKVariety(0, 2, {}), std::domain_error);
  REQUIRE_THROWS_AS(HKVariety(1, 1, {1}), std::domain_error);
  REQUIRE_THROWS_AS(HKVariety(2, 2, {2, 1}), std::domain_error);  // decreasing
  REQUIRE_THROWS_AS(HKVariety(1, 2, {-1}), std::domain_error);
  REQUIRE_NOTHROW(HKVariety(2, 3, {0, 2}));
}

TEST_CASE("basic invariants") {
  HKVariety X(2, 3, {1, 2});
  REQUIRE(X.dim() == 4);
  REQUIRE(X.a_sum() == 3);
  REQUIRE(X.a_max() == 2);
  REQUIRE(X.n_max() == 1);
  REQUIRE(X.eta() == 3);  // gcd(r+1, t-|a|) = gcd(3, 0) = 3
  REQUIRE(X.str() == "HK(r=2,t=3;a=1,2)");
  LineBundle K = anticanonical(X);
  REQUIRE(K.gamma == 3);
  REQUIRE(K.xi == 0);
  HKVariety H1(1, 2, {1});  // Hirzebruch surface F_1
  REQUIRE(H1.eta() == 1);
  REQUIRE(anticanonical(H1).gamma == 2);
  REQUIRE(anticanonical(H1).xi == 1);
}

TEST_CASE("bigness criterion") {
  HKVariety X(1, 2, {2});
  REQUIRE(is_big({1, 1}, X));
  REQUIRE(is_big({1, -1}, X));  // xi > -gamma a_r = -2
  REQUIRE(!is_big({1, -2}, X));
  REQUIRE(!is_big({0, 1}, X));
  REQUIRE(!is_big({-1, 5}, X));
  // anticanonical is always big
  for (int r = 1; r <= 3; ++r)
    for (int t = 2; t <= 3; ++t)
      for (int ar = 0; ar <= 3; ++ar) {
        std::vector<int> a(r, ar);
        HKVariety Y(r, t, a);
        REQUIRE(is_big(anticanonical(Y), Y));
      }
}

TEST_CASE("alpha invariant vs lattice volume") {
  // alpha*(X) = vol{(u,v): u,v >= 0, (r+1)u + (t-|a|+(r+1)a_r... } reduces to
  // 1/((r+1) c) with c = (r+1)a_r + t - |a|; cross-check by counting lattice
  // points of the dilated dual polytope {u, v >= 0 : (r+1)u + c v <= n}
  for (auto [r, t, ar] : {std::tuple{1, 2, 1}, {1, 2, 2}, {2, 2, 1}, {1, 3, 2}}) {
    std::vector<int> a(r, ar);
    HKVariety X(r, t, a);
    long long c = (long long)(r + 1) * ar + t - X.a_sum();
    long long n = 2520;  // divisible by every (r+1)c here
    long long pts = 0;   // area = lim #points/n^2 = 1/(2 alpha is wrong): count
    for (long long u = 0; (r + 1) * u <= n; ++u) pts += (n - (r + 1) * u) / c + 1;
    // area of the triangle {x,y>=0, (r+1)x + cy <= 1} scaled by n^2 is
    // n^2/(2(r+1)c); the count deviates by O(n)
    Rat area(pts, n * n);
    Rat target = alpha_star(X) / 2;
    REQUIRE(abs(area - target) < Rat(4, n));
  }
  REQUIRE(alpha_star(HKVariety(1, 2, {1})) == Rat(1, 6));
  REQUIRE(alpha_star(HKVariety(2, 2, {0, 0})) == Rat(1, 6));
}

TEST_CASE("classification of big classes") {
  HKVariety X(1, 2, {1});
  // anticanonical: A = B = 1, double pole
  Classification c = classify(anticanonical(X), X);
  REQUIRE(c.A == 1);
  REQUIRE(c.B == 1);
  REQUIRE(c.a == 1);
  REQUIRE(c.b == 2);
  REQUIRE(c.eta_L == 1);
  REQUIRE(c.c_L == 3);
  // L = (1,1): A = 2 > B = 3/2
  c = classify({1, 1}, X);
  REQUIRE(c.A == 2);
  REQUIRE(c.B == Rat(3, 2));
  REQUIRE(c.a == 2);
  REQUIRE(c.b == 1);
  REQUIRE(c.a_second == Rat(3, 2));  // max{A - 1/gamma, B} = max{1, 3/2}
  // L = (2,1): primitive anticanonical-ray test again at eta_L = 1
  c = classify({4, 2}, X);
  REQUIRE(c.eta_L == 2);
  REQUIRE(c.primitive.gamma == 2);
  REQUIRE(c.primitive.xi == 1);
  REQUIRE(c.b == 2);
  REQUIRE(c.a == Rat(1, 2));  // a(L) scales inversely with eta_L
}

TEST_CASE("classification secondary exponent cases") {
  HKVariety X(1, 3, {1});  // c_{-K} = gamma a + xi: (2)(1) + 2 = 4, A = 1, B = 1
  Classification k = classify(anticanonical(X), X);
  REQUIRE(k.A == k.B);
  // A < B: L = (3,1) on X_2(1): A = 2/3, B = 3/4
  HKVariety Y(1, 2, {1});
  Classification c = classify({3, 1}, Y);
  REQUIRE(c.A == Rat(2, 3));
  REQUIRE(c.B == Rat(3, 4));
  REQUIRE(c.b == 1);
  REQUIRE(c.a == Rat(3, 4));
  // a'(L) = max{A, B - 1/c_L} = max{2/3, 3/4 - 1/4} = 2/3
  REQUIRE(c.a_second == Rat(2, 3));
  // a_r = 0 product: a''(L)
  HKVariety P(1, 2, {0});
  Classification p = classify({1, 1}, P);
  REQUIRE(p.A == 2);
  REQUIRE(p.B == 2);
  REQUIRE(p.b == 2);
  REQUIRE(p.a_second == Rat(1, 2));  // max{1/(2 gamma), 1/(2 xi)}
}

TEST_CASE("non-big classes are rejected") {
  HKVariety X(1, 2, {1});
  REQUIRE_THROWS_AS(classify({0, 1}, X), std::domain_error);
  REQUIRE_THROWS_AS(decompose(X, {0, 1}), std::domain_error);
}

TEST_CASE("decomposition shape, a_r > 0") {
  // X_2(a): P^1 u A^1 u U_2(a)
  HKVariety X(1, 2, {2});
  auto S = decompose(X, anticanonical(X));
  int np = 0, na = 0, nu = 0;
  for (auto& s : S) {
    if (s.kind == Stratum::Kind::projective) {
      ++np;
      REQUIRE(s.n == 1);
    }
    if (s.kind == Stratum::Kind::affine) {
      ++na;
      REQUIRE(s.n == 1);
    }
    if (s.kind == Stratum::Kind::good_open) ++nu;
  }
  REQUIRE(np == 1);
  REQUIRE(na == 1);
  REQUIRE(nu == 1);
  // threefold X_3(a) = X(r=1,t=3): P^2 u A^1 u U_3(a) u U_2(a)
  HKVariety Y(1, 3, {1});
  auto SY = decompose(Y, anticanonical(Y));
  np = na = nu = 0;
  for (auto& s : SY) {
    if (s.kind == Stratum::Kind::projective) {
      ++np;
      REQUIRE(s.n == 2);
    }
    if (s.kind == Stratum::Kind::affine) ++na;
    if (s.kind == Stratum::Kind::good_open) {
      ++nu;
      REQUIRE(s.variety.r == 1);
      REQUIRE(s.variety.a == std::vector<int>{1});
    }
  }
  REQUIRE(np == 1);
  REQUIRE(na == 1);
  REQUIRE(nu == 2);
}

TEST_CASE("decomposition shape, higher rank") {
  // X(r=2,t=2;a=(1,2)): X(r=1) piece u A^2 u U(t'=2)
  HKVariety X(2, 2, {1, 2});
  auto S = decompose(X, {1, 1});
  int na2 = 0, nu = 0, np = 0, na1 = 0;
  for (auto& s : S) {
    if (s.kind == Stratum::Kind::affine && s.n == 2) ++na2;
    if (s.kind == Stratum::Kind::affine && s.n == 1) ++na1;
    if (s.kind == Stratum::Kind::projective) ++np;
    if (s.kind == Stratum::Kind::good_open) ++nu;
  }
  REQUIRE(na2 == 1);  // A^r for the rank-2 stage
  REQUIRE(na1 == 1);  // from the recursive X(r=1,t=2;a=1) stage
  REQUIRE(np == 1);
  REQUIRE(nu == 2);  // U of X(2,2;1,2) and of X(1,2;1)
}

TEST_CASE("decomposition shape, product case") {
  // a_r = 0, r = 1: P^{t-1} u U
  HKVariety P(1, 3, {0});
  auto S = decompose(P, anticanonical(P));
  REQUIRE(S.size() == 2);
  int np = 0, nu = 0;
  for (auto& s : S) {
    if (s.kind == Stratum::Kind::projective) {
      ++np;
      REQUIRE(s.n == 2);
    }
    if (s.kind == Stratum::Kind::good_open) ++nu;
  }
  REQUIRE(np == 1);
  REQUIRE(nu == 1);
}
