#include <hkzeta/divisor.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace hkzeta;

// y^2 + y = x^3 over F_2: supersingular elliptic curve, L(T) = 1 + 2T^2,
// h = 3, place counts by degree from N_m = 2^m + 1 - alpha^m - beta^m
static CurveData elliptic_f2() {
  CurveData C;
  C.field = make_field(2);
  C.genus = 1;
  C.Lcoeffs = {1, 0, 2};
  C.place_counts = {3, 3, 2, 0, 6};
  C.ell_table = {{"0", 1}};
  C.validate();
  return C;
}

TEST_CASE("pole and zero divisors balance") {
  auto F = make_field(2);
  for (const auto& x : enumerate_rational_functions(F, 2)) {
    if (x.is_zero()) continue;
    Divisor p = pole_divisor(x), z = zero_divisor(x);
    REQUIRE(p.is_effective());
    REQUIRE(z.is_effective());
    REQUIRE(p.degree() == z.degree());  // principal divisors have degree 0
    REQUIRE(p.degree() == x.pole_degree());
  }
}

TEST_CASE("riemann-roch dimension, genus 0") {
  CurveData C = rational_curve(2);
  for (int n = 0; n <= 4; ++n)
    for (const auto& D : effective_divisors(C, n)) REQUIRE(ell(D, C) == n + 1);
}

TEST_CASE("riemann-roch dimension, elliptic") {
  CurveData C = elliptic_f2();
  REQUIRE(ell(Divisor{}, C) == 1);
  for (int n = 1; n <= 3; ++n)
    for (const auto& D : effective_divisors(C, n)) REQUIRE(ell(D, C) == n);
}

TEST_CASE("effective divisor counts equal zeta coefficients") {
  // genus 0, q = 2: b_n = 2^{n+1} - 1
  CurveData C0 = rational_curve(2);
  long long expect0[] = {1, 3, 7, 15, 31, 63};
  for (int n = 0; n <= 5; ++n)
    REQUIRE((long long)effective_divisors(C0, n).size() == expect0[n]);
  // elliptic: (1 + 2T^2)/((1-T)(1-2T)) = 1 + 3T + 9T^2 + 21T^3 + 45T^4 + ...
  CurveData C1 = elliptic_f2();
  long long expect1[] = {1, 3, 9, 21, 45};
  for (int n = 0; n <= 4; ++n)
    REQUIRE((long long)effective_divisors(C1, n).size() == expect1[n]);
}

TEST_CASE("moebius convolution inverts the constant function") {
  CurveData C = rational_curve(2);
  auto u = [](const Divisor& D) { return D.is_zero() ? 1 : 0; };
  for (int n = 0; n <= 5; ++n)
    for (const auto& D : effective_divisors(C, n)) {
      Rat s = convolve([](const Divisor&) { return Rat(1); },
                       [](const Divisor& E) { return Rat(moebius(E)); }, D);
      REQUIRE(s == u(D));
    }
}

TEST_CASE("moebius degree sums match 1/Z_K") {
  // 1/Z_K = (1-T)(1-qT): coefficients 1, -(q+1), q, 0, 0, ...
  for (int q : {2, 3}) {
    CurveData C = rational_curve(q);
    long long expect[] = {1, -(q + 1), q, 0, 0, 0, 0};
    for (int n = 0; n <= 6; ++n) {
      long long s = 0;
      for (const auto& D : effective_divisors(C, n)) s += moebius(D);
      REQUIRE(s == expect[n]);
    }
  }
}

TEST_CASE("N_tilde is a mu-couple partner of N_m") {
  CurveData C = rational_curve(2);
  for (int m : {1, 2}) {
    for (int n = 0; n <= 3; ++n)
      for (const auto& D : effective_divisors(C, n)) {
        REQUIRE(N_tilde(D, m, C) >= 0);
        Int total = 0;
        for_subdivisors(D, [&](const Divisor& E) { total += N_tilde(E, m, C); });
        REQUIRE(total == N_m(D, m, C));
      }
  }
}

TEST_CASE("floor division tracks the pole bound") {
  // n (x)_inf <= D  iff  (x)_inf <= floor(D/n)
  auto F = make_field(2);
  CurveData C = rational_curve(2);
  auto xs = enumerate_rational_functions(F, 2);
  for (int n : {2, 3})
    for (const auto& D : effective_divisors(C, 3))
      for (const auto& x : xs) {
        Divisor p = pole_divisor(x);
        REQUIRE(leq(n * p, D) == leq(p, D.floor_div(n)));
      }
}

TEST_CASE("sup is the lattice join") {
  CurveData C = rational_curve(2);
  auto divs = effective_divisors(C, 2);
  for (const auto& A : divs)
    for (const auto& B : divs) {
      Divisor S = sup(A, B);
      REQUIRE(leq(A, S));
      REQUIRE(leq(B, S));
      for (const auto& E : effective_divisors(C, 4))
        if (leq(A, E) && leq(B, E)) REQUIRE(leq(S, E));
    }
}

TEST_CASE("euler factor F_m") {
  CurveData C = rational_curve(2);
  Divisor D;
  D.add(Place::infinity(), 2);
  REQUIRE(F_m(D, 1, C) == Rat(1, 2));
  D.add(Place::from_prime(parse_poly(C.field, "T")), 1);
  REQUIRE(F_m(D, 1, C) == Rat(1, 4));
  REQUIRE(F_m(D, 2, C) == Rat(9, 16));
  REQUIRE(F_m(Divisor{}, 0, C) == 1);
}

TEST_CASE("abstract places for supplied curves") {
  CurveData C = elliptic_f2();
  REQUIRE((long long)places_of_degree(C, 1).size() == 3);
  REQUIRE((long long)places_of_degree(C, 2).size() == 3);
  REQUIRE((long long)places_of_degree(C, 4).size() == 0);
  REQUIRE_THROWS_AS(places_of_degree(C, 6), std::domain_error);
}
