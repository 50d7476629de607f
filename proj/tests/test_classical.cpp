#include <doctest.h>

#include "bsl/classical.hpp"
#include "oracles.hpp"

using namespace bsl;

TEST_CASE("surd parsing") {
  Surd s = parse_alpha("sqrt:2");
  CHECK(s.N == 2);
  CHECK(!s.is_rational());
  Surd g = parse_alpha("(1+sqrt:5)/2");
  CHECK(g.p == 1);
  CHECK(g.q == 1);
  CHECK(g.r == 2);
  Surd d = parse_alpha("1.25");
  CHECK(d.is_rational());
  CHECK(d.as_rational() == Rational(5, 4));
  Surd m = parse_alpha("(-3+2*sqrt:7)/5");
  CHECK(m.p == -3);
  CHECK(m.q == 2);
  CHECK(m.r == 5);
  CHECK(parse_alpha("sqrt:4").is_rational());  // perfect square collapses
  CHECK_THROWS_AS(parse_alpha("zzz"), ParseError);
}

TEST_CASE("surd floor and comparisons") {
  Surd s2 = parse_alpha("sqrt:2");
  CHECK(s2.floor_int() == 1);
  CHECK(parse_alpha("(1+sqrt:5)/2").floor_int() == 1);
  CHECK(parse_alpha("(-1-sqrt:2)/1").floor_int() == -3);
  CHECK(s2.cmp_rational(Int(3), Int(2)) < 0);   // sqrt2 < 3/2
  CHECK(s2.cmp_rational(Int(7), Int(5)) > 0);   // sqrt2 > 7/5
}

TEST_CASE("rational input: CF terminates and is reported") {
  Surd x = parse_alpha("(10+0*sqrt:2)/7");
  ClassicalCF cf = classical_cf(x, 30);
  CHECK(cf.rational_exhausted);
  CHECK(cf.a0 == 1);
  REQUIRE(cf.partial.size() == 2);
  CHECK(cf.partial[0] == 2);
  CHECK(cf.partial[1] == 3);
  CHECK_THROWS_AS(classical_cf_checked(x, 30), RationalDetected);
}

TEST_CASE("CF of sqrt(2) and the golden mean") {
  ClassicalCF cf = classical_cf(parse_alpha("sqrt:2"), 10);
  CHECK(cf.a0 == 1);
  for (const Int& a : cf.partial) CHECK(a == 2);
  REQUIRE(cf.convergents.size() >= 4);
  CHECK(cf.convergents[0] == Rational(1));
  CHECK(cf.convergents[1] == Rational(3, 2));
  CHECK(cf.convergents[2] == Rational(7, 5));
  CHECK(cf.convergents[3] == Rational(17, 12));

  ClassicalCF gf = classical_cf(parse_alpha("(1+sqrt:5)/2"), 12);
  CHECK(gf.a0 == 1);
  for (const Int& a : gf.partial) CHECK(a == 1);
  // convergents are ratios of consecutive Fibonacci numbers
  Int f0 = 1, f1 = 1;
  for (const Rational& c : gf.convergents) {
    CHECK(numerator(c) == f1);
    CHECK(denominator(c) == f0);
    Int f2 = f0 + f1;
    f0 = f1;
    f1 = f2;
  }
  // gcd(p_n, q_n) = 1 and q_n strictly increasing hold by construction
  for (size_t i = 1; i < gf.convergents.size(); ++i)
    CHECK(denominator(gf.convergents[i]) >= denominator(gf.convergents[i - 1]));
}

TEST_CASE("two-sided bounds, exact") {
  Surd s2 = parse_alpha("sqrt:2");
  ClassicalReport rep = check_classical_bounds(s2, 10, Int(300));
  CHECK(rep.ok());
  REQUIRE(rep.bound_rows.size() >= 2);
  // n = 1: q1^2 |sqrt2 - 3/2| = 0.3431... in [1/4, 1/2]
  CHECK(rep.bound_rows[1].lower == Rational(1, 4));
  CHECK(rep.bound_rows[1].upper == Rational(1, 2));
  CHECK(rep.bound_rows[1].pass);

  ClassicalReport grep = check_classical_bounds(parse_alpha("(1+sqrt:5)/2"), 10, Int(200));
  CHECK(grep.ok());
  for (const auto& row : grep.bound_rows) {
    CHECK(row.lower == Rational(1, 3));
    CHECK(row.upper == Rational(1));
  }
}

TEST_CASE("1/2-threshold points are exactly the convergents (oracle)") {
  for (const char* a : {"sqrt:2", "sqrt:3", "(1+sqrt:5)/2", "(3+2*sqrt:11)/7"}) {
    ClassicalReport rep = check_classical_bounds(parse_alpha(a), 20, Int(500));
    CHECK(rep.good_missing.empty());
    CHECK(rep.good_points.size() >= 4);
  }
}

TEST_CASE("farey oracle basics") {
  auto f5 = farey_interval(Int(5), Rational(0), Rational(1));
  std::vector<Rational> expect = {Rational(0),     Rational(1, 5), Rational(1, 4),
                                  Rational(1, 3),  Rational(2, 5), Rational(1, 2),
                                  Rational(3, 5),  Rational(2, 3), Rational(3, 4),
                                  Rational(4, 5),  Rational(1)};
  CHECK(f5 == expect);
  auto f7 = farey_interval(Int(7), Rational(1, 3), Rational(1, 2));
  for (size_t i = 0; i + 1 < f7.size(); ++i) {
    // consecutive Farey fractions satisfy the unimodular relation
    CHECK(numerator(f7[i + 1]) * denominator(f7[i]) -
              numerator(f7[i]) * denominator(f7[i + 1]) ==
          1);
  }
}

TEST_CASE("decimal alphas run the same machinery") {
  Surd d = parse_alpha("1.41421356237309504880168872420969807856967187537694");
  ClassicalReport rep = check_classical_bounds(d, 15, Int(200));
  CHECK(rep.ok());
  ClassicalCF cf = classical_cf(d, 15);
  for (size_t i = 0; i < cf.partial.size() && i < 10; ++i) CHECK(cf.partial[i] == 2);
}
