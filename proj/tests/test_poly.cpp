#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "branegauge/poly.hpp"

using namespace branegauge;

namespace {

HomogeneousPoly random_poly(std::mt19937_64& rng, int n, int degree) {
  auto basis = monomial_basis(n, degree);
  HomogeneousPoly p;
  for (const MultiIndex& mi : basis)
    if (rng() % 3 == 0) {
      long c = static_cast<long>(rng() % 9) - 4;
      if (c != 0) p = p + HomogeneousPoly::monomial(mi, make_rational(c, 1));
    }
  return p;
}

}  // namespace

TEST_CASE("parser accepts the documented grammar") {
  HomogeneousPoly p = parse_poly("x0^2 + 2*x1*x2", 2);
  REQUIRE(p.degree.has_value());
  CHECK(*p.degree == 2);
  CHECK(p.terms.size() == 2);
  CHECK(p.terms.at({2, 0, 0}) == make_rational(1, 1));
  CHECK(p.terms.at({0, 1, 1}) == make_rational(2, 1));

  HomogeneousPoly q = parse_poly("3/2*x0 - x1", 1);
  CHECK(q.terms.at({1, 0}) == make_rational(3, 2));
  CHECK(q.terms.at({0, 1}) == make_rational(-1, 1));

  CHECK(parse_poly("0", 3).is_zero());
  CHECK(parse_poly("  -  x0 ", 1).terms.at({1, 0}) == make_rational(-1, 1));
}

TEST_CASE("parser rejects malformed input") {
  CHECK_THROWS_AS(parse_poly("x0 + x1^2", 1), Error);   // mixed degree
  CHECK_THROWS_AS(parse_poly("x3", 1), Error);          // index out of range
  CHECK_THROWS_AS(parse_poly("x0^0", 1), Error);        // exponent below 1
  CHECK_THROWS_AS(parse_poly("x0 +", 1), Error);        // dangling operator
  CHECK_THROWS_AS(parse_poly("2x0", 1), Error);         // missing '*'
}

TEST_CASE("printer and parser round-trip") {
  std::mt19937_64 rng(424242ull);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    int d = static_cast<int>(rng() % 4);
    HomogeneousPoly p = random_poly(rng, n, d);
    HomogeneousPoly back = parse_poly(to_string(p), n);
    CHECK(back == p);
  }
}

TEST_CASE("monomial basis is descending lexicographic") {
  auto basis = monomial_basis(2, 2);
  REQUIRE(basis.size() == 6);
  CHECK(basis.front() == MultiIndex{2, 0, 0});
  CHECK(basis[1] == MultiIndex{1, 1, 0});
  CHECK(basis.back() == MultiIndex{0, 0, 2});
  CHECK(monomial_basis(3, 0).size() == 1);
  CHECK(monomial_basis(2, -1).empty());
}

TEST_CASE("subsets are ordered lexicographically") {
  auto subs = subsets_of_size(2, 2);
  REQUIRE(subs.size() == 3);
  CHECK(subs[0] == std::vector<int>{0, 1});
  CHECK(subs[1] == std::vector<int>{0, 2});
  CHECK(subs[2] == std::vector<int>{1, 2});
}

TEST_CASE("binomials and the signed polynomial extension") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(4, 0) == 1);
  CHECK(binomial_poly_dim(2, 2) == 6);    // binom(4, 2)
  CHECK(binomial_poly_dim(0, 3) == 1);
  CHECK(binomial_poly_dim(-3, 2) == 1);   // (-1)(-2)/2
  CHECK(binomial_poly_dim(-1, 2) == 0);   // falls on a root
  CHECK(binomial_poly_dim(-5, 3) == -4);  // (-4)(-3)(-2)/6
}

TEST_CASE("partial derivatives and the Euler identity") {
  HomogeneousPoly p = parse_poly("x0^2*x1", 2);
  HomogeneousPoly d0 = partial_derivative(p, 0);
  CHECK(d0 == parse_poly("2*x0*x1", 2));
  CHECK(partial_derivative(p, 2).is_zero());

  std::mt19937_64 rng(777ull);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 3);
    int d = 1 + static_cast<int>(rng() % 4);
    HomogeneousPoly q = random_poly(rng, n, d);
    if (q.is_zero()) continue;
    HomogeneousPoly sum;
    for (int l = 0; l <= n; ++l) {
      MultiIndex unit(static_cast<std::size_t>(n) + 1, 0);
      unit[static_cast<std::size_t>(l)] = 1;
      sum = sum + partial_derivative(q, l) *
                      HomogeneousPoly::monomial(unit, make_rational(1, 1));
    }
    CHECK(sum == q.scaled(make_rational(d, 1)));
  }
}

TEST_CASE("laurent arithmetic") {
  LaurentPoly inv = LaurentPoly::monomial({-1, 0}, make_rational(1, 1));
  LaurentPoly d = partial_derivative(inv, 0);
  CHECK(d == LaurentPoly::monomial({-2, 0}, make_rational(-1, 1)));
  CHECK(partial_derivative(inv, 1).is_zero());

  LaurentPoly shifted = inv.shifted({2, 1}, make_rational(3, 1));
  CHECK(shifted == LaurentPoly::monomial({1, 1}, make_rational(3, 1)));

  LaurentPoly sum = inv + inv.scaled(make_rational(-1, 1));
  CHECK(sum.is_zero());
}
