#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "branegauge/linalg.hpp"

using namespace branegauge;

namespace {

QMatrix from_rows(int rows, int cols,
                  const std::vector<std::vector<long>>& data) {
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0)
        m.set(r, c,
              make_rational(
                  data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                  1));
  return m;
}

std::vector<Rational> rvec(const std::vector<long>& data) {
  std::vector<Rational> out;
  out.reserve(data.size());
  for (long v : data) out.push_back(make_rational(v, 1));
  return out;
}

bool is_zero_vec(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](const Rational& x) { return x == 0; });
}

QMatrix random_matrix(std::mt19937_64& rng, int rows, int cols, int density) {
  QMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (static_cast<int>(rng() % 100) < density) {
        long num = static_cast<long>(rng() % 9) - 4;
        if (num != 0) m.set(r, c, make_rational(num, 1));
      }
  return m;
}

}  // namespace

TEST_CASE("rational construction canonicalizes") {
  CHECK(make_rational(2, -4) == make_rational(-1, 2));
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK(to_string(make_rational(5, 1)) == "5");
  CHECK(parse_rational("6/-4") == make_rational(-3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("rank of a dependent row pair is one") {
  QMatrix m = from_rows(2, 2, {{1, 2}, {2, 4}});
  CHECK(rank(m) == 1);
  CHECK(rank(m.transpose()) == 1);
}

TEST_CASE("solve pins free variables to zero") {
  QMatrix m = from_rows(1, 2, {{1, 1}});
  auto x = solve_affine(m, rvec({2}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == make_rational(2, 1));
  CHECK((*x)[1] == 0);
}

TEST_CASE("kernel of a rank-one row") {
  QMatrix m = from_rows(1, 2, {{1, 2}});
  auto basis = kernel_basis(m);
  REQUIRE(basis.size() == 1);
  const auto& v = basis[0];
  CHECK(v[1] == make_rational(1, 1));
  CHECK(v[0] + make_rational(2, 1) * v[1] == 0);
}

TEST_CASE("inconsistent systems return no solution") {
  QMatrix m = from_rows(2, 1, {{1}, {1}});
  CHECK_FALSE(solve_affine(m, rvec({1, 2})).has_value());
}

TEST_CASE("identity and multiplication") {
  QMatrix id = QMatrix::identity(3);
  QMatrix m = from_rows(3, 2, {{1, 0}, {2, 3}, {0, -1}});
  QMatrix prod = id.times(m);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 2; ++c) CHECK(prod.at(r, c) == m.at(r, c));
  auto y = m.apply(rvec({2, -1}));
  CHECK(y == rvec({2, 1, 1}));
}

TEST_CASE("cohomology dimension of an exact pair is zero") {
  QMatrix d_in = from_rows(2, 1, {{1}, {0}});
  QMatrix d_out = from_rows(1, 2, {{0, 1}});
  CHECK(cohomology_dim(d_out, d_in) == 0);
}

TEST_CASE("cohomology dimension rejects non-composable pairs") {
  QMatrix d_in = from_rows(2, 1, {{1}, {1}});
  QMatrix d_out = from_rows(1, 2, {{1, 0}});
  CHECK_THROWS_AS(cohomology_dim(d_out, d_in), Error);
}

TEST_CASE("pivot permutation changes the solution, not solvability") {
  // x + y = 3 has (3, 0) under the default order; offering column 1 first
  // pins x instead.
  QMatrix m = from_rows(1, 2, {{1, 1}});
  std::vector<int> order = {1, 0};
  auto def = solve_affine(m, rvec({3}));
  auto swapped = solve_affine(m, rvec({3}), &order);
  REQUIRE(def.has_value());
  REQUIRE(swapped.has_value());
  CHECK((*def)[0] == make_rational(3, 1));
  CHECK((*swapped)[1] == make_rational(3, 1));
  CHECK((*swapped)[0] == 0);
}

TEST_CASE("randomized: kernel vectors annihilate, ranks transpose-stable") {
  std::mt19937_64 rng(20260814ull);
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 6);
    int cols = 1 + static_cast<int>(rng() % 6);
    QMatrix m = random_matrix(rng, rows, cols, 45);
    int rk = rank(m);
    CHECK(rk == rank(m.transpose()));
    auto basis = kernel_basis(m);
    CHECK(static_cast<int>(basis.size()) == cols - rk);
    for (const auto& v : basis) CHECK(is_zero_vec(m.apply(v)));
  }
}

TEST_CASE("randomized: affine solves verify exactly") {
  std::mt19937_64 rng(987654321ull);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 5);
    int cols = 1 + static_cast<int>(rng() % 5);
    QMatrix m = random_matrix(rng, rows, cols, 50);
    // Build a consistent right-hand side from a random preimage.
    std::vector<Rational> x0;
    for (int c = 0; c < cols; ++c)
      x0.push_back(make_rational(static_cast<long>(rng() % 7) - 3, 1));
    auto b = m.apply(x0);
    auto x = solve_affine(m, b);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == b);
    ++solved;
  }
  CHECK(solved == 60);
}
