#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "sossym/combinatorics.hpp"
#include "sossym/rational.hpp"

using namespace sossym;

TEST_CASE("rationals are canonical and print as p/q") {
  CHECK(to_string(parse_rational("6/4")) == "3/2");
  CHECK(to_string(parse_rational("-10/5")) == "-2");
  CHECK_THROWS_AS(parse_rational("3/-6"), std::invalid_argument);
  CHECK(to_string(parse_rational("+7")) == "7");
  CHECK(to_string(ratio(4, -8)) == "-1/2");
  CHECK(ratio(4, -8).get_den() == 2);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(ratio(1, 0), std::invalid_argument);
}

TEST_CASE("large magnitudes add exactly") {
  const Rational a = parse_rational("123456789012345678901234567890/987654321098765432109876543211");
  const Rational b = parse_rational("-1/987654321098765432109876543211");
  const Rational s = a + b;
  CHECK(s * parse_rational("987654321098765432109876543211") == parse_rational("123456789012345678901234567889"));
  CHECK(pow2(-70) * pow2(70) == 1);
  CHECK(pow(ratio(-2, 3), 3) == ratio(-8, 27));
}

TEST_CASE("binomial examples") {
  CHECK(binom(5, 2) == 10);
  CHECK(binom(4, -1) == 0);
  CHECK(binom(7, 7) == 1);
  CHECK(binom(3, 4) == 0);
  CHECK(binom_int(60, 30) == Integer("118264581564861424"));
}

TEST_CASE("generalized binomial and falling factorial examples") {
  CHECK(generalized_binom(ratio(3, 2), 4) == ratio(3, 128));
  CHECK(generalized_binom(ratio(3, 2), 4) == oracle::gbinom(ratio(3, 2), 4));
  CHECK(generalized_binom(ratio(-7, 3), 0) == 1);
  CHECK(generalized_binom(5, 2) == 10);
  CHECK(falling_factorial(5, 3) == 60);
  CHECK(falling_factorial(ratio(11, 7), 0) == 1);
  CHECK(falling_factorial(ratio(3, 2), 2) == ratio(3, 4));
}

TEST_CASE("binomial symmetry and agreement with the product oracle") {
  for (long n = 0; n <= 30; ++n)
    for (long k = -2; k <= n + 2; ++k) {
      CHECK(binom(n, k) == binom(n, n - k));
      CHECK(binom(n, k) == oracle::binom(n, k));
      if (k >= 0) CHECK(generalized_binom(Rational(n), static_cast<int>(k)) == binom(n, k));
    }
}

TEST_CASE("falling factorial is generalized binomial times m!") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Rational x = oracle::small_rational(rng, 10, 9);
    const int m = static_cast<int>(rng() % 9);
    CHECK(falling_factorial(x, m) == generalized_binom(x, m) * Rational(factorial(m)));
    CHECK(falling_factorial(x, m) == oracle::falling(x, m));
  }
}

TEST_CASE("subset rank examples") {
  CHECK(subset_rank(0, 5, 2).rank == 0);
  CHECK(subset_rank(make_subset({1}), 3, 2).rank == 1);
  CHECK(subset_rank(make_subset({3}), 3, 2).rank == 3);
  CHECK(subset_rank(make_subset({1, 2}), 3, 2).rank == 4);
  CHECK(subset_rank(make_subset({1, 3}), 3, 2).rank == 5);
  CHECK(subset_rank(make_subset({2, 3}), 3, 2).rank == 6);
  CHECK_THROWS_AS(subset_rank(make_subset({1, 2, 3}), 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(subset_rank(make_subset({5}), 4, 2), std::invalid_argument);
}

TEST_CASE("rank and unrank are inverse and follow size-then-colex order") {
  for (int n = 1; n <= 9; ++n)
    for (int q = 0; q <= n; ++q) {
      const auto expected = oracle::ordered_subsets(n, q);
      REQUIRE(level_set_size(n, q) == expected.size());
      const SubsetIndex index(n, q);
      REQUIRE(index.size() == expected.size());
      for (std::size_t r = 0; r < expected.size(); ++r) {
        CHECK(subset_unrank({n, q, r}) == expected[r]);
        CHECK(subset_rank(expected[r], n, q).rank == r);
        CHECK(index[r] == expected[r]);
        CHECK(index.rank(expected[r]) == r);
      }
    }
}

TEST_CASE("subset enumeration helpers") {
  std::set<Subset> seen;
  for_each_k_subset(7, 3, [&](Subset s) {
    CHECK(cardinality(s) == 3);
    seen.insert(s);
  });
  CHECK(seen.size() == 35);
  int count = 0;
  for_each_subset_of(make_subset({2, 4, 6, 7}), 2, [&](Subset s) {
    CHECK(is_subset(s, make_subset({2, 4, 6, 7})));
    ++count;
  });
  CHECK(count == 11);
  CHECK(elements_of(make_subset({5, 1, 3})) == std::vector<int>{1, 3, 5});
}
