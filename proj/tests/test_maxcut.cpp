#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "sossym/maxcut.hpp"
#include "sossym/moment.hpp"

using namespace sossym;
using namespace sossym::maxcut;

namespace {

// Standard-basis route: y_I = C(ω,|I|)/C(n,|I|), inverted to the zeta basis by
// brute-force Möbius inversion over all subsets.
Rational basis_value_by_inversion(int n, const Rational& omega, oracle::Mask i) {
  Rational s = 0;
  const oracle::Mask full = (oracle::Mask{1} << n) - 1;
  const oracle::Mask rest = full & ~i;
  for (oracle::Mask h = rest;; h = (h - 1) & rest) {
    const int u = oracle::popcount(i | h);
    const Rational term = oracle::gbinom(omega, u) / oracle::binom(n, u);
    s += oracle::popcount(h) % 2 ? -term : term;
    if (h == 0) break;
  }
  return s;
}

}  // namespace

TEST_CASE("gl_solution at n=3 matches the closed form and the inversion oracle") {
  const Rational omega = ratio(3, 2);
  const auto sol = gl_solution(3, omega);
  for (int k = 0; k <= 3; ++k) {
    const Rational expected = Rational(4) * ratio(3, 128) * ((3 - k) % 2 ? -1 : 1) / (omega - k);
    CHECK(sol.levels[k] == expected);
    CHECK(sol.levels[k] == basis_value_by_inversion(3, omega, (oracle::Mask{1} << k) - 1));
  }
  CHECK(sol.levels.total_mass() == 1);
}

TEST_CASE("gl_solution rejects integral or out-of-range omega") {
  CHECK_THROWS_AS(gl_solution(6, 3), std::invalid_argument);
  CHECK_THROWS_AS(gl_solution(5, ratio(-1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(gl_solution(5, ratio(11, 4)), std::invalid_argument);
  CHECK_NOTHROW(gl_solution(5, ratio(7, 3)));
}

TEST_CASE("objective and integral optimum at n=5") {
  const auto sol = gl_solution(5, ratio(5, 2));
  const Instance inst{5, ratio(5, 2)};
  CHECK(objective(inst.objective_levels(), sol.levels) == ratio(25, 4));
  CHECK(inst.integral_optimum() == 6);
  CHECK(pseudo_expectation(sol, PolynomialQ{1}) == 1);
  CHECK(pseudo_expectation(sol, PolynomialQ{0, 5, -1}) == ratio(25, 4));
  CHECK_THROWS_AS(pseudo_expectation(sol, PolynomialQ{0, 0, 0, 0, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("pseudo-expectation equals evaluation at omega for 30 random polynomials at n=7") {
  std::mt19937_64 rng(79);
  const Rational omega = ratio(7, 2);
  const auto sol = gl_solution(7, omega);
  for (int trial = 0; trial < 30; ++trial) {
    RationalVector c(1 + trial % 8);
    for (auto& x : c) x = oracle::small_rational(rng, 5, 6);
    const PolynomialQ p(c);
    CHECK(lemma1_check(sol, p));
    Rational direct = 0;
    for (std::size_t i = 0; i < c.size(); ++i) direct += c[i] * pow(omega, static_cast<unsigned>(i));
    CHECK(pseudo_expectation(sol, p) == direct);
  }
}

TEST_CASE("pseudo-expectation on the monomial basis, including omega below n/2") {
  for (int n : {3, 5, 7})
    for (const Rational& omega : std::vector<Rational>{ratio(n, 2), ratio(n - 2, 2), ratio(1, 3)}) {
      const auto sol = gl_solution(n, omega);
      PolynomialQ mono{1};
      for (int d = 0; d <= n; ++d) {
        CHECK(pseudo_expectation(sol, mono) == pow(omega, static_cast<unsigned>(d)));
        mono = mono * PolynomialQ::identity();
      }
    }
}

TEST_CASE("the standard form converts to the level solution") {
  for (int n : {3, 5, 7}) {
    const Rational omega = ratio(n, 2);
    const int t = (n + 1) / 2;
    const SetFunction y = standard_form(n, omega, t);
    CHECK(standard_to_basis(y, t) == lift_levels(gl_solution(n, omega).levels));
  }
}

TEST_CASE("feasibility examples") {
  const auto r5 = certify_feasibility(5, ratio(5, 2), 2);
  CHECK(r5.feasible);
  CHECK(*r5.reduce_psd);
  CHECK(*r5.direct_psd);
  CHECK(r5.objective == ratio(25, 4));
  CHECK(r5.integral_opt == 6);
  CHECK(r5.gap == ratio(25, 24));
  CHECK(*r5.matrix_dim == 16);

  CHECK(certify_feasibility(7, ratio(7, 2), 3).feasible);

  // above ⌊ω⌋ the verdict is measured; both paths must still agree
  const auto r53 = certify_feasibility(5, ratio(5, 2), 3);
  CHECK(*r53.reduce_psd == *r53.direct_psd);
  CHECK(r53.objective == ratio(25, 4));
}

TEST_CASE("reduction and direct paths agree across omega and t") {
  for (int n = 3; n <= 8; ++n)
    for (const Rational& omega : std::vector<Rational>{ratio(2 * n - 1, 4), ratio(n, 2) - ratio(1, 3), ratio(3, 2)}) {
      if (omega * 2 > n || omega.get_den() == 1) continue;
      for (int t = 1; t <= n; ++t) {
        const auto rep = certify_feasibility(n, omega, t, Mode::both);
        CHECK(*rep.reduce_psd == *rep.direct_psd);
        CHECK(rep.objective == omega * (n - omega));
      }
    }
}

TEST_CASE("mode parsing") {
  CHECK(parse_mode("reduce") == Mode::reduce);
  CHECK(parse_mode("direct") == Mode::direct);
  CHECK(parse_mode("both") == Mode::both);
  CHECK(to_string(Mode::both) == "both");
  CHECK_THROWS_AS(parse_mode("fast"), std::invalid_argument);
  const auto only_reduce = certify_feasibility(5, ratio(5, 2), 2, Mode::reduce);
  CHECK_FALSE(only_reduce.direct_psd.has_value());
  CHECK(only_reduce.feasible);
}
