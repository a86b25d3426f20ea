#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sossym/rational.hpp"

namespace sossym {

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// Trailing zeros are always trimmed, so degree() is exact (-1 for zero).
class PolynomialQ {
 public:
  PolynomialQ() = default;
  explicit PolynomialQ(RationalVector coeffs);
  PolynomialQ(std::initializer_list<Rational> coeffs);
  static PolynomialQ constant(const Rational& c);
  /// The polynomial x.
  static PolynomialQ identity();
  /// x(x-1)...(x-m+1) evaluated at (a x + b).
  static PolynomialQ falling(const Rational& a, const Rational& b, int m);
  /// binom(x - shift, i) as a polynomial in x.
  static PolynomialQ newton_binomial(const Rational& shift, int i);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const RationalVector& coeffs() const { return coeffs_; }
  /// Coefficient of x^i (zero beyond the degree).
  Rational coeff(int i) const;
  const Rational& leading() const { return coeffs_.back(); }

  Rational operator()(const Rational& x) const;

  PolynomialQ derivative() const;
  PolynomialQ monic() const;

  PolynomialQ& operator+=(const PolynomialQ& o);
  PolynomialQ& operator-=(const PolynomialQ& o);
  PolynomialQ& operator*=(const Rational& c);

  friend PolynomialQ operator+(PolynomialQ a, const PolynomialQ& b) { return a += b; }
  friend PolynomialQ operator-(PolynomialQ a, const PolynomialQ& b) { return a -= b; }
  friend PolynomialQ operator*(PolynomialQ a, const Rational& c) { return a *= c; }
  friend PolynomialQ operator*(const Rational& c, PolynomialQ a) { return a *= c; }
  friend PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b);
  friend bool operator==(const PolynomialQ& a, const PolynomialQ& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  RationalVector coeffs_;
};

/// Quotient and remainder; throws std::domain_error for a zero divisor.
std::pair<PolynomialQ, PolynomialQ> divmod(const PolynomialQ& a, const PolynomialQ& b);
/// Monic gcd (zero when both are zero).
PolynomialQ gcd(PolynomialQ a, PolynomialQ b);
/// Exact division; throws std::logic_error if b does not divide a.
PolynomialQ exact_quotient(const PolynomialQ& a, const PolynomialQ& b);

/// Yun's square-free factorization: f = c · Π_i factors[i]^(i+1), each factor
/// square-free and pairwise coprime. Requires f non-zero.
std::vector<PolynomialQ> squarefree_factors(const PolynomialQ& f);

/// Product of the square-free factors of odd multiplicity: its roots are
/// exactly the roots of f where f changes sign.
PolynomialQ odd_multiplicity_part(const PolynomialQ& f);

/// Canonical Sturm sequence p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
std::vector<PolynomialQ> sturm_sequence(const PolynomialQ& p);

/// Sign variations of the sequence at x, zeros dropped.
int sign_variations(const std::vector<PolynomialQ>& sturm, const Rational& x);

/// Number of distinct real roots of a non-zero polynomial in (a, b].
int count_roots_half_open(const PolynomialQ& p, const Rational& a, const Rational& b);

/// Number of distinct real roots strictly inside (a, b).
int count_roots_open(const PolynomialQ& p, const Rational& a, const Rational& b);

}  // namespace sossym
