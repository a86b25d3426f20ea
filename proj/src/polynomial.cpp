#include "sossym/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "sossym/combinatorics.hpp"

namespace sossym {

PolynomialQ::PolynomialQ(RationalVector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

PolynomialQ::PolynomialQ(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

PolynomialQ PolynomialQ::constant(const Rational& c) { return PolynomialQ(RationalVector{c}); }

PolynomialQ PolynomialQ::identity() { return PolynomialQ(RationalVector{0, 1}); }

PolynomialQ PolynomialQ::falling(const Rational& a, const Rational& b, int m) {
  if (m < 0) throw std::invalid_argument("falling factorial order must be non-negative");
  PolynomialQ r = constant(1);
  for (int i = 0; i < m; ++i) r = r * PolynomialQ(RationalVector{b - i, a});
  return r;
}

PolynomialQ PolynomialQ::newton_binomial(const Rational& shift, int i) {
  PolynomialQ r = falling(1, -shift, i);
  r *= Rational(1) / Rational(factorial(i));
  return r;
}

void PolynomialQ::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational PolynomialQ::coeff(int i) const {
  return i >= 0 && i < static_cast<int>(coeffs_.size()) ? coeffs_[static_cast<std::size_t>(i)] : Rational(0);
}

Rational PolynomialQ::operator()(const Rational& x) const {
  Rational acc = 0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc *= x;
    acc += coeffs_[i];
  }
  return acc;
}

PolynomialQ PolynomialQ::derivative() const {
  if (coeffs_.size() <= 1) return {};
  RationalVector d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return PolynomialQ(std::move(d));
}

PolynomialQ PolynomialQ::monic() const {
  if (is_zero()) return {};
  PolynomialQ r = *this;
  r *= Rational(1) / leading();
  return r;
}

PolynomialQ& PolynomialQ::operator+=(const PolynomialQ& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

PolynomialQ& PolynomialQ::operator-=(const PolynomialQ& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

PolynomialQ& PolynomialQ::operator*=(const Rational& c) {
  for (Rational& x : coeffs_) x *= c;
  trim();
  return *this;
}

PolynomialQ operator*(const PolynomialQ& a, const PolynomialQ& b) {
  if (a.is_zero() || b.is_zero()) return {};
  RationalVector c(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return PolynomialQ(std::move(c));
}

std::string PolynomialQ::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (sgn(coeffs_[i]) == 0) continue;
    if (!first) os << " + ";
    os << "(" << sossym::to_string(coeffs_[i]) << ")";
    if (i >= 1) os << "*k";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return os.str();
}

std::pair<PolynomialQ, PolynomialQ> divmod(const PolynomialQ& a, const PolynomialQ& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {PolynomialQ{}, a};
  RationalVector rem = a.coeffs();
  RationalVector quot(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const Rational& lead = b.leading();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    const Rational f = rem[static_cast<std::size_t>(i + b.degree())] / lead;
    quot[static_cast<std::size_t>(i)] = f;
    if (sgn(f) == 0) continue;
    for (int j = 0; j <= b.degree(); ++j) rem[static_cast<std::size_t>(i + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {PolynomialQ(std::move(quot)), PolynomialQ(std::move(rem))};
}

PolynomialQ gcd(PolynomialQ a, PolynomialQ b) {
  while (!b.is_zero()) {
    PolynomialQ r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

PolynomialQ exact_quotient(const PolynomialQ& a, const PolynomialQ& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_quotient: non-zero remainder");
  return q;
}

std::vector<PolynomialQ> squarefree_factors(const PolynomialQ& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree_factors of the zero polynomial");
  std::vector<PolynomialQ> out;
  if (f.degree() == 0) return out;
  const PolynomialQ fm = f.monic();
  PolynomialQ a = gcd(fm, fm.derivative());
  PolynomialQ b = exact_quotient(fm, a);
  PolynomialQ c = exact_quotient(fm.derivative(), a);
  PolynomialQ d = c - b.derivative();
  while (b.degree() > 0) {
    a = gcd(b, d);
    out.push_back(a);
    b = exact_quotient(b, a);
    c = exact_quotient(d, a);
    d = c - b.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

PolynomialQ odd_multiplicity_part(const PolynomialQ& f) {
  PolynomialQ p = PolynomialQ::constant(1);
  const auto factors = squarefree_factors(f);
  for (std::size_t i = 0; i < factors.size(); i += 2) p = p * factors[i];
  return p;
}

std::vector<PolynomialQ> sturm_sequence(const PolynomialQ& p) {
  std::vector<PolynomialQ> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  PolynomialQ d = p.derivative();
  while (!d.is_zero()) {
    seq.push_back(d);
    PolynomialQ r = divmod(seq[seq.size() - 2], seq.back()).second;
    r *= -1;
    d = std::move(r);
  }
  return seq;
}

int sign_variations(const std::vector<PolynomialQ>& sturm, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const PolynomialQ& p : sturm) {
    const int s = sgn(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int count_roots_half_open(const PolynomialQ& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  if (!(a < b)) return 0;
  // Distinct roots of p are the roots of its square-free part.
  const PolynomialQ sf = exact_quotient(p, gcd(p, p.derivative()));
  const auto seq = sturm_sequence(sf);
  return sign_variations(seq, a) - sign_variations(seq, b);
}

int count_roots_open(const PolynomialQ& p, const Rational& a, const Rational& b) {
  if (!(a < b)) return 0;
  return count_roots_half_open(p, a, b) - (sgn(p(b)) == 0 ? 1 : 0);
}

}  // namespace sossym
