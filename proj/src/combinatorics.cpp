#include "sossym/combinatorics.hpp"

#include <stdexcept>
#include <string>

namespace sossym {

Subset make_subset(const std::vector<int>& elements) {
  Subset s = 0;
  for (int e : elements) {
    if (e < 1 || e > kMaxGroundSet) throw std::invalid_argument("subset element out of range: " + std::to_string(e));
    s |= singleton(e);
  }
  return s;
}

std::vector<int> elements_of(Subset s) {
  std::vector<int> out;
  for (int i = 1; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

Integer binom_int(long n, long k) {
  if (n < 0) throw std::invalid_argument("binom: n must be non-negative");
  if (k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational binom(long n, long k) { return Rational(binom_int(n, k)); }

std::size_t binom_count(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

Integer factorial(int m) {
  if (m < 0) throw std::invalid_argument("factorial of negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(m));
  return r;
}

Rational falling_factorial(const Rational& x, int m) {
  if (m < 0) throw std::invalid_argument("falling_factorial: order must be non-negative");
  Rational r(1);
  for (int i = 0; i < m; ++i) r *= x - i;
  return r;
}

Rational generalized_binom(const Rational& x, int m) {
  if (m < 0) throw std::invalid_argument("generalized_binom: order must be non-negative");
  Rational r = falling_factorial(x, m);
  r /= Rational(factorial(m));
  return r;
}

std::size_t level_set_size(int n, int q) {
  std::size_t total = 0;
  for (int i = 0; i <= q && i <= n; ++i) total += binom_count(n, i);
  return total;
}

namespace {

void check_shape(int n, int q) {
  if (n < 1 || n > kMaxGroundSet) throw std::invalid_argument("ground set size out of range: " + std::to_string(n));
  if (q < 0 || q > n) throw std::invalid_argument("subset level q out of range: " + std::to_string(q));
}

}  // namespace

SubsetRank subset_rank(Subset subset, int n, int q) {
  check_shape(n, q);
  if (!is_subset(subset, ground_set(n))) throw std::invalid_argument("subset not contained in {1..n}");
  const int size = cardinality(subset);
  if (size > q) throw std::invalid_argument("subset larger than level q");

  std::size_t rank = level_set_size(n, size - 1);
  // Combinatorial number system: sum over the j-th smallest element e_j (0-based) of C(e_j, j+1).
  int j = 0;
  for (int e = 0; subset != 0; ++e, subset >>= 1)
    if (subset & 1u) rank += binom_count(e, ++j);
  return {n, q, rank};
}

Subset subset_unrank(const SubsetRank& r) {
  check_shape(r.n, r.q);
  std::size_t rank = r.rank;
  int size = 0;
  for (; size <= r.q; ++size) {
    const std::size_t block = binom_count(r.n, size);
    if (rank < block) break;
    rank -= block;
  }
  if (size > r.q) throw std::invalid_argument("subset rank out of range");

  Subset s = 0;
  for (int j = size; j >= 1; --j) {
    int e = j - 1;
    while (binom_count(e + 1, j) <= rank) ++e;
    rank -= binom_count(e, j);
    s |= Subset{1} << e;
  }
  return s;
}

SubsetIndex::SubsetIndex(int n, int q) : n_(n), q_(q) {
  check_shape(n, q);
  subsets_.reserve(level_set_size(n, q));
  for (int k = 0; k <= q; ++k) for_each_k_subset(n, k, [&](Subset s) { subsets_.push_back(s); });
  lookup_.reserve(subsets_.size());
  for (std::size_t i = 0; i < subsets_.size(); ++i) lookup_.emplace(subsets_[i], i);
}

std::size_t SubsetIndex::rank(Subset s) const {
  const auto it = lookup_.find(s);
  if (it == lookup_.end()) throw std::invalid_argument("subset not in P_q(N)");
  return it->second;
}

}  // namespace sossym
