#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sossym/rational.hpp"

namespace sossym {

/// Subsets of N = {1..n} are bitmasks; element i is bit i-1. n <= 63.
using Subset = std::uint64_t;

constexpr int kMaxGroundSet = 63;

inline int cardinality(Subset s) { return __builtin_popcountll(s); }
inline bool contains(Subset s, int element) { return (s >> (element - 1)) & 1u; }
inline Subset singleton(int element) { return Subset{1} << (element - 1); }
inline Subset ground_set(int n) { return n == 64 ? ~Subset{0} : (Subset{1} << n) - 1; }
inline bool is_subset(Subset a, Subset b) { return (a & ~b) == 0; }

Subset make_subset(const std::vector<int>& elements);
std::vector<int> elements_of(Subset s);

/// C(n,k); zero when k < 0 or k > n. Requires n >= 0.
Rational binom(long n, long k);
/// Same value as an integer.
Integer binom_int(long n, long k);
/// C(n,k) as a machine integer, for layout sizes only.
std::size_t binom_count(int n, int k);

/// x(x-1)...(x-m+1)/m!, exact for rational x.
Rational generalized_binom(const Rational& x, int m);

/// x(x-1)...(x-m+1); 1 when m = 0.
Rational falling_factorial(const Rational& x, int m);

Integer factorial(int m);

/// Position of a subset in P_q(N) under colex order grouped by size
/// ascending; rank 0 is the empty set.
struct SubsetRank {
  int n = 0;
  int q = 0;
  std::size_t rank = 0;
};

/// Throws std::invalid_argument when |I| > q or I is not inside {1..n}.
SubsetRank subset_rank(Subset subset, int n, int q);
Subset subset_unrank(const SubsetRank& r);

/// |P_q(N)| = sum_{i<=q} C(n,i).
std::size_t level_set_size(int n, int q);

/// Materialized P_q(N) in rank order, plus the reverse lookup.
class SubsetIndex {
 public:
  SubsetIndex(int n, int q);

  int n() const { return n_; }
  int q() const { return q_; }
  std::size_t size() const { return subsets_.size(); }
  Subset operator[](std::size_t r) const { return subsets_[r]; }
  const std::vector<Subset>& subsets() const { return subsets_; }
  std::size_t rank(Subset s) const;
  bool contains(Subset s) const { return lookup_.count(s) != 0; }

 private:
  int n_;
  int q_;
  std::vector<Subset> subsets_;
  std::unordered_map<Subset, std::size_t> lookup_;
};

/// Calls f(subset) for every k-subset of {1..n} in colex order.
template <typename F>
void for_each_k_subset(int n, int k, F&& f) {
  if (k < 0 || k > n) return;
  if (k == 0) {
    f(Subset{0});
    return;
  }
  Subset s = (Subset{1} << k) - 1;
  const Subset limit = Subset{1} << n;
  while (s < limit) {
    f(s);
    const Subset c = s & (~s + 1);
    const Subset r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
}

/// Calls f(sub) for every sub ⊆ s with |sub| <= max_card.
template <typename F>
void for_each_subset_of(Subset s, int max_card, F&& f) {
  Subset sub = s;
  while (true) {
    if (cardinality(sub) <= max_card) f(sub);
    if (sub == 0) break;
    sub = (sub - 1) & s;
  }
}

}  // namespace sossym
