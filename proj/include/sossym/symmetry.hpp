#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sossym/moment.hpp"
#include "sossym/polynomial.hpp"
#include "sossym/psd.hpp"

namespace sossym {

/// G_h(k) = Σ_r C(h,r) h_r(k) (Σ_j C(r,j) p_j(k-r))², with
/// h_r(k) = k^(r) (n-k)^(h-r) (falling powers) and
/// p_j(x) = Σ_{i<=t-j} α_{i+j,j} C(x,i), expanded in the monomial basis.
struct GhPolynomial {
  int h = 0;
  int t = 0;
  int n = 0;
  AlphaCoefficients alpha;
  PolynomialQ expanded;

  Rational operator()(const Rational& k) const { return expanded(k); }
};

/// Throws std::invalid_argument unless 0 <= h <= t <= n and α is in range.
GhPolynomial build_gh(int h, int t, int n, const AlphaCoefficients& alpha);

/// Second expansion route through Vandermonde's identity,
///   C(k-r, a) = Σ_q C(k-h, q) C(h-r, a-q),
/// which regroups G_h into terms C(k-h,q) C(k-h,s) C(k). Every C(k) is checked
/// against its degree bound i+j+(a-q)+(b-s); a violation throws std::logic_error.
PolynomialQ build_gh_regrouped(int h, int t, int n, const AlphaCoefficients& alpha);

/// C'_d(k) = Σ_r C(h,r) (n-k)^(h-r) k^(r) (r+d)^(d), d = 0..max_d. Throws
/// std::logic_error if some C'_d has degree above d.
std::vector<PolynomialQ> shifted_falling_sums(int h, int n, int max_d);

/// Index pairs (i, j), 0 <= i <= t, 0 <= j <= min(h, i), in block order.
std::vector<std::pair<int, int>> alpha_index(int h, int t);

/// Basis of the α for which u_h sums to zero over the i-subsets of every Q
/// with |Q| < h or |Q| > n-h, for each i <= t. These are the coefficient
/// vectors that arise when H is the smallest set with a non-zero Π_H-average;
/// only for them does G_h vanish on {0..h-1} ∪ {n-h+1..n}. An arbitrary α
/// still yields a valid test vector, so the reduced blocks stay unconstrained.
std::vector<AlphaCoefficients> vanishing_alpha_basis(int h, int t, int n);

/// The quadratic form α ↦ Σ_k z_k C(n,k) G_h(k; α) as a symmetric matrix.
struct ReducedBlock {
  int h = 0;
  int t = 0;
  int n = 0;
  std::vector<std::pair<int, int>> index;
  RationalMatrix q;
};

ReducedBlock reduced_block(int h, int t, int n, const LevelVector& z);

/// αᵀ Q α for coefficients given as a map.
Rational evaluate_block(const ReducedBlock& block, const AlphaCoefficients& alpha);

struct BlockVerdict {
  int h = 0;
  /// h > ⌊n/2⌋: every G_h vanishes on {0..n}, the block is identically zero.
  bool skipped = false;
  std::optional<ReducedBlock> block;
  std::optional<PsdVerdict> verdict;

  bool psd() const { return skipped || (verdict && is_psd(*verdict)); }
};

struct ReductionResult {
  int n = 0;
  int t = 0;
  std::vector<BlockVerdict> blocks;

  bool all_psd() const;
};

/// Certifies Q_0..Q_t. All PSD iff Σ_k z_k Σ_{|I|=k} Z_I Z_Iᵀ over P_t(N) is PSD.
ReductionResult check_reduction(const LevelVector& z, int t);

struct Lemma8Report {
  int degree = -1;
  bool degree_ok = false;
  bool zeros_ok = false;
  /// G_h >= 0 on the quarter-step grid over [h-1, n-h+1].
  bool grid_ok = false;
  /// No odd-multiplicity root strictly inside any grid cell.
  bool cells_ok = false;
  /// No odd-multiplicity root strictly inside (h-1, n-h+1) and a non-negative
  /// interior sample: together these certify G_h >= 0 on the closed interval.
  bool interval_ok = false;

  bool all() const { return degree_ok && zeros_ok && grid_ok && cells_ok && interval_ok; }
};

Lemma8Report lemma8_suite(const GhPolynomial& gh);

struct Lemma9Report {
  RationalVector brute_force;  // A_k by enumeration
  RationalVector predicted;    // C(n,k) G_h(k) / n^(h)
  bool identity_ok = false;
  /// Only when z is supplied: u_hᵀ M u_h == Σ_k z_k A_k == αᵀ Q_h α / n^(h).
  std::optional<bool> bridge_ok;
};

/// Brute force over all subsets; requires n <= 16.
Lemma9Report lemma9_identity(int h, int t, int n, const AlphaCoefficients& alpha,
                             const std::optional<LevelVector>& z = std::nullopt);

}  // namespace sossym
