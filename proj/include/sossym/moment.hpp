#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "sossym/combinatorics.hpp"
#include "sossym/matrix.hpp"
#include "sossym/rational.hpp"

namespace sossym {

/// A symmetric set function: values[k] is the common value on all |I| = k.
struct LevelVector {
  int n = 0;
  RationalVector values;  // length n + 1

  LevelVector() = default;
  LevelVector(int n_, RationalVector v);
  static LevelVector zeros(int n);

  const Rational& operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
  Rational& operator[](int k) { return values[static_cast<std::size_t>(k)]; }

  /// Σ_k C(n,k) values[k], i.e. the sum over all subsets.
  Rational total_mass() const;

  friend bool operator==(const LevelVector&, const LevelVector&) = default;
};

/// Sparse map I -> value over subsets of {1..n}; absent keys are zero.
struct SetFunction {
  int n = 0;
  std::unordered_map<Subset, Rational> entries;

  explicit SetFunction(int n_ = 0) : n(n_) {}

  Rational get(Subset s) const;
  /// Stores v (erases the key when v == 0).
  void set(Subset s, const Rational& v);
  void add(Subset s, const Rational& v);
  Rational total() const;

  friend bool operator==(const SetFunction& a, const SetFunction& b);
};

/// A set function whose value depends only on |I| and |I ∩ marked|.
/// values[k][m] is the value for |I| = k, |I ∩ marked| = m.
struct MarkedLevelFunction {
  int n = 0;
  Subset marked = 0;
  std::vector<RationalVector> values;

  Rational at(Subset s) const;
  SetFunction expand() const;
};

/// Dense symmetric matrix over P_q(N) in SubsetRank order.
struct MomentMatrix {
  int n = 0;
  int q = 0;
  RationalMatrix matrix;
};

/// g(x) = Σ_i coeffs[i-1] x_i + constant; the constraint is g(x) >= 0.
struct LinearConstraint {
  RationalVector coeffs;
  Rational constant;

  int n() const { return static_cast<int>(coeffs.size()); }
  /// g(x_I) = Σ_{i in I} g_i + g_0.
  Rational evaluate(Subset s) const;
  /// All g_i equal.
  bool is_symmetric() const;
};

/// 0/1 vector over P_q(N): entry rank(J) is 1 iff J ⊆ I.
std::vector<std::uint8_t> zeta_vector(Subset subset, int n, int q);

/// Σ_k z_k Σ_{|I|=k} Z_I Z_Iᵀ over P_q(N), via the closed form
/// entry(A,B) = Σ_k z_k C(n - |A∪B|, k - |A∪B|).
MomentMatrix matrix_from_levels(const LevelVector& z, int q);

/// Σ_H w_H Z_H Z_Hᵀ; entry(I,J) = Σ_{H ⊇ I∪J} w_H.
MomentMatrix matrix_from_setfn(const SetFunction& w, int q);

/// Same matrix for a marked-level function without expanding it.
MomentMatrix matrix_from_marked(const MarkedLevelFunction& f, int q);

/// Upward zeta transform w_I = Σ_{H ⊇ I} w^N_H, kept for |I| <= max_card
/// (max_card < 0 means no limit).
SetFunction basis_to_standard(const SetFunction& wN, int max_card = -1);

/// w^N_I = Σ_{H ⊆ N∖I, |H ∪ I| <= 2t} (-1)^{|H|} w_{I∪H}; entries of w with
/// |I| > 2t are ignored and the result vanishes above 2t.
SetFunction standard_to_basis(const SetFunction& w, int t);

/// Symmetric lift I -> z_{|I|}.
SetFunction lift_levels(const LevelVector& z);

/// z_k = (k g_1 + g_0) y_k. Throws std::invalid_argument unless g is symmetric.
LevelVector shift_levels(const LinearConstraint& g, const LevelVector& y);

/// z^N_I = g(x_I) y^N_I.
SetFunction shift_setfn(const LinearConstraint& g, const SetFunction& yN);

/// z^N_I = g(x_I) y_{|I|} for g constant on `marked` and on its complement.
/// Throws std::invalid_argument otherwise.
MarkedLevelFunction shift_marked(const LinearConstraint& g, const LevelVector& y, Subset marked);

/// Σ_k C(n,k) f_k y_k for a symmetric objective given by its level values.
Rational objective(const RationalVector& f_levels, const LevelVector& y);

}  // namespace sossym
