#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "sossym/combinatorics.hpp"
#include "sossym/matrix.hpp"
#include "sossym/rational.hpp"

namespace sossym {

/// Exact symmetric factorization P M Pᵀ = L D Lᵀ with D >= 0.
/// Row i of P M Pᵀ is row permutation[i] of M. Positions whose pivot is
/// zero carry an identity column in L.
struct PsdCertificate {
  std::vector<std::size_t> permutation;
  RationalVector diag;
  RationalMatrix lower;

  std::size_t dimension() const { return diag.size(); }
  std::size_t rank() const;
  std::size_t kernel_dimension() const { return dimension() - rank(); }
};

/// A vector v with vᵀ M v < 0; value holds vᵀ M v.
struct IndefWitness {
  RationalVector v;
  Rational value;
};

using PsdVerdict = std::variant<PsdCertificate, IndefWitness>;

inline bool is_psd(const PsdVerdict& v) { return std::holds_alternative<PsdCertificate>(v); }

/// Pivoted LDLᵀ, always choosing the largest remaining diagonal entry.
///
/// On a PSD input the factorization runs to completion, possibly ending in an
/// all-zero Schur complement (the kernel). Otherwise it stops at the first
/// negative diagonal, or at an all-zero diagonal with a non-zero off-diagonal
/// entry, and lifts the offending direction back through L into a witness.
/// Every witness is re-checked by an independent quadratic-form evaluation
/// before it is returned; a failed check throws std::logic_error.
///
/// Throws std::invalid_argument on a non-symmetric input.
PsdVerdict certify_psd(const RationalMatrix& m);

/// Reconstructs L D Lᵀ and compares it entrywise with P M Pᵀ. Also checks
/// that D >= 0, L is unit lower triangular and the permutation is valid.
bool verify_certificate(const RationalMatrix& m, const PsdCertificate& cert);

/// vᵀ M v < 0 on direct re-evaluation.
bool verify_witness(const RationalMatrix& m, const IndefWitness& w);

/// vᵀ M v (the unnormalized Rayleigh quotient).
Rational rayleigh(const RationalMatrix& m, std::span<const Rational> v);

/// Coefficients α_{i,j} of a structured vector / G_h polynomial, keyed (i, j).
/// Absent keys are zero.
using AlphaCoefficients = std::map<std::pair<int, int>, Rational>;

/// Checks 0 <= i <= t and 0 <= j <= min(h, i) for every key.
void validate_alpha(const AlphaCoefficients& alpha, int h, int t);

/// u_h = Σ α_{i,j} b_{i,j} over P_t(N), where [b_{i,j}]_Q = 1 iff |Q| = i
/// and |Q ∩ H| = j for H = {1..h}.
struct StructuredVector {
  int h = 0;
  int t = 0;
  int n = 0;
  AlphaCoefficients alpha;
  RationalVector values;
};

StructuredVector structured_vector(int h, int t, int n, const AlphaCoefficients& alpha);

/// Same vector against an explicit index (must be P_t(N)).
RationalVector realize_structured(int h, const AlphaCoefficients& alpha, const SubsetIndex& index);

}  // namespace sossym
