#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "sossym/moment.hpp"
#include "sossym/polynomial.hpp"
#include "sossym/symmetry.hpp"

namespace sossym::maxcut {

/// Max-Cut on the complete graph K_n with target side size ω.
struct Instance {
  int n = 0;
  Rational omega;

  /// f_k = k(n-k), the cut value of a side of size k.
  RationalVector objective_levels() const;
  /// ⌊n/2⌋·⌈n/2⌉.
  Rational integral_optimum() const;
};

/// y_k = (n+1) C(ω, n+1) (-1)^{n-k} / (ω - k).
struct GLSolution {
  Instance instance;
  LevelVector levels;
};

/// Throws std::invalid_argument for integral ω (the formula divides by ω-k),
/// ω < 0 or ω > n/2.
GLSolution gl_solution(int n, const Rational& omega);

/// Σ_k C(n,k) y_k P(k) for P of degree <= n (std::invalid_argument otherwise).
Rational pseudo_expectation(const GLSolution& sol, const PolynomialQ& p);

/// Σ_k C(n,k) y_k P(k) == P(ω).
bool lemma1_check(const GLSolution& sol, const PolynomialQ& p);

/// y_I = C(ω,|I|)/C(n,|I|) for |I| <= 2t, the solution in the standard basis.
SetFunction standard_form(int n, const Rational& omega, int t);

enum class Mode { reduce, direct, both };
Mode parse_mode(const std::string& s);
std::string to_string(Mode m);

struct FeasibilityReport {
  int n = 0;
  Rational omega;
  int t = 0;
  Mode mode = Mode::both;
  bool feasible = false;
  std::optional<bool> reduce_psd;
  std::optional<bool> direct_psd;
  /// Zero pivots of the direct factorization (direct / both modes).
  std::optional<std::size_t> kernel_dim;
  std::optional<std::size_t> matrix_dim;
  Rational objective;
  Rational integral_opt;
  Rational gap;
  std::int64_t runtime_ms = 0;
  std::optional<ReductionResult> reduction;
  std::optional<PsdVerdict> direct;
};

/// Runs the selected paths on Σ_k y_k Σ_{|I|=k} Z_I Z_Iᵀ over P_t(N). In
/// `both` mode a disagreement between the paths throws std::logic_error.
FeasibilityReport certify_feasibility(int n, const Rational& omega, int t, Mode mode = Mode::both);

}  // namespace sossym::maxcut
