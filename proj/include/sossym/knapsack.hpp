#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sossym/moment.hpp"
#include "sossym/psd.hpp"
#include "sossym/symmetry.hpp"

namespace sossym::knapsack {

struct Instance {
  int n = 0;
  RationalVector costs;
  RationalVector profits;
  Rational demand;

  /// n unit items, demand 1 + 1/(n-1).
  static Instance gap_instance(int n);
};

/// Wolsey cover inequality for a set A with p(A) < P:
/// Σ_{j∉A} min{p_j, P - p(A)} x_j >= P - p(A).
struct CoverInequality {
  Subset removed = 0;  // A
  LinearConstraint constraint;
};

/// One inequality per A ⊆ N with p(A) < P, in increasing bitmask order.
/// Requires n <= 20.
std::vector<CoverInequality> wolsey_inequalities(const Instance& inst);

/// Σ x_j >= 1 + 1/(n-1), as g(x) >= 0.
LinearConstraint demand_constraint(int n);
/// Σ_{j ≠ missing} x_j >= 1.
LinearConstraint cover_constraint(int n, int missing);
/// Demand constraint followed by the n cover constraints.
std::vector<LinearConstraint> lp_plus_constraints(int n);

enum class LogBase { two, e_floor };
LogBase parse_logbase(const std::string& s);
std::string to_string(LogBase b);
/// ⌊log n⌋ in the given base, computed exactly.
int log_point(int n, LogBase base);

/// Largest n' <= n divisible by t.
int divisible_size(int n, int t);

enum class Relaxation { lp_plus, plain_lp };

struct GapSolution {
  int n = 0;
  int t = 0;
  Rational epsilon;
  int logpoint = 0;
  LogBase logbase = LogBase::two;
  Relaxation relaxation = Relaxation::lp_plus;
  /// Right-hand side of the demand constraint.
  Rational demand;
  LevelVector levels;

  /// Levels carrying mass, ascending (always includes 0).
  std::vector<int> support() const;
};

/// Largest ε with y_∅ >= 0; negative when no ε >= 0 works.
Rational epsilon_max(int n, int t, int logpoint, Relaxation relaxation = Relaxation::lp_plus,
                     const Rational& demand = 0);

/// Mass (1+ε)n/((n-1)β') at level β', εt/(jn) at level jn/t, and the rest
/// on the empty set; colliding levels add up. Throws std::invalid_argument
/// unless t | n, 1 <= β' <= n and 0 <= ε <= epsilon_max (the bound is part
/// of the message).
GapSolution gap_solution(int n, int t, const Rational& epsilon, LogBase logbase = LogBase::two,
                         std::optional<int> logpoint = std::nullopt);

/// Plain LP Σ x_j >= P with 0 < P < 1: mass (1+ε)/(P β') at level β', grid
/// levels as in gap_solution.
GapSolution theorem3_solution(int n, int t, const Rational& epsilon, const Rational& demand,
                              LogBase logbase = LogBase::two, std::optional<int> logpoint = std::nullopt);

/// Σ_I y_I |I|.
Rational objective_value(const GapSolution& sol);
/// (n/(n-1))(1+ε) + εt for LP⁺, (1+ε)/P + εt for the plain LP.
Rational closed_form_objective(const GapSolution& sol);
/// Optimal integral value: 2 for LP⁺, 1 for the plain LP.
Rational integral_optimum(const GapSolution& sol);

enum class Status { certified, refuted, inconclusive };
std::string to_string(Status s);

struct ConstraintVerdict {
  std::string name;
  Status status = Status::inconclusive;
  /// "direct", "reduction", "direct+reduction", "dominated", "exact", or
  /// "direct (permuted from cover[1])".
  std::string route;
  /// Size of the index set P_q(N) the condition lives on.
  std::size_t dim = 0;
  std::optional<std::size_t> kernel_dim;
  std::string note;
};

struct CertifyOptions {
  /// Largest matrix factored directly; bigger ones go through the reduction.
  std::size_t direct_cap = 400;
  /// Certify every cover constraint rather than one representative. Cover 1
  /// is factored; the others are matched to it entrywise under the
  /// exchange of two elements and inherit its verdict.
  bool all_covers = true;
  /// Cross-check the symmetric conditions (moment, demand, sufficient) by a
  /// direct factorization next to the block reduction.
  bool direct_symmetric = true;
  /// Stop after the first condition that is not certified.
  bool stop_early = false;
};

struct Certification {
  std::vector<ConstraintVerdict> verdicts;

  /// Every verdict certified.
  bool feasible() const;
  const ConstraintVerdict* find(const std::string& name) const;
};

/// Normalization, moment condition at P_{t+1}(N) and localizing conditions at
/// P_t(N) for every constraint of the relaxation.
Certification certify_solution(const GapSolution& sol, const CertifyOptions& opts = {});

struct Lemma2Report {
  std::vector<std::string> violations;
  /// Σ_{I≠∅} y_I(|I|-2) Z_I Z_Iᵀ - (n/(n-1)) Z_∅ Z_∅ᵀ ⪰ 0 over P_t(N).
  std::optional<ConstraintVerdict> sufficient;
  std::optional<ConstraintVerdict> demand;
  std::vector<ConstraintVerdict> covers;
  /// No instance where the sufficient condition holds but a constraint fails.
  bool implication_ok = true;

  bool preconditions_ok() const { return violations.empty(); }
};

/// Runs the three checks on an LP⁺ solution. Demand and cover verdicts are
/// reused from `existing` when it has them.
Lemma2Report lemma2_check(const GapSolution& sol, const CertifyOptions& opts = {},
                          const Certification* existing = nullptr);

/// A root of P: real when im == 0, otherwise the conjugate pair re ± im·i.
struct Root {
  Rational re;
  Rational im;
};

/// Number of roots counted with the conjugate partner.
int root_count(const std::vector<Root>& roots);

/// Rational r replacing the modulus of a ± bi such that
/// ((r-k)/r)^4 <= |ρ-k|^4/|ρ|^4 for k = 1..n. Equals the modulus when that is
/// rational.
Rational conjugate_modulus(const Rational& a, const Rational& b, int n);

/// Each normalization step on its own; all keep conjugate pairs intact
/// except collapse_conjugates.
std::vector<Root> collapse_conjugates(const std::vector<Root>& roots, int n);
std::vector<Root> flip_negative(const std::vector<Root>& roots);
/// Real roots below 1 (including 0) become 1, above n become n.
std::vector<Root> clamp_roots(const std::vector<Root>& roots, int n);
std::vector<Root> pad_roots(const std::vector<Root>& roots, int t, int n);

/// All steps in order; the result has t real roots in [1, n]. Throws
/// std::invalid_argument when more than t roots are supplied.
std::vector<Rational> normalize_roots(const std::vector<Root>& roots, int t, int n);

/// Σ_{k>=1} C(n,k) y_k (k-2) Π |r-k|²/|r|² over the roots (conjugates counted
/// twice). Throws std::invalid_argument on a zero root.
Rational normalized_lhs(const GapSolution& sol, const std::vector<Root>& roots);

/// Σ_{k>=1} C(n,k) y_k (k-2) Π (r_i-k)² - (1 + 1/(n-1)) Π r_i².
Rational condition14_check(const GapSolution& sol, const std::vector<Rational>& roots);

/// The asymptotic choice max{(1-2/β)^{-1}(1-β/α)^{-2t} - 1, (n/(n-1)) 2α²(2t)^{2t}/n²}
/// with α = log³n, β = ⌊log n⌋ in the given base. Report-only; NaN when β <= 2.
double asymptotic_epsilon(int n, int t, LogBase base);

struct SearchOptions {
  LogBase logbase = LogBase::two;
  std::optional<int> logpoint;
  int grid_points = 64;
  int bisection_steps = 16;
  CertifyOptions probe{200, false, false, true};
  CertifyOptions final{400, true, true, false};
};

struct ProbeResult {
  Rational epsilon;
  bool feasible = false;
};

struct SearchResult {
  int n = 0;
  int t = 0;
  int logpoint = 0;
  LogBase logbase = LogBase::two;
  Rational epsilon_max;
  std::vector<ProbeResult> profile;
  std::vector<ProbeResult> bisection;
  bool found = false;
  std::optional<GapSolution> solution;
  std::optional<Certification> certification;
  std::optional<Lemma2Report> lemma2;
  std::string message;
};

/// Probes ε_max 2^{-j}, j = 0..grid_points-1, each rounded down to a dyadic
/// with at most 16 significant bits, then bisects towards smaller ε below the
/// lowest point of the widest run of passing grid points. Every probe has
/// denominator <= 2^64. Never throws on an infeasible range; `found` is false
/// instead.
SearchResult epsilon_search(int n, int t, const SearchOptions& opts = {});

}  // namespace sossym::knapsack
