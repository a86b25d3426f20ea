#include "sossym/knapsack.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "sossym/parallel.hpp"

namespace sossym::knapsack {

Instance Instance::gap_instance(int n) {
  if (n < 2) throw std::invalid_argument("the gap instance needs n >= 2");
  Instance inst;
  inst.n = n;
  inst.costs.assign(static_cast<std::size_t>(n), Rational(1));
  inst.profits.assign(static_cast<std::size_t>(n), Rational(1));
  inst.demand = Rational(1) + ratio(1, n - 1);
  return inst;
}

std::vector<CoverInequality> wolsey_inequalities(const Instance& inst) {
  const int n = inst.n;
  if (n < 1 || n > 20) throw std::invalid_argument("cover inequality enumeration needs 1 <= n <= 20");
  if (static_cast<int>(inst.profits.size()) != n || static_cast<int>(inst.costs.size()) != n)
    throw std::invalid_argument("costs and profits must have n entries");
  std::vector<CoverInequality> out;
  for (Subset a = 0; a <= ground_set(n); ++a) {
    Rational pa = 0;
    for (int j = 1; j <= n; ++j)
      if (contains(a, j)) pa += inst.profits[static_cast<std::size_t>(j - 1)];
    const Rational residual = inst.demand - pa;
    if (sgn(residual) <= 0) continue;
    LinearConstraint g;
    g.coeffs.assign(static_cast<std::size_t>(n), Rational(0));
    for (int j = 1; j <= n; ++j)
      if (!contains(a, j)) g.coeffs[static_cast<std::size_t>(j - 1)] = std::min(inst.profits[static_cast<std::size_t>(j - 1)], residual);
    g.constant = -residual;
    out.push_back({a, std::move(g)});
  }
  return out;
}

LinearConstraint demand_constraint(int n) {
  return LinearConstraint{RationalVector(static_cast<std::size_t>(n), Rational(1)), -(Rational(1) + ratio(1, n - 1))};
}

LinearConstraint cover_constraint(int n, int missing) {
  if (missing < 1 || missing > n) throw std::invalid_argument("cover constraint index out of range");
  LinearConstraint g{RationalVector(static_cast<std::size_t>(n), Rational(1)), Rational(-1)};
  g.coeffs[static_cast<std::size_t>(missing - 1)] = 0;
  return g;
}

std::vector<LinearConstraint> lp_plus_constraints(int n) {
  std::vector<LinearConstraint> out{demand_constraint(n)};
  for (int i = 1; i <= n; ++i) out.push_back(cover_constraint(n, i));
  return out;
}

LogBase parse_logbase(const std::string& s) {
  if (s == "2") return LogBase::two;
  if (s == "e-floor") return LogBase::e_floor;
  throw std::invalid_argument("logbase must be 2 or e-floor");
}

std::string to_string(LogBase b) { return b == LogBase::two ? "2" : "e-floor"; }

int log_point(int n, LogBase base) {
  if (n < 1) throw std::invalid_argument("log point needs n >= 1");
  if (base == LogBase::two) {
    int k = 0;
    while ((2L << k) <= n) ++k;
    return k;
  }
  // e^k is irrational for k >= 1, so the comparison with an integer never ties.
  int k = static_cast<int>(std::floor(std::log(static_cast<double>(n))));
  while (std::exp(static_cast<double>(k + 1)) <= n) ++k;
  while (k > 0 && std::exp(static_cast<double>(k)) > n) --k;
  return k;
}

int divisible_size(int n, int t) {
  if (t < 1) throw std::invalid_argument("t must be positive");
  return (n / t) * t;
}

std::vector<int> GapSolution::support() const {
  std::vector<int> s;
  for (int k = 0; k <= n; ++k)
    if (k == 0 || sgn(levels[k]) != 0) s.push_back(k);
  return s;
}

namespace {

// Mass Σ_{|I|=β'} y_I at ε = 0 per unit of (1+ε).
Rational small_mass(int n, int logpoint, Relaxation relaxation, const Rational& demand) {
  if (relaxation == Relaxation::lp_plus) return ratio(n, (n - 1) * logpoint);
  return 1 / (demand * logpoint);
}

// Σ_j t/(jn), the grid mass per unit of ε.
Rational grid_mass(int n, int t) {
  Rational s = 0;
  for (int j = 1; j <= t; ++j) s += ratio(t, j * n);
  return s;
}

GapSolution build(int n, int t, const Rational& epsilon, LogBase logbase, std::optional<int> logpoint,
                  Relaxation relaxation, const Rational& demand) {
  if (t < 1 || n < 2) throw std::invalid_argument("need n >= 2 and t >= 1");
  if (n % t != 0) throw std::invalid_argument("t must divide n (use " + std::to_string(divisible_size(n, t)) + ")");
  const int beta = logpoint.value_or(log_point(n, logbase));
  if (beta < 1 || beta > n) throw std::invalid_argument("log point must lie in [1, n]");
  if (sgn(epsilon) < 0) throw std::invalid_argument("epsilon must be non-negative");

  const Rational emax = epsilon_max(n, t, beta, relaxation, demand);
  if (epsilon > emax)
    throw std::invalid_argument("epsilon " + sossym::to_string(epsilon) + " makes the empty-set level negative; bound is " +
                                sossym::to_string(emax));

  GapSolution sol;
  sol.n = n;
  sol.t = t;
  sol.epsilon = epsilon;
  sol.logpoint = beta;
  sol.logbase = logbase;
  sol.relaxation = relaxation;
  sol.demand = relaxation == Relaxation::lp_plus ? Rational(1) + ratio(1, n - 1) : demand;
  sol.levels = LevelVector::zeros(n);

  // Per-level masses Σ_{|I|=k} y_I, divided by C(n,k) at the end.
  RationalVector mass(static_cast<std::size_t>(n) + 1, Rational(0));
  mass[static_cast<std::size_t>(beta)] += (1 + epsilon) * small_mass(n, beta, relaxation, demand);
  for (int j = 1; j <= t; ++j) mass[static_cast<std::size_t>(j * n / t)] += epsilon * t / Rational(j * n);
  Rational rest = 0;
  for (int k = 1; k <= n; ++k) rest += mass[static_cast<std::size_t>(k)];
  mass[0] = 1 - rest;
  for (int k = 0; k <= n; ++k) sol.levels[k] = mass[static_cast<std::size_t>(k)] / binom(n, k);

  if (sol.levels.total_mass() != 1) throw std::logic_error("gap solution is not normalized");
  if (objective_value(sol) != closed_form_objective(sol)) throw std::logic_error("gap solution objective mismatch");
  return sol;
}

}  // namespace

Rational epsilon_max(int n, int t, int logpoint, Relaxation relaxation, const Rational& demand) {
  const Rational c = small_mass(n, logpoint, relaxation, demand);
  return (1 - c) / (c + grid_mass(n, t));
}

GapSolution gap_solution(int n, int t, const Rational& epsilon, LogBase logbase, std::optional<int> logpoint) {
  return build(n, t, epsilon, logbase, logpoint, Relaxation::lp_plus, 0);
}

GapSolution theorem3_solution(int n, int t, const Rational& epsilon, const Rational& demand, LogBase logbase,
                              std::optional<int> logpoint) {
  if (sgn(demand) <= 0 || demand >= 1) throw std::invalid_argument("demand P must satisfy 0 < P < 1");
  return build(n, t, epsilon, logbase, logpoint, Relaxation::plain_lp, demand);
}

Rational objective_value(const GapSolution& sol) {
  Rational s = 0;
  for (int k = 1; k <= sol.n; ++k) s += binom(sol.n, k) * k * sol.levels[k];
  return s;
}

Rational closed_form_objective(const GapSolution& sol) {
  const Rational head = sol.relaxation == Relaxation::lp_plus ? ratio(sol.n, sol.n - 1) : 1 / sol.demand;
  return head * (1 + sol.epsilon) + sol.epsilon * sol.t;
}

Rational integral_optimum(const GapSolution& sol) { return sol.relaxation == Relaxation::lp_plus ? 2 : 1; }

std::string to_string(Status s) {
  switch (s) {
    case Status::certified: return "certified";
    case Status::refuted: return "refuted";
    case Status::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool Certification::feasible() const {
  return !verdicts.empty() &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const ConstraintVerdict& v) { return v.status == Status::certified; });
}

const ConstraintVerdict* Certification::find(const std::string& name) const {
  for (const auto& v : verdicts)
    if (v.name == name) return &v;
  return nullptr;
}

namespace {

Status status_of(bool psd) { return psd ? Status::certified : Status::refuted; }

// Σ_k z_k Σ_{|I|=k} Z_I Z_Iᵀ over P_q(N): block reduction always, plus the
// direct factorization when the matrix is small enough.
ConstraintVerdict certify_levels(const std::string& name, const LevelVector& z, int q, std::size_t cap,
                                 bool direct_allowed) {
  ConstraintVerdict v;
  v.name = name;
  v.dim = level_set_size(z.n, q);
  const bool reduced = check_reduction(z, q).all_psd();
  v.route = "reduction";
  v.status = status_of(reduced);
  if (direct_allowed && v.dim <= cap) {
    const PsdVerdict d = certify_psd(matrix_from_levels(z, q).matrix);
    if (is_psd(d) != reduced) throw std::logic_error("reduction and direct certification disagree on " + name);
    if (is_psd(d)) v.kernel_dim = std::get<PsdCertificate>(d).kernel_dimension();
    v.route = "direct+reduction";
  }
  return v;
}

MomentMatrix cover_matrix(const GapSolution& sol, int missing) {
  return matrix_from_marked(shift_marked(cover_constraint(sol.n, missing), sol.levels, singleton(missing)), sol.t);
}

ConstraintVerdict certify_cover(const GapSolution& sol, int missing, const CertifyOptions& opts) {
  ConstraintVerdict v;
  v.name = "cover[" + std::to_string(missing) + "]";
  v.dim = level_set_size(sol.n, sol.t);
  if (v.dim <= opts.direct_cap) {
    const PsdVerdict d = certify_psd(cover_matrix(sol, missing).matrix);
    v.route = "direct";
    v.status = status_of(is_psd(d));
    if (is_psd(d)) v.kernel_dim = std::get<PsdCertificate>(d).kernel_dimension();
    return v;
  }
  // The cover matrix is Σ_{I≠∅} y_I(|I|-2) Z_I Z_Iᵀ - y_∅ Z_∅ Z_∅ᵀ plus
  // Σ_{missing∉I, I≠∅} y_I Z_I Z_Iᵀ; the first part is symmetric and the second
  // is a non-negative sum of rank-one terms when every level is >= 0.
  v.route = "dominated";
  LevelVector w = LevelVector::zeros(sol.n);
  w[0] = -sol.levels[0];
  for (int k = 1; k <= sol.n; ++k) w[k] = sol.levels[k] * (k - 2);
  const bool nonneg = std::all_of(sol.levels.values.begin(), sol.levels.values.end(), [](const Rational& x) { return sgn(x) >= 0; });
  if (nonneg && check_reduction(w, sol.t).all_psd()) {
    v.status = Status::certified;
  } else {
    v.status = Status::inconclusive;
    v.note = "dominating symmetric matrix is not PSD; matrix too large to factor directly";
  }
  return v;
}

// Cover `missing` is cover 1 with elements 1 and `missing` exchanged. Checks
// that identity entrywise and carries the verdict of cover 1 over.
ConstraintVerdict transfer_cover(const GapSolution& sol, int missing, const ConstraintVerdict& first,
                                 const MomentMatrix& first_matrix) {
  ConstraintVerdict v = first;
  v.name = "cover[" + std::to_string(missing) + "]";
  if (first.route != "direct") return v;  // the dominated route never depends on the missing element
  const MomentMatrix mi = cover_matrix(sol, missing);
  const SubsetIndex index(sol.n, sol.t);
  const Subset a = singleton(1), b = singleton(missing);
  std::vector<std::size_t> image(index.size());
  for (std::size_t r = 0; r < index.size(); ++r) {
    Subset s = index[r];
    const bool has_a = s & a, has_b = s & b;
    s &= ~(a | b);
    if (has_a) s |= b;
    if (has_b) s |= a;
    image[r] = index.rank(s);
  }
  for (std::size_t r = 0; r < index.size(); ++r)
    for (std::size_t c = 0; c <= r; ++c)
      if (mi.matrix(image[r], image[c]) != first_matrix.matrix(r, c))
        throw std::logic_error("cover matrices are not permutation-similar");
  v.route = "direct (permuted from cover[1])";
  return v;
}

std::vector<ConstraintVerdict> certify_covers(const GapSolution& sol, const CertifyOptions& opts) {
  const int count = opts.all_covers ? sol.n : 1;
  std::vector<ConstraintVerdict> covers(static_cast<std::size_t>(count));
  covers[0] = certify_cover(sol, 1, opts);
  if (count > 1) {
    const MomentMatrix first = covers[0].route == "direct" ? cover_matrix(sol, 1) : MomentMatrix{};
    parallel_for(covers.size() - 1, [&](std::size_t i) {
      covers[i + 1] = transfer_cover(sol, static_cast<int>(i) + 2, covers[0], first);
    });
  }
  return covers;
}

// w_0 = -n/(n-1), w_k = y_k (k-2): Σ_k w_k Σ_{|I|=k} Z_I Z_Iᵀ ⪰ 0 is the
// sufficient condition for every constraint of LP⁺.
LevelVector sufficient_levels(const GapSolution& sol) {
  LevelVector w = LevelVector::zeros(sol.n);
  w[0] = -ratio(sol.n, sol.n - 1);
  for (int k = 1; k <= sol.n; ++k) w[k] = sol.levels[k] * (k - 2);
  return w;
}

LinearConstraint demand_of(const GapSolution& sol) {
  return LinearConstraint{RationalVector(static_cast<std::size_t>(sol.n), Rational(1)), -sol.demand};
}

}  // namespace

Certification certify_solution(const GapSolution& sol, const CertifyOptions& opts) {
  Certification c;
  ConstraintVerdict norm;
  norm.name = "normalization";
  norm.route = "exact";
  norm.status = status_of(sol.levels.total_mass() == 1);
  c.verdicts.push_back(norm);

  const int q = std::min(sol.t + 1, sol.n);
  const auto stop = [&] { return opts.stop_early && c.verdicts.back().status != Status::certified; };
  if (stop()) return c;
  c.verdicts.push_back(certify_levels("moment", sol.levels, q, opts.direct_cap, opts.direct_symmetric));
  if (stop()) return c;
  c.verdicts.push_back(certify_levels("demand", shift_levels(demand_of(sol), sol.levels), sol.t, opts.direct_cap, opts.direct_symmetric));
  if (stop()) return c;

  if (sol.relaxation == Relaxation::lp_plus)
    for (auto& v : certify_covers(sol, opts)) c.verdicts.push_back(std::move(v));
  return c;
}

Lemma2Report lemma2_check(const GapSolution& sol, const CertifyOptions& opts, const Certification* existing) {
  Lemma2Report rep;
  if (sol.relaxation != Relaxation::lp_plus) rep.violations.push_back("solution is not for the relaxation with cover constraints");
  if (sol.n >= 2 && sgn(sol.levels[1]) != 0) rep.violations.push_back("level 1 carries mass (y_1 = " + sossym::to_string(sol.levels[1]) + ")");
  if (sol.levels[0] > 1) rep.violations.push_back("empty-set level exceeds 1");
  if (!rep.preconditions_ok()) return rep;

  rep.sufficient = certify_levels("sufficient", sufficient_levels(sol), sol.t, opts.direct_cap, opts.direct_symmetric);

  const ConstraintVerdict* demand = existing ? existing->find("demand") : nullptr;
  rep.demand = demand ? *demand : certify_levels("demand", shift_levels(demand_of(sol), sol.levels), sol.t, opts.direct_cap, opts.direct_symmetric);

  const int count = opts.all_covers ? sol.n : 1;
  for (int i = 1; i <= count && existing; ++i) {
    const ConstraintVerdict* prior = existing->find("cover[" + std::to_string(i) + "]");
    if (!prior) {
      rep.covers.clear();
      break;
    }
    rep.covers.push_back(*prior);
  }
  if (rep.covers.empty()) rep.covers = certify_covers(sol, opts);

  if (rep.sufficient->status == Status::certified) {
    bool all = rep.demand->status == Status::certified;
    for (const auto& c : rep.covers) all = all && c.status == Status::certified;
    rep.implication_ok = all;
  }
  return rep;
}

int root_count(const std::vector<Root>& roots) {
  int c = 0;
  for (const auto& r : roots) c += sgn(r.im) == 0 ? 1 : 2;
  return c;
}

namespace {

bool is_square(const Integer& x) { return sgn(x) >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0; }

// ((r-k)/r)² <= ((a-k)² + b²)/(a² + b²) for k = 1..n.
bool modulus_ok(const Rational& r, const Rational& a, const Rational& b, int n) {
  if (sgn(r) <= 0) return false;
  const Rational m2 = a * a + b * b;
  for (int k = 1; k <= n; ++k) {
    const Rational lhs = (r - k) * (r - k) / (r * r);
    const Rational rhs = ((a - k) * (a - k) + b * b) / m2;
    if (lhs > rhs) return false;
  }
  return true;
}

}  // namespace

Rational conjugate_modulus(const Rational& a, const Rational& b, int n) {
  if (sgn(b) == 0) throw std::invalid_argument("conjugate_modulus needs a non-real root");
  const Rational m2 = a * a + b * b;
  if (is_square(m2.get_num()) && is_square(m2.get_den())) {
    Integer num, den;
    mpz_sqrt(num.get_mpz_t(), m2.get_num().get_mpz_t());
    mpz_sqrt(den.get_mpz_t(), m2.get_den().get_mpz_t());
    return ratio(num, den);
  }
  // Inside (0, n] the inequality has slack 2k(m - a)/m² > 0 at the true
  // modulus m, so a fine enough dyadic approximation satisfies it.
  for (unsigned bits = 16; bits <= 4096; bits *= 2) {
    mpf_class m(0, bits + 64);
    mpf_class m2f(m2, bits + 64);
    mpf_sqrt(m.get_mpf_t(), m2f.get_mpf_t());
    mpf_class scaled(m, bits + 64);
    mpf_mul_2exp(scaled.get_mpf_t(), m.get_mpf_t(), bits);
    mpz_class base;
    mpz_set_f(base.get_mpz_t(), scaled.get_mpf_t());
    for (long delta : {0L, 1L, -1L, 2L, -2L}) {
      const Rational r = Rational(base + delta) / pow2(static_cast<long>(bits));
      if (modulus_ok(r, a, b, n)) return r;
    }
  }
  throw std::logic_error("no rational modulus approximation satisfies the root inequality");
}

std::vector<Root> collapse_conjugates(const std::vector<Root>& roots, int n) {
  std::vector<Root> out;
  for (const auto& r : roots) {
    if (sgn(r.im) == 0) {
      out.push_back(r);
      continue;
    }
    const Rational m = conjugate_modulus(r.re, r.im, n);
    out.push_back({m, 0});
    out.push_back({m, 0});
  }
  return out;
}

std::vector<Root> flip_negative(const std::vector<Root>& roots) {
  std::vector<Root> out = roots;
  for (auto& r : out)
    if (sgn(r.im) == 0 && sgn(r.re) < 0) r.re = -r.re;
  return out;
}

std::vector<Root> clamp_roots(const std::vector<Root>& roots, int n) {
  std::vector<Root> out = roots;
  for (auto& r : out) {
    if (sgn(r.im) != 0) continue;
    if (r.re < 1) r.re = 1;
    if (r.re > n) r.re = n;
  }
  return out;
}

std::vector<Root> pad_roots(const std::vector<Root>& roots, int t, int n) {
  std::vector<Root> out = roots;
  for (int c = root_count(out); c < t; ++c) out.push_back({Rational(n), 0});
  return out;
}

std::vector<Rational> normalize_roots(const std::vector<Root>& roots, int t, int n) {
  if (root_count(roots) > t) throw std::invalid_argument("more roots than the degree bound t");
  const std::vector<Root> steps = pad_roots(clamp_roots(flip_negative(collapse_conjugates(roots, n)), n), t, n);
  std::vector<Rational> out;
  out.reserve(steps.size());
  for (const auto& r : steps) out.push_back(r.re);
  return out;
}

Rational normalized_lhs(const GapSolution& sol, const std::vector<Root>& roots) {
  for (const auto& r : roots)
    if (sgn(r.re) == 0 && sgn(r.im) == 0) throw std::invalid_argument("normalized form is undefined for a zero root");
  Rational s = 0;
  for (int k = 1; k <= sol.n; ++k) {
    if (sgn(sol.levels[k]) == 0) continue;
    Rational term = binom(sol.n, k) * sol.levels[k] * (k - 2);
    for (const auto& r : roots) {
      if (sgn(r.im) == 0) {
        term *= (r.re - k) * (r.re - k) / (r.re * r.re);
      } else {
        const Rational ratio = ((r.re - k) * (r.re - k) + r.im * r.im) / (r.re * r.re + r.im * r.im);
        term *= ratio * ratio;
      }
    }
    s += term;
  }
  return s;
}

Rational condition14_check(const GapSolution& sol, const std::vector<Rational>& roots) {
  Rational lhs = 0;
  for (int k = 1; k <= sol.n; ++k) {
    if (sgn(sol.levels[k]) == 0) continue;
    Rational term = binom(sol.n, k) * sol.levels[k] * (k - 2);
    for (const auto& r : roots) term *= (r - k) * (r - k);
    lhs += term;
  }
  Rational rhs = 1 + ratio(1, sol.n - 1);
  for (const auto& r : roots) rhs *= r * r;
  return lhs - rhs;
}

double asymptotic_epsilon(int n, int t, LogBase base) {
  const double l = base == LogBase::two ? std::log2(static_cast<double>(n)) : std::log(static_cast<double>(n));
  const double alpha = l * l * l;
  const double beta = log_point(n, base);
  if (beta <= 2 || alpha <= beta) return std::numeric_limits<double>::quiet_NaN();
  const double first = 1.0 / (1.0 - 2.0 / beta) * std::pow(1.0 - beta / alpha, -2.0 * t) - 1.0;
  const double dn = n;
  const double second = dn / (dn - 1) * 2 * alpha * alpha / (dn * dn) * std::pow(2.0 * t, 2.0 * t);
  return std::max(first, second);
}

namespace {

bool probe(int n, int t, const Rational& eps, const SearchOptions& opts) {
  const GapSolution sol = gap_solution(n, t, eps, opts.logbase, opts.logpoint);
  const Certification c = certify_solution(sol, opts.probe);
  // The sufficient condition is only consulted for the implication, which a
  // fully certified probe satisfies trivially.
  if (!c.feasible() && check_reduction(sufficient_levels(sol), t).all_psd()) {
    CertifyOptions full = opts.probe;
    full.stop_early = false;
    if (!lemma2_check(sol, full).implication_ok)
      throw std::logic_error("sufficient condition holds but a constraint fails");
  }
  return c.feasible();
}

constexpr long kMaxDenominatorBits = 64;
constexpr long kSignificantBits = 16;

// Largest dyadic m/2^s <= x with at most kSignificantBits bits in m and
// s <= kMaxDenominatorBits. Short numerators keep the factorizations cheap.
Rational dyadic_floor(const Rational& x) {
  long s = kSignificantBits - 1;
  {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    // x >= 1: shrink s by the bit length of the integer part.
    if (sgn(q) > 0) s -= static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
    else {
      Rational y = x;
      while (y < Rational(1, 2) && s < kMaxDenominatorBits) {
        y *= 2;
        ++s;
      }
    }
  }
  s = std::clamp(s, 0L, kMaxDenominatorBits);
  const Rational scaled = x / pow2(-s);
  Integer m;
  mpz_fdiv_q(m.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
  return Rational(m) * pow2(-s);
}

bool denominator_ok(const Rational& x) { return x.get_den() <= Integer(1) << kMaxDenominatorBits; }

}  // namespace

SearchResult epsilon_search(int n, int t, const SearchOptions& opts) {
  SearchResult res;
  res.n = n;
  res.t = t;
  res.logbase = opts.logbase;
  res.logpoint = opts.logpoint.value_or(log_point(n, opts.logbase));
  res.epsilon_max = epsilon_max(n, t, res.logpoint);
  if (sgn(res.epsilon_max) <= 0) {
    res.message = "no epsilon > 0 keeps the empty-set level non-negative";
    return res;
  }

  std::vector<Rational> grid;
  for (int j = 0; j < opts.grid_points; ++j) {
    const Rational g = dyadic_floor(res.epsilon_max * pow2(-j));
    if (sgn(g) <= 0) break;
    if (grid.empty() || g != grid.back()) grid.push_back(g);
  }
  std::reverse(grid.begin(), grid.end());  // ascending

  std::vector<bool> pass(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    pass[i] = probe(n, t, grid[i], opts);
    res.profile.push_back({grid[i], pass[i]});
  }

  // Widest run of consecutive passing grid points, measured in ε.
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = 0; i < grid.size();) {
    if (!pass[i]) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < grid.size() && pass[j + 1]) ++j;
    if (!best || grid[j] - grid[i] > grid[best->second] - grid[best->first]) best = {i, j};
    i = j + 1;
  }
  if (!best) {
    res.message = "no grid point in (0, epsilon_max] is certified feasible";
    return res;
  }

  Rational hi = grid[best->first];
  Rational lo = best->first == 0 ? Rational(0) : grid[best->first - 1];
  for (int step = 0; step < opts.bisection_steps; ++step) {
    const Rational mid = (lo + hi) / 2;
    if (!denominator_ok(mid)) break;
    const bool ok = probe(n, t, mid, opts);
    res.bisection.push_back({mid, ok});
    (ok ? hi : lo) = mid;
  }

  res.solution = gap_solution(n, t, hi, opts.logbase, opts.logpoint);
  res.certification = certify_solution(*res.solution, opts.final);
  res.lemma2 = lemma2_check(*res.solution, opts.final, &*res.certification);
  res.found = res.certification->feasible();
  res.message = res.found ? "feasible epsilon certified" : "final certification failed at the bisection endpoint";
  return res;
}

}  // namespace sossym::knapsack
