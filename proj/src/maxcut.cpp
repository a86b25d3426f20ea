#include "sossym/maxcut.hpp"

#include <chrono>
#include <stdexcept>

namespace sossym::maxcut {

RationalVector Instance::objective_levels() const {
  RationalVector f(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) f[static_cast<std::size_t>(k)] = k * (n - k);
  return f;
}

Rational Instance::integral_optimum() const { return Rational((n / 2) * ((n + 1) / 2)); }

GLSolution gl_solution(int n, const Rational& omega) {
  if (n < 2) throw std::invalid_argument("Max-Cut needs n >= 2");
  if (omega.get_den() == 1)
    throw std::invalid_argument("omega = " + sossym::to_string(omega) + " is integral: the solution divides by (omega - k)");
  if (sgn(omega) < 0 || 2 * omega > n) throw std::invalid_argument("omega must satisfy 0 <= omega <= n/2");

  const Rational scale = (n + 1) * generalized_binom(omega, n + 1);
  LevelVector y = LevelVector::zeros(n);
  for (int k = 0; k <= n; ++k) {
    Rational v = scale / (omega - k);
    if ((n - k) % 2 != 0) v = -v;
    y[k] = v;
  }
  if (y.total_mass() != 1) throw std::logic_error("Max-Cut solution is not normalized");
  return GLSolution{Instance{n, omega}, std::move(y)};
}

Rational pseudo_expectation(const GLSolution& sol, const PolynomialQ& p) {
  const int n = sol.instance.n;
  if (p.degree() > n) throw std::invalid_argument("polynomial degree exceeds n");
  Rational s = 0;
  for (int k = 0; k <= n; ++k) s += binom(n, k) * sol.levels[k] * p(k);
  return s;
}

bool lemma1_check(const GLSolution& sol, const PolynomialQ& p) { return pseudo_expectation(sol, p) == p(sol.instance.omega); }

SetFunction standard_form(int n, const Rational& omega, int t) {
  SetFunction y(n);
  const int limit = std::min(2 * t, n);
  for (int k = 0; k <= limit; ++k) {
    const Rational v = generalized_binom(omega, k) / binom(n, k);
    if (sgn(v) == 0) continue;
    for_each_k_subset(n, k, [&](Subset s) { y.entries.emplace(s, v); });
  }
  return y;
}

Mode parse_mode(const std::string& s) {
  if (s == "reduce") return Mode::reduce;
  if (s == "direct") return Mode::direct;
  if (s == "both") return Mode::both;
  throw std::invalid_argument("mode must be reduce, direct or both");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::reduce: return "reduce";
    case Mode::direct: return "direct";
    case Mode::both: return "both";
  }
  return "both";
}

FeasibilityReport certify_feasibility(int n, const Rational& omega, int t, Mode mode) {
  const auto start = std::chrono::steady_clock::now();
  if (t < 1 || t > n) throw std::invalid_argument("round t must satisfy 1 <= t <= n");
  const GLSolution sol = gl_solution(n, omega);

  FeasibilityReport rep;
  rep.n = n;
  rep.omega = omega;
  rep.t = t;
  rep.mode = mode;

  if (mode != Mode::direct) {
    rep.reduction = check_reduction(sol.levels, t);
    rep.reduce_psd = rep.reduction->all_psd();
  }
  if (mode != Mode::reduce) {
    const MomentMatrix m = matrix_from_levels(sol.levels, t);
    rep.matrix_dim = m.matrix.rows();
    rep.direct = certify_psd(m.matrix);
    rep.direct_psd = is_psd(*rep.direct);
    if (*rep.direct_psd) rep.kernel_dim = std::get<PsdCertificate>(*rep.direct).kernel_dimension();
  }
  if (rep.reduce_psd && rep.direct_psd && *rep.reduce_psd != *rep.direct_psd)
    throw std::logic_error("reduction and direct certification disagree for n=" + std::to_string(n) + " t=" + std::to_string(t));

  rep.feasible = rep.reduce_psd.value_or(true) && rep.direct_psd.value_or(true);
  rep.objective = objective(sol.instance.objective_levels(), sol.levels);
  rep.integral_opt = sol.instance.integral_optimum();
  rep.gap = rep.objective / rep.integral_opt;
  rep.runtime_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace sossym::maxcut
