#include "sossym/moment.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sossym {

LevelVector::LevelVector(int n_, RationalVector v) : n(n_), values(std::move(v)) {
  if (n < 0 || values.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("LevelVector needs exactly n+1 values");
}

LevelVector LevelVector::zeros(int n) { return LevelVector(n, RationalVector(static_cast<std::size_t>(n) + 1)); }

Rational LevelVector::total_mass() const {
  Rational s = 0;
  for (int k = 0; k <= n; ++k)
    if (sgn(values[k]) != 0) s += binom(n, k) * values[k];
  return s;
}

Rational SetFunction::get(Subset s) const {
  const auto it = entries.find(s);
  return it == entries.end() ? Rational(0) : it->second;
}

void SetFunction::set(Subset s, const Rational& v) {
  if (sgn(v) == 0)
    entries.erase(s);
  else
    entries[s] = v;
}

void SetFunction::add(Subset s, const Rational& v) {
  if (sgn(v) == 0) return;
  auto [it, inserted] = entries.try_emplace(s, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) entries.erase(it);
  }
}

Rational SetFunction::total() const {
  Rational s = 0;
  for (const auto& [k, v] : entries) s += v;
  return s;
}

bool operator==(const SetFunction& a, const SetFunction& b) {
  if (a.n != b.n) return false;
  for (const auto& [k, v] : a.entries)
    if (sgn(v) != 0 && b.get(k) != v) return false;
  for (const auto& [k, v] : b.entries)
    if (sgn(v) != 0 && a.get(k) != v) return false;
  return true;
}

Rational MarkedLevelFunction::at(Subset s) const {
  return values[static_cast<std::size_t>(cardinality(s))][static_cast<std::size_t>(cardinality(s & marked))];
}

SetFunction MarkedLevelFunction::expand() const {
  SetFunction out(n);
  const Subset all = ground_set(n);
  Subset s = all;
  while (true) {
    out.set(s, at(s));
    if (s == 0) break;
    s = (s - 1) & all;
  }
  return out;
}

Rational LinearConstraint::evaluate(Subset s) const {
  Rational v = constant;
  for (int i = 1; i <= n(); ++i)
    if (contains(s, i)) v += coeffs[static_cast<std::size_t>(i - 1)];
  return v;
}

bool LinearConstraint::is_symmetric() const {
  for (const Rational& c : coeffs)
    if (c != coeffs.front()) return false;
  return true;
}

std::vector<std::uint8_t> zeta_vector(Subset subset, int n, int q) {
  if (!is_subset(subset, ground_set(n))) throw std::invalid_argument("zeta_vector: subset outside {1..n}");
  const SubsetIndex index(n, q);
  std::vector<std::uint8_t> z(index.size(), 0);
  for (std::size_t r = 0; r < index.size(); ++r) z[r] = is_subset(index[r], subset) ? 1 : 0;
  return z;
}

namespace {

void check_level(int n, int q) {
  if (q < 0 || q > n) throw std::invalid_argument("moment matrix level q must satisfy 0 <= q <= n");
}

// Fills M[A,B] = value(|A∪B| data) for every pair, using a per-union callback.
template <typename UnionValue>
MomentMatrix fill_by_union(int n, int q, UnionValue&& value_of) {
  const SubsetIndex index(n, q);
  MomentMatrix m{n, q, RationalMatrix(index.size(), index.size())};
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Rational& v = value_of(index[i] | index[j]);
      m.matrix(i, j) = v;
      m.matrix(j, i) = v;
    }
  }
  return m;
}

}  // namespace

MomentMatrix matrix_from_levels(const LevelVector& z, int q) {
  check_level(z.n, q);
  const int n = z.n;
  const int max_union = std::min(2 * q, n);
  RationalVector by_union(static_cast<std::size_t>(max_union) + 1);
  for (int u = 0; u <= max_union; ++u) {
    Rational s = 0;
    for (int k = u; k <= n; ++k)
      if (sgn(z[k]) != 0) s += z[k] * binom(n - u, k - u);
    by_union[static_cast<std::size_t>(u)] = s;
  }
  return fill_by_union(n, q, [&](Subset u) -> const Rational& { return by_union[static_cast<std::size_t>(cardinality(u))]; });
}

MomentMatrix matrix_from_setfn(const SetFunction& w, int q) {
  check_level(w.n, q);
  const SetFunction standard = basis_to_standard(w, 2 * q);
  const Rational zero = 0;
  return fill_by_union(w.n, q, [&](Subset u) -> const Rational& {
    const auto it = standard.entries.find(u);
    return it == standard.entries.end() ? zero : it->second;
  });
}

MomentMatrix matrix_from_marked(const MarkedLevelFunction& f, int q) {
  const int n = f.n;
  check_level(n, q);
  const int fm = cardinality(f.marked);
  const int fo = n - fm;
  const int max_union = std::min(2 * q, n);

  // table[um][uo] = Σ_{H ⊇ U} f(H) for |U ∩ marked| = um, |U ∖ marked| = uo.
  std::vector<RationalVector> table(static_cast<std::size_t>(fm) + 1, RationalVector(static_cast<std::size_t>(fo) + 1));
  for (int um = 0; um <= std::min(fm, max_union); ++um) {
    for (int uo = 0; uo <= std::min(fo, max_union - um); ++uo) {
      Rational s = 0;
      for (int k = um + uo; k <= n; ++k) {
        for (int m = um; m <= fm && m <= k; ++m) {
          const Rational& v = f.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
          if (sgn(v) == 0 || k - m > fo) continue;
          s += v * binom(fm - um, m - um) * binom(fo - uo, k - m - uo);
        }
      }
      table[static_cast<std::size_t>(um)][static_cast<std::size_t>(uo)] = s;
    }
  }
  return fill_by_union(n, q, [&](Subset u) -> const Rational& {
    const int um = cardinality(u & f.marked);
    return table[static_cast<std::size_t>(um)][static_cast<std::size_t>(cardinality(u) - um)];
  });
}

SetFunction basis_to_standard(const SetFunction& wN, int max_card) {
  if (max_card < 0) max_card = wN.n;
  SetFunction w(wN.n);
  for (const auto& [h, value] : wN.entries) {
    if (sgn(value) == 0) continue;
    for_each_subset_of(h, max_card, [&](Subset s) { w.add(s, value); });
  }
  return w;
}

SetFunction standard_to_basis(const SetFunction& w, int t) {
  if (t < 0) throw std::invalid_argument("standard_to_basis: t must be non-negative");
  const int limit = 2 * t;
  SetFunction wN(w.n);
  // Each w_J contributes (-1)^{|J∖I|} w_J to every I ⊆ J.
  for (const auto& [j, value] : w.entries) {
    if (sgn(value) == 0 || cardinality(j) > limit) continue;
    const int cj = cardinality(j);
    for_each_subset_of(j, limit, [&](Subset i) {
      if ((cj - cardinality(i)) % 2 == 0)
        wN.add(i, value);
      else
        wN.add(i, -value);
    });
  }
  return wN;
}

SetFunction lift_levels(const LevelVector& z) {
  SetFunction out(z.n);
  for (int k = 0; k <= z.n; ++k) {
    if (sgn(z[k]) == 0) continue;
    for_each_k_subset(z.n, k, [&](Subset s) { out.entries.emplace(s, z[k]); });
  }
  return out;
}

LevelVector shift_levels(const LinearConstraint& g, const LevelVector& y) {
  if (g.n() != y.n) throw std::invalid_argument("shift_levels: constraint and solution sizes differ");
  if (!g.is_symmetric()) throw std::invalid_argument("shift_levels: constraint is not symmetric (coefficients differ)");
  const Rational g1 = g.coeffs.empty() ? Rational(0) : g.coeffs.front();
  LevelVector z = LevelVector::zeros(y.n);
  for (int k = 0; k <= y.n; ++k) z[k] = (g1 * k + g.constant) * y[k];
  return z;
}

SetFunction shift_setfn(const LinearConstraint& g, const SetFunction& yN) {
  if (g.n() != yN.n) throw std::invalid_argument("shift_setfn: constraint and solution sizes differ");
  SetFunction z(yN.n);
  for (const auto& [s, value] : yN.entries) z.set(s, g.evaluate(s) * value);
  return z;
}

MarkedLevelFunction shift_marked(const LinearConstraint& g, const LevelVector& y, Subset marked) {
  const int n = y.n;
  if (g.n() != n) throw std::invalid_argument("shift_marked: constraint and solution sizes differ");
  if (!is_subset(marked, ground_set(n))) throw std::invalid_argument("shift_marked: marked set outside {1..n}");

  Rational in_coeff = 0, out_coeff = 0;
  bool have_in = false, have_out = false;
  for (int i = 1; i <= n; ++i) {
    const Rational& c = g.coeffs[static_cast<std::size_t>(i - 1)];
    Rational& slot = contains(marked, i) ? in_coeff : out_coeff;
    bool& have = contains(marked, i) ? have_in : have_out;
    if (!have) {
      slot = c;
      have = true;
    } else if (slot != c) {
      throw std::invalid_argument("shift_marked: coefficients not constant on the marked set and its complement");
    }
  }

  const int fm = cardinality(marked);
  MarkedLevelFunction f{n, marked, std::vector<RationalVector>(static_cast<std::size_t>(n) + 1, RationalVector(static_cast<std::size_t>(fm) + 1))};
  for (int k = 0; k <= n; ++k)
    for (int m = 0; m <= fm && m <= k; ++m)
      if (k - m <= n - fm)
        f.values[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)] = (in_coeff * m + out_coeff * (k - m) + g.constant) * y[k];
  return f;
}

Rational objective(const RationalVector& f_levels, const LevelVector& y) {
  if (f_levels.size() != y.values.size()) throw std::invalid_argument("objective: level vector sizes differ");
  Rational s = 0;
  for (int k = 0; k <= y.n; ++k)
    if (sgn(y[k]) != 0 && sgn(f_levels[static_cast<std::size_t>(k)]) != 0) s += binom(y.n, k) * f_levels[static_cast<std::size_t>(k)] * y[k];
  return s;
}

}  // namespace sossym
