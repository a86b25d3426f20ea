#include "sossym/symmetry.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "sossym/parallel.hpp"

namespace sossym {

namespace {

void check_range(int h, int t, int n) {
  if (h < 0 || h > t || t > n || n < 1)
    throw std::invalid_argument("expected 0 <= h <= t <= n, got h=" + std::to_string(h) + " t=" + std::to_string(t) +
                                " n=" + std::to_string(n));
}

Rational alpha_at(const AlphaCoefficients& alpha, int i, int j) {
  const auto it = alpha.find({i, j});
  return it == alpha.end() ? Rational(0) : it->second;
}

// h_r(k) = k^(r) (n-k)^(h-r) as a polynomial in k.
PolynomialQ h_weight(int h, int r, int n) { return PolynomialQ::falling(1, 0, r) * PolynomialQ::falling(-1, n, h - r); }

}  // namespace

GhPolynomial build_gh(int h, int t, int n, const AlphaCoefficients& alpha) {
  check_range(h, t, n);
  validate_alpha(alpha, h, t);

  PolynomialQ total;
  for (int r = 0; r <= h; ++r) {
    // Σ_j C(r,j) p_j(k - r); C(r,j) vanishes for j > r.
    PolynomialQ inner;
    for (int j = 0; j <= r; ++j) {
      PolynomialQ pj;
      for (int i = 0; i <= t - j; ++i) {
        const Rational a = alpha_at(alpha, i + j, j);
        if (sgn(a) != 0) pj += PolynomialQ::newton_binomial(r, i) * a;
      }
      inner += pj * binom(r, j);
    }
    total += h_weight(h, r, n) * (inner * inner) * binom(h, r);
  }
  return GhPolynomial{h, t, n, alpha, std::move(total)};
}

PolynomialQ build_gh_regrouped(int h, int t, int n, const AlphaCoefficients& alpha) {
  check_range(h, t, n);
  validate_alpha(alpha, h, t);

  std::map<std::tuple<int, int, int, int>, PolynomialQ> c_cache;
  auto c_poly = [&](int i, int j, int e, int f) -> const PolynomialQ& {
    const auto key = std::make_tuple(i, j, e, f);
    auto it = c_cache.find(key);
    if (it != c_cache.end()) return it->second;
    PolynomialQ c;
    for (int r = 0; r <= h; ++r) {
      const Rational weight = binom(h, r) * binom(r, i) * binom(r, j) * binom(h - r, e) * binom(h - r, f);
      if (sgn(weight) != 0) c += h_weight(h, r, n) * weight;
    }
    if (c.degree() > i + j + e + f)
      throw std::logic_error("C(k) degree " + std::to_string(c.degree()) + " exceeds bound " + std::to_string(i + j + e + f));
    return c_cache.emplace(key, std::move(c)).first->second;
  };

  std::vector<PolynomialQ> shifted(static_cast<std::size_t>(t) + 1);
  for (int q = 0; q <= t; ++q) shifted[static_cast<std::size_t>(q)] = PolynomialQ::newton_binomial(h, q);

  PolynomialQ total;
  for (int i = 0; i <= h; ++i) {
    for (int j = 0; j <= h; ++j) {
      for (int a = 0; a <= t - i; ++a) {
        const Rational ai = alpha_at(alpha, a + i, i);
        if (sgn(ai) == 0) continue;
        for (int b = 0; b <= t - j; ++b) {
          const Rational bj = alpha_at(alpha, b + j, j);
          if (sgn(bj) == 0) continue;
          for (int q = 0; q <= a; ++q)
            for (int s = 0; s <= b; ++s)
              total += shifted[static_cast<std::size_t>(q)] * shifted[static_cast<std::size_t>(s)] * c_poly(i, j, a - q, b - s) *
                       (ai * bj);
        }
      }
    }
  }
  return total;
}

std::vector<PolynomialQ> shifted_falling_sums(int h, int n, int max_d) {
  std::vector<PolynomialQ> out;
  for (int d = 0; d <= max_d; ++d) {
    PolynomialQ c;
    for (int r = 0; r <= h; ++r)
      c += PolynomialQ::falling(-1, n, h - r) * PolynomialQ::falling(1, 0, r) * (binom(h, r) * falling_factorial(r + d, d));
    if (c.degree() > d)
      throw std::logic_error("C'_d(k) degree " + std::to_string(c.degree()) + " exceeds d = " + std::to_string(d));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::pair<int, int>> alpha_index(int h, int t) {
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i <= t; ++i)
    for (int j = 0; j <= std::min(h, i); ++j) idx.emplace_back(i, j);
  return idx;
}

std::vector<AlphaCoefficients> vanishing_alpha_basis(int h, int t, int n) {
  check_range(h, t, n);
  const auto index = alpha_index(h, t);
  const std::size_t dim = index.size();

  // For Q with |Q| = q, |Q ∩ H| = m, the i-subsets J of Q with |J ∩ H| = j
  // number C(m,j) C(q-m,i-j); one row per (q, m, i).
  std::vector<RationalVector> rows;
  for (int q = 0; q <= n; ++q) {
    if (q >= h && q <= n - h) continue;
    for (int m = std::max(0, q - (n - h)); m <= std::min(h, q); ++m)
      for (int i = 0; i <= std::min(t, q); ++i) {
        RationalVector row(dim);
        for (std::size_t c = 0; c < dim; ++c)
          if (index[c].first == i) row[c] = binom(m, index[c].second) * binom(q - m, i - index[c].second);
        rows.push_back(std::move(row));
      }
  }

  // Reduced row echelon form, then one basis vector per free column.
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    const Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      const Rational f = rows[i][c];
      for (std::size_t k = c; k < dim; ++k) rows[i][k] -= f * rows[r][k];
    }
    pivots.push_back(c);
    ++r;
  }

  std::vector<AlphaCoefficients> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (std::find(pivots.begin(), pivots.end(), free) != pivots.end()) continue;
    AlphaCoefficients alpha;
    alpha[index[free]] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      if (sgn(rows[k][free]) != 0) alpha[index[pivots[k]]] = -rows[k][free];
    basis.push_back(std::move(alpha));
  }
  return basis;
}

ReducedBlock reduced_block(int h, int t, int n, const LevelVector& z) {
  check_range(h, t, n);
  if (z.n != n) throw std::invalid_argument("reduced_block: level vector has wrong n");
  ReducedBlock block{h, t, n, alpha_index(h, t), {}};
  const std::size_t dim = block.index.size();
  block.q = RationalMatrix(dim, dim);

  RationalVector c(dim);
  for (int k = 0; k <= n; ++k) {
    if (sgn(z[k]) == 0) continue;
    const Rational zk = z[k] * binom(n, k);
    for (int r = 0; r <= std::min(h, k); ++r) {
      const Rational hr = falling_factorial(k, r) * falling_factorial(n - k, h - r);
      if (sgn(hr) == 0) continue;
      const Rational weight = zk * binom(h, r) * hr;
      for (std::size_t a = 0; a < dim; ++a) {
        const auto [i, j] = block.index[a];
        c[a] = binom(r, j) * binom(k - r, i - j);
      }
      for (std::size_t a = 0; a < dim; ++a) {
        if (sgn(c[a]) == 0) continue;
        const Rational wa = weight * c[a];
        for (std::size_t b = 0; b < dim; ++b)
          if (sgn(c[b]) != 0) block.q(a, b) += wa * c[b];
      }
    }
  }
  return block;
}

Rational evaluate_block(const ReducedBlock& block, const AlphaCoefficients& alpha) {
  validate_alpha(alpha, block.h, block.t);
  RationalVector v(block.index.size());
  for (std::size_t a = 0; a < v.size(); ++a) v[a] = alpha_at(alpha, block.index[a].first, block.index[a].second);
  return quadratic_form(block.q, v);
}

bool ReductionResult::all_psd() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const BlockVerdict& b) { return b.psd(); });
}

ReductionResult check_reduction(const LevelVector& z, int t) {
  if (t < 0 || t > z.n) throw std::invalid_argument("check_reduction requires 0 <= t <= n");
  ReductionResult result{z.n, t, std::vector<BlockVerdict>(static_cast<std::size_t>(t) + 1)};
  parallel_for(result.blocks.size(), [&](std::size_t idx) {
    const int h = static_cast<int>(idx);
    BlockVerdict& bv = result.blocks[idx];
    bv.h = h;
    if (h > z.n / 2) {
      bv.skipped = true;
      return;
    }
    bv.block = reduced_block(h, t, z.n, z);
    bv.verdict = certify_psd(bv.block->q);
  });
  return result;
}

Lemma8Report lemma8_suite(const GhPolynomial& gh) {
  Lemma8Report rep;
  const PolynomialQ& g = gh.expanded;
  const int h = gh.h, t = gh.t, n = gh.n;

  rep.degree = g.degree();
  rep.degree_ok = g.degree() <= 2 * t;

  rep.zeros_ok = true;
  for (int k = 0; k <= n; ++k)
    if ((k <= h - 1 || k >= n - h + 1) && sgn(g(k)) != 0) rep.zeros_ok = false;

  const Rational lo = h - 1;
  const Rational hi = n - h + 1;
  rep.grid_ok = rep.cells_ok = rep.interval_ok = true;
  if (lo > hi || g.is_zero()) return rep;

  const PolynomialQ odd = odd_multiplicity_part(g);
  const Rational step(1, 4);
  Rational prev = lo;
  if (sgn(g(prev)) < 0) rep.grid_ok = false;
  for (Rational x = lo + step; x <= hi; x += step) {
    if (sgn(g(x)) < 0) rep.grid_ok = false;
    if (odd.degree() > 0 && count_roots_open(odd, prev, x) != 0) rep.cells_ok = false;
    prev = x;
  }

  if (odd.degree() > 0 && count_roots_open(odd, lo, hi) != 0) rep.interval_ok = false;
  // Without sign changes inside, one non-root interior sample fixes the sign.
  Rational probe = (lo + hi) / 2;
  for (int attempt = 0; sgn(g(probe)) == 0 && attempt < 2 * g.degree() + 2; ++attempt) probe = (probe + hi) / 2;
  if (sgn(g(probe)) < 0) rep.interval_ok = false;
  return rep;
}

Lemma9Report lemma9_identity(int h, int t, int n, const AlphaCoefficients& alpha, const std::optional<LevelVector>& z) {
  check_range(h, t, n);
  if (n > 16) throw std::invalid_argument("lemma9_identity enumerates all subsets; n must be <= 16");
  validate_alpha(alpha, h, t);

  const SubsetIndex index(n, t);
  const RationalVector u = realize_structured(h, alpha, index);
  const GhPolynomial gh = build_gh(h, t, n, alpha);
  const Rational fall = falling_factorial(n, h);

  Lemma9Report rep;
  rep.brute_force.assign(static_cast<std::size_t>(n) + 1, Rational(0));
  rep.predicted.assign(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int k = 0; k <= n; ++k) {
    Rational a = 0;
    for_each_k_subset(n, k, [&](Subset s) {
      Rational dot = 0;
      for_each_subset_of(s, t, [&](Subset j) { dot += u[index.rank(j)]; });
      a += dot * dot;
    });
    rep.brute_force[static_cast<std::size_t>(k)] = a;
    rep.predicted[static_cast<std::size_t>(k)] = binom(n, k) * gh(k) / fall;
  }
  rep.identity_ok = rep.brute_force == rep.predicted;

  if (z) {
    if (z->n != n) throw std::invalid_argument("lemma9_identity: level vector has wrong n");
    Rational weighted = 0;
    for (int k = 0; k <= n; ++k) weighted += (*z)[k] * rep.brute_force[static_cast<std::size_t>(k)];
    const Rational direct = rayleigh(matrix_from_levels(*z, t).matrix, u);
    const Rational via_block = evaluate_block(reduced_block(h, t, n, *z), alpha) / fall;
    rep.bridge_ok = direct == weighted && weighted == via_block;
  }
  return rep;
}

}  // namespace sossym
