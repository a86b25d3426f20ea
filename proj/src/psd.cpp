#include "sossym/psd.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sossym {

std::size_t PsdCertificate::rank() const {
  return static_cast<std::size_t>(std::count_if(diag.begin(), diag.end(), [](const Rational& d) { return sgn(d) != 0; }));
}

namespace {

// Dense integer matrix; only the lower triangle of the active block is used.
class IntegerMatrix {
 public:
  explicit IntegerMatrix(std::size_t d) : d_(d), data_(d * d) {}
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * d_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * d_ + j]; }

 private:
  std::size_t d_;
  std::vector<Integer> data_;
};

void swap_symmetric(IntegerMatrix& a, RationalMatrix& l, std::vector<std::size_t>& perm, std::size_t d, std::size_t k,
                    std::size_t p) {
  if (k == p) return;
  a(k, k).swap(a(p, p));
  for (std::size_t j = k + 1; j < p; ++j) a(j, k).swap(a(p, j));
  for (std::size_t i = p + 1; i < d; ++i) a(i, k).swap(a(i, p));
  for (std::size_t j = 0; j < k; ++j) l(k, j).swap(l(p, j));
  std::swap(perm[k], perm[p]);
}

// Lifts a direction w living on the Schur block (positions >= k) back to the
// original coordinates: v = Pᵀ L^{-T} w.
RationalVector lift_direction(const RationalMatrix& l, const std::vector<std::size_t>& perm, std::size_t k,
                              const RationalVector& w) {
  const std::size_t d = l.rows();
  RationalVector vp = w;
  for (std::size_t ii = k; ii-- > 0;) {
    Rational acc = 0;
    for (std::size_t j = ii + 1; j < d; ++j)
      if (sgn(vp[j]) != 0 && sgn(l(j, ii)) != 0) acc += l(j, ii) * vp[j];
    vp[ii] = -acc;
  }
  RationalVector v(d);
  for (std::size_t i = 0; i < d; ++i) v[perm[i]] = vp[i];
  return v;
}

IndefWitness checked_witness(const RationalMatrix& m, RationalVector v) {
  IndefWitness w{std::move(v), 0};
  w.value = quadratic_form(m, w.v);
  if (sgn(w.value) >= 0)
    throw std::logic_error("certify_psd: witness re-verification failed (vᵀMv = " + to_string(w.value) + ")");
  return w;
}

}  // namespace

PsdVerdict certify_psd(const RationalMatrix& m) {
  if (!m.is_symmetric()) throw std::invalid_argument("certify_psd: matrix is not symmetric");
  const std::size_t d = m.rows();

  // Fraction-free elimination on the integer matrix scale·M. After k steps the
  // active block holds prev·S, where S is the Schur complement of scale·M and
  // prev > 0 is the last pivot, so signs and pivot order match the rational
  // factorization while every update is an exact integer division.
  Integer scale = 1;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).get_den_mpz_t());
  IntegerMatrix a(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      mpz_divexact(a(i, j).get_mpz_t(), scale.get_mpz_t(), m(i, j).get_den_mpz_t());
      a(i, j) *= m(i, j).get_num();
    }

  RationalMatrix l = RationalMatrix::identity(d);
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  RationalVector diag(d);
  Integer prev = 1;
  Integer scratch;

  for (std::size_t k = 0; k < d; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < d; ++i)
      if (a(i, i) > a(p, p)) p = i;

    if (sgn(a(p, p)) <= 0) {
      // The largest remaining diagonal entry is not positive; any negative one
      // is a witness by itself.
      for (std::size_t i = k; i < d; ++i) {
        if (sgn(a(i, i)) >= 0) continue;
        RationalVector w(d);
        w[i] = 1;
        return checked_witness(m, lift_direction(l, perm, k, w));
      }
    }

    if (sgn(a(p, p)) == 0) {
      // Every remaining diagonal entry is zero. The block is zero (PSD tail)
      // unless some off-diagonal entry survives; then (1, -sign(off)) on that
      // pair gives -2|off| < 0.
      for (std::size_t i = k; i < d; ++i) {
        for (std::size_t j = k; j < i; ++j) {
          if (sgn(a(i, j)) == 0) continue;
          RationalVector w(d);
          w[j] = 1;
          w[i] = sgn(a(i, j)) > 0 ? -1 : 1;
          return checked_witness(m, lift_direction(l, perm, k, w));
        }
      }
      break;  // diag[k..] stay zero, L keeps identity columns
    }

    swap_symmetric(a, l, perm, d, k, p);
    const Integer pivot = a(k, k);
    diag[k] = Rational(pivot, prev * scale);
    diag[k].canonicalize();
    for (std::size_t i = k + 1; i < d; ++i) {
      if (sgn(a(i, k)) == 0) continue;
      l(i, k) = Rational(a(i, k), pivot);
      l(i, k).canonicalize();
    }

    for (std::size_t i = k + 1; i < d; ++i) {
      const Integer& aik = a(i, k);
      for (std::size_t j = k + 1; j <= i; ++j) {
        Integer& aij = a(i, j);
        const Integer& ajk = a(j, k);
        mpz_mul(aij.get_mpz_t(), aij.get_mpz_t(), pivot.get_mpz_t());
        if (sgn(aik) != 0 && sgn(ajk) != 0) mpz_submul(aij.get_mpz_t(), aik.get_mpz_t(), ajk.get_mpz_t());
        mpz_divexact(aij.get_mpz_t(), aij.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = pivot;
  }

  return PsdCertificate{std::move(perm), std::move(diag), std::move(l)};
}

bool verify_certificate(const RationalMatrix& m, const PsdCertificate& cert) {
  const std::size_t d = m.rows();
  if (!m.square() || cert.permutation.size() != d || cert.diag.size() != d || cert.lower.rows() != d ||
      cert.lower.cols() != d)
    return false;

  std::vector<bool> seen(d, false);
  for (std::size_t p : cert.permutation) {
    if (p >= d || seen[p]) return false;
    seen[p] = true;
  }
  for (const Rational& x : cert.diag)
    if (sgn(x) < 0) return false;
  for (std::size_t i = 0; i < d; ++i) {
    if (cert.lower(i, i) != 1) return false;
    for (std::size_t j = i + 1; j < d; ++j)
      if (sgn(cert.lower(i, j)) != 0) return false;
  }

  // (L D)(i, c) computed on the fly.
  Rational acc;
  Rational scratch;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      acc = 0;
      for (std::size_t c = 0; c <= j; ++c) {
        const Rational& lic = cert.lower(i, c);
        const Rational& ljc = cert.lower(j, c);
        if (sgn(lic) == 0 || sgn(ljc) == 0 || sgn(cert.diag[c]) == 0) continue;
        mpq_mul(scratch.get_mpq_t(), lic.get_mpq_t(), ljc.get_mpq_t());
        mpq_mul(scratch.get_mpq_t(), scratch.get_mpq_t(), cert.diag[c].get_mpq_t());
        mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), scratch.get_mpq_t());
      }
      if (acc != m(cert.permutation[i], cert.permutation[j])) return false;
      if (m(cert.permutation[i], cert.permutation[j]) != m(cert.permutation[j], cert.permutation[i])) return false;
    }
  }
  return true;
}

bool verify_witness(const RationalMatrix& m, const IndefWitness& w) {
  if (!m.square() || w.v.size() != m.rows()) return false;
  return sgn(quadratic_form(m, w.v)) < 0;
}

Rational rayleigh(const RationalMatrix& m, std::span<const Rational> v) { return quadratic_form(m, v); }

void validate_alpha(const AlphaCoefficients& alpha, int h, int t) {
  for (const auto& [key, value] : alpha) {
    const auto [i, j] = key;
    if (i < 0 || i > t || j < 0 || j > std::min(h, i))
      throw std::invalid_argument("alpha index (" + std::to_string(i) + "," + std::to_string(j) +
                                  ") outside 0<=i<=t, 0<=j<=min(h,i)");
  }
}

RationalVector realize_structured(int h, const AlphaCoefficients& alpha, const SubsetIndex& index) {
  const Subset head = h == 0 ? Subset{0} : ground_set(h);
  RationalVector values(index.size());
  for (std::size_t r = 0; r < index.size(); ++r) {
    const Subset q = index[r];
    const auto it = alpha.find({cardinality(q), cardinality(q & head)});
    if (it != alpha.end()) values[r] = it->second;
  }
  return values;
}

StructuredVector structured_vector(int h, int t, int n, const AlphaCoefficients& alpha) {
  if (h < 0 || h > t || t > n) throw std::invalid_argument("structured_vector requires 0 <= h <= t <= n");
  validate_alpha(alpha, h, t);
  const SubsetIndex index(n, t);
  return StructuredVector{h, t, n, alpha, realize_structured(h, alpha, index)};
}

}  // namespace sossym
