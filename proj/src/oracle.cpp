#include "bbc/oracle.hpp"

#include <algorithm>

namespace bbc {

DenseMatrix DenseMatrix::from_blackbox(const BlackBox& a) {
  const std::size_t n = a.dimension();
  DenseMatrix d(a.field(), n);
  Vector e(n, 0), col(n);
  for (std::size_t j = 0; j < n; ++j) {
    e[j] = 1;
    a.apply(e, col);
    e[j] = 0;
    for (std::size_t i = 0; i < n; ++i) d(i, j) = col[i];
  }
  return d;
}

DenseMatrix DenseMatrix::from_sparse(const SparseMatrix& a) {
  DenseMatrix d(a.field(), a.dimension());
  for (const auto& t : a.triples()) d(t.row, t.col) = t.value;
  return d;
}

Vector DenseMatrix::apply(const Vector& v) const {
  Vector out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    Word acc = 0;
    for (std::size_t j = 0; j < n_; ++j) acc = field_.mul_add(a_[i * n_ + j], v[j], acc);
    out[i] = acc;
  }
  return out;
}

FieldPoly dense_charpoly(const DenseMatrix& input) {
  DenseMatrix h = input;
  const PrimeField& f = h.field();
  const std::size_t n = h.dimension();
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t piv = m;
    while (piv < n && h(piv, m - 1) == 0) ++piv;
    if (piv == n) continue;
    if (piv != m) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(piv, c), h(m, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, piv), h(r, m));
    }
    const Word inv = f.inv(h(m, m - 1));
    for (std::size_t i = m + 1; i < n; ++i) {
      const Word u = f.mul(h(i, m - 1), inv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h(i, c) = f.sub(h(i, c), f.mul(u, h(m, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, m) = f.add(h(r, m), f.mul(u, h(r, i)));
    }
  }
  std::vector<FieldPoly> p;
  p.push_back(FieldPoly::constant(f, 1));
  for (std::size_t m = 1; m <= n; ++m) {
    FieldPoly pm = FieldPoly::linear(f, h(m - 1, m - 1)) * p[m - 1];
    Word t = 1;
    for (std::size_t i = 1; i < m; ++i) {
      t = f.mul(t, h(m - i, m - i - 1));
      const Word c = f.mul(t, h(m - i - 1, m - 1));
      if (c != 0) pm -= p[m - i - 1].scaled(c);
    }
    p.push_back(std::move(pm));
  }
  return p[n];
}

namespace {

// Row echelon in place; returns rank and the determinant of the leading block.
std::pair<std::size_t, Word> eliminate(DenseMatrix m) {
  const PrimeField& f = m.field();
  const std::size_t n = m.dimension();
  std::size_t rank = 0;
  Word det = 1;
  for (std::size_t c = 0; c < n && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && m(piv, c) == 0) ++piv;
    if (piv == n) {
      det = 0;
      continue;
    }
    if (piv != rank) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(rank, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(rank, c));
    const Word inv = f.inv(m(rank, c));
    for (std::size_t r = rank + 1; r < n; ++r) {
      const Word u = f.mul(m(r, c), inv);
      if (u == 0) continue;
      for (std::size_t j = c; j < n; ++j) m(r, j) = f.sub(m(r, j), f.mul(u, m(rank, j)));
    }
    ++rank;
  }
  return {rank, rank == n ? det : 0};
}

Vector poly_apply(const DenseMatrix& a, const FieldPoly& p, const Vector& v) {
  const PrimeField& f = a.field();
  const auto& c = p.coeffs();
  Vector acc(v.size(), 0);
  for (std::size_t i = c.size(); i-- > 0;) {
    acc = a.apply(acc);
    for (std::size_t j = 0; j < v.size(); ++j) acc[j] = f.mul_add(c[i], v[j], acc[j]);
  }
  return acc;
}

FieldPoly krylov_minpoly(const DenseMatrix& a, const Vector& v) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dimension();
  std::vector<Vector> basis;
  std::vector<std::size_t> pivots;
  std::vector<FieldPoly> coeffs;
  Vector w = v;
  FieldPoly x = FieldPoly::constant(f, 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Vector r = w;
    FieldPoly c = x;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Word u = r[pivots[b]];
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) r[j] = f.sub(r[j], f.mul(u, basis[b][j]));
      c -= coeffs[b].scaled(u);
    }
    auto it = std::find_if(r.begin(), r.end(), [](Word z) { return z != 0; });
    if (it == r.end()) return c.monic();
    const auto piv = static_cast<std::size_t>(it - r.begin());
    const Word inv = f.inv(r[piv]);
    for (auto& z : r) z = f.mul(z, inv);
    basis.push_back(std::move(r));
    pivots.push_back(piv);
    coeffs.push_back(c.scaled(inv));
    w = a.apply(w);
    x = x.shifted(1);
  }
  throw Error("krylov sequence did not terminate");
}

}  // namespace

std::size_t dense_rank(const DenseMatrix& a) { return eliminate(a).first; }

Word dense_det(const DenseMatrix& a) {
  if (a.dimension() == 0) return 1;
  return eliminate(a).second;
}

FieldPoly dense_minpoly(const DenseMatrix& a) {
  const std::size_t n = a.dimension();
  FieldPoly m = FieldPoly::constant(a.field(), 1);
  Vector e(n, 0);
  for (std::size_t i = 0; i < n && m.degree() < static_cast<int>(n); ++i) {
    e[i] = 1;
    const Vector r = poly_apply(a, m, e);
    if (std::any_of(r.begin(), r.end(), [](Word z) { return z != 0; })) m = lcm(m, krylov_minpoly(a, e));
    e[i] = 0;
  }
  return m;
}

std::vector<FieldPoly> dense_invariant_factors(const DenseMatrix& a) {
  const PrimeField& f = a.field();
  const std::size_t n = a.dimension();
  std::vector<std::vector<FieldPoly>> m(n, std::vector<FieldPoly>(n, FieldPoly(f)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m[i][j] = FieldPoly::constant(f, f.neg(a(i, j)));
      if (i == j) m[i][j] += FieldPoly::x(f);
    }
  std::vector<FieldPoly> diag;
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      std::size_t br = n, bc = n;
      int best = -1;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (!m[i][j].is_zero() && (best < 0 || m[i][j].degree() < best)) {
            best = m[i][j].degree();
            br = i;
            bc = j;
          }
      if (best < 0) throw Error("singular characteristic matrix");
      std::swap(m[br], m[k]);
      for (auto& row : m) std::swap(row[bc], row[k]);
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        if (m[i][k].is_zero()) continue;
        auto [q, r] = divrem(m[i][k], m[k][k]);
        for (std::size_t j = k; j < n; ++j) m[i][j] -= q * m[k][j];
        if (!r.is_zero()) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (m[k][j].is_zero()) continue;
        auto [q, r] = divrem(m[k][j], m[k][k]);
        for (std::size_t i = k; i < n; ++i) m[i][j] -= q * m[i][k];
        if (!r.is_zero()) clean = false;
      }
      if (!clean) continue;
      bool divides_all = true;
      for (std::size_t i = k + 1; i < n && divides_all; ++i)
        for (std::size_t j = k + 1; j < n && divides_all; ++j)
          if (!divides(m[k][k], m[i][j])) {
            for (std::size_t c = k; c < n; ++c) m[k][c] += m[i][c];
            divides_all = false;
          }
      if (divides_all) break;
    }
    diag.push_back(m[k][k].monic());
  }
  std::vector<FieldPoly> out;
  for (std::size_t k = diag.size(); k-- > 0;)
    if (!diag[k].is_one()) out.push_back(diag[k]);
  return out;
}

IntPoly dense_integer_charpoly(const IntegerMatrix& a) {
  const std::size_t n = a.dimension();
  if (n == 0) return IntPoly::constant(1);
  const mpz_class target = 2 * charpoly_coeff_bound(n, std::max(a.norm(), mpz_class(1)));
  CrtAccumulator acc;
  std::uint64_t p = kMaxModulus;
  while (acc.empty() || acc.modulus() <= target) {
    do --p;
    while (!is_prime(p));
    const PrimeField f(p);
    acc.add(dense_charpoly(DenseMatrix::from_sparse(*a.reduce(f))));
  }
  return acc.value();
}

}  // namespace bbc
