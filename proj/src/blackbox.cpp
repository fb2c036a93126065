#include "bbc/blackbox.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace bbc {

SparseMatrix::SparseMatrix(const PrimeField& f, std::size_t n, std::vector<Triple> entries)
    : field_(f), n_(n) {
  for (auto& t : entries) {
    if (t.row >= n || t.col >= n) {
      throw InputError("sparse matrix entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                       ") outside " + std::to_string(n) + "x" + std::to_string(n));
    }
    t.value %= f.modulus();
  }
  std::sort(entries.begin(), entries.end(),
            [](const Triple& a, const Triple& b) { return a.row != b.row ? a.row < b.row : a.col < b.col; });
  offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col) {
      throw InputError("duplicate sparse matrix entry (" + std::to_string(entries[i].row) + ", " +
                       std::to_string(entries[i].col) + ")");
    }
    if (entries[i].value == 0) continue;
    cols_.push_back(entries[i].col);
    values_.push_back(entries[i].value);
    ++offsets_[entries[i].row + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
}

SparseMatrix SparseMatrix::identity(const PrimeField& f, std::size_t n) {
  return diagonal(f, std::vector<Word>(n, 1));
}

SparseMatrix SparseMatrix::diagonal(const PrimeField& f, const std::vector<Word>& diag) {
  std::vector<Triple> t;
  for (std::size_t i = 0; i < diag.size(); ++i) t.push_back({i, i, diag[i]});
  return SparseMatrix(f, diag.size(), std::move(t));
}

void SparseMatrix::apply(std::span<const Word> in, std::span<Word> out) const {
  for (std::size_t i = 0; i < n_; ++i) {
    Word acc = 0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) acc = field_.mul_add(values_[k], in[cols_[k]], acc);
    out[i] = acc;
  }
}

void SparseMatrix::apply_transpose(std::span<const Word> in, std::span<Word> out) const {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    const Word x = in[i];
    if (x == 0) continue;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) out[cols_[k]] = field_.mul_add(values_[k], x, out[cols_[k]]);
  }
}

std::optional<Word> SparseMatrix::diagonal_trace() const {
  Word t = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      if (cols_[k] == i) t = field_.add(t, values_[k]);
    }
  }
  return t;
}

std::vector<Triple> SparseMatrix::triples() const {
  std::vector<Triple> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) out.push_back({i, cols_[k], values_[k]});
  }
  return out;
}

Word SparseMatrix::at(std::size_t r, std::size_t c) const {
  for (std::size_t k = offsets_[r]; k < offsets_[r + 1]; ++k) {
    if (cols_[k] == c) return values_[k];
  }
  return 0;
}

PolyOfMatrix::PolyOfMatrix(BlackBoxPtr base, FieldPoly p, unsigned power)
    : base_(std::move(base)), poly_(std::move(p)), power_(power) {
  if (!(poly_.field() == base_->field())) throw FieldMismatch();
  if (poly_.is_zero()) throw InputError("PolyOfMatrix: zero polynomial");
}

void PolyOfMatrix::horner(std::span<const Word> in, std::span<Word> out, bool transpose) const {
  const PrimeField& f = field();
  const std::size_t n = dimension();
  const auto& c = poly_.coeffs();
  Vector cur(in.begin(), in.end()), acc(n), tmp(n);
  for (unsigned round = 0; round < power_; ++round) {
    // acc = c_d * cur; then acc = A*acc + c_i * cur
    for (std::size_t j = 0; j < n; ++j) acc[j] = f.mul(c.back(), cur[j]);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      if (transpose) {
        base_->apply_transpose(acc, tmp);
      } else {
        base_->apply(acc, tmp);
      }
      for (std::size_t j = 0; j < n; ++j) acc[j] = f.mul_add(c[i], cur[j], tmp[j]);
    }
    std::swap(cur, acc);
  }
  std::copy(cur.begin(), cur.end(), out.begin());
}

void PolyOfMatrix::apply(std::span<const Word> in, std::span<Word> out) const { horner(in, out, false); }
void PolyOfMatrix::apply_transpose(std::span<const Word> in, std::span<Word> out) const { horner(in, out, true); }

double PolyOfMatrix::cost() const {
  const double d = static_cast<double>(std::max(poly_.degree(), 0));
  return static_cast<double>(power_) * (d * base_->cost() + 2.0 * (d + 1) * static_cast<double>(dimension()));
}

ShiftedOperator::ShiftedOperator(BlackBoxPtr base, Word lambda) : base_(std::move(base)), lambda_(lambda) {
  lambda_ %= base_->field().modulus();
}

void ShiftedOperator::apply(std::span<const Word> in, std::span<Word> out) const {
  base_->apply(in, out);
  const PrimeField& f = field();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.sub(f.mul(lambda_, in[i]), out[i]);
}

void ShiftedOperator::apply_transpose(std::span<const Word> in, std::span<Word> out) const {
  base_->apply_transpose(in, out);
  const PrimeField& f = field();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.sub(f.mul(lambda_, in[i]), out[i]);
}

LowRankPerturbation::LowRankPerturbation(BlackBoxPtr base, std::size_t rank, std::vector<Word> u,
                                         std::vector<Word> v)
    : base_(std::move(base)), rank_(rank), u_(std::move(u)), v_(std::move(v)) {
  const std::size_t n = base_->dimension();
  if (u_.size() != n * rank_ || v_.size() != n * rank_) throw InputError("low-rank perturbation: bad factor shapes");
}

std::shared_ptr<LowRankPerturbation> LowRankPerturbation::random(BlackBoxPtr base, std::size_t rank, Rng& rng) {
  const std::size_t n = base->dimension();
  const PrimeField& f = base->field();
  std::vector<Word> u(n * rank), v(n * rank);
  for (auto& x : u) x = f.random(rng);
  for (auto& x : v) x = f.random(rng);
  return std::make_shared<LowRankPerturbation>(std::move(base), rank, std::move(u), std::move(v));
}

void LowRankPerturbation::apply(std::span<const Word> in, std::span<Word> out) const {
  base_->apply(in, out);
  const PrimeField& f = field();
  const std::size_t n = dimension();
  for (std::size_t r = 0; r < rank_; ++r) {
    Word y = 0;
    for (std::size_t j = 0; j < n; ++j) y = f.mul_add(v_[r * n + j], in[j], y);
    if (y == 0) continue;
    for (std::size_t i = 0; i < n; ++i) out[i] = f.mul_add(u_[i * rank_ + r], y, out[i]);
  }
}

void LowRankPerturbation::apply_transpose(std::span<const Word> in, std::span<Word> out) const {
  base_->apply_transpose(in, out);
  const PrimeField& f = field();
  const std::size_t n = dimension();
  for (std::size_t r = 0; r < rank_; ++r) {
    Word y = 0;
    for (std::size_t i = 0; i < n; ++i) y = f.mul_add(u_[i * rank_ + r], in[i], y);
    if (y == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] = f.mul_add(v_[r * n + j], y, out[j]);
  }
}

DiagonalOperator::DiagonalOperator(const PrimeField& f, std::vector<Word> diag) : field_(f), diag_(std::move(diag)) {
  for (auto& d : diag_) d %= f.modulus();
}

std::shared_ptr<DiagonalOperator> DiagonalOperator::random_nonsingular(const PrimeField& f, std::size_t n, Rng& rng) {
  std::vector<Word> d(n);
  for (auto& x : d) x = f.random_nonzero(rng);
  return std::make_shared<DiagonalOperator>(f, std::move(d));
}

void DiagonalOperator::apply(std::span<const Word> in, std::span<Word> out) const {
  for (std::size_t i = 0; i < diag_.size(); ++i) out[i] = field_.mul(diag_[i], in[i]);
}

Word DiagonalOperator::determinant() const {
  Word d = 1;
  for (Word x : diag_) d = field_.mul(d, x);
  return d;
}

ProductOperator::ProductOperator(std::vector<BlackBoxPtr> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw InputError("empty operator product");
  for (const auto& f : factors_) {
    if (f->dimension() != factors_.front()->dimension()) throw InputError("operator product: dimension mismatch");
    if (!(f->field() == factors_.front()->field())) throw FieldMismatch();
  }
}

void ProductOperator::apply(std::span<const Word> in, std::span<Word> out) const {
  Vector cur(in.begin(), in.end()), next(dimension());
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    (*it)->apply(cur, next);
    std::swap(cur, next);
  }
  std::copy(cur.begin(), cur.end(), out.begin());
}

void ProductOperator::apply_transpose(std::span<const Word> in, std::span<Word> out) const {
  Vector cur(in.begin(), in.end()), next(dimension());
  for (const auto& f : factors_) {
    f->apply_transpose(cur, next);
    std::swap(cur, next);
  }
  std::copy(cur.begin(), cur.end(), out.begin());
}

double ProductOperator::cost() const {
  double c = 0;
  for (const auto& f : factors_) c += f->cost();
  return c;
}

SparseMatrix build_companion(const FieldPoly& p) {
  if (!p.is_monic() || p.degree() < 1) throw InputError("companion matrix needs a monic polynomial of degree >= 1");
  const PrimeField& f = p.field();
  const std::size_t d = static_cast<std::size_t>(p.degree());
  std::vector<Triple> t;
  for (std::size_t i = 0; i + 1 < d; ++i) t.push_back({i + 1, i, 1});
  for (std::size_t i = 0; i < d; ++i) t.push_back({i, d - 1, f.neg(p.coeff(i))});
  return SparseMatrix(f, d, std::move(t));
}

SparseMatrix build_block_jordan(const FieldPoly& p, unsigned k) {
  if (k < 1) throw InputError("block Jordan matrix needs k >= 1");
  const SparseMatrix c = build_companion(p);
  const std::size_t d = c.dimension();
  std::vector<Triple> t;
  for (unsigned b = 0; b < k; ++b) {
    for (const auto& e : c.triples()) t.push_back({b * d + e.row, b * d + e.col, e.value});
    if (b + 1 < k) t.push_back({b * d + d - 1, (b + 1) * d, 1});
  }
  return SparseMatrix(p.field(), d * k, std::move(t));
}

SparseMatrix block_diagonal(const std::vector<SparseMatrix>& blocks) {
  if (blocks.empty()) throw InputError("block_diagonal: no blocks");
  std::vector<Triple> t;
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (const auto& e : b.triples()) t.push_back({off + e.row, off + e.col, e.value});
    off += b.dimension();
  }
  return SparseMatrix(blocks.front().field(), off, std::move(t));
}

SparseMatrix random_sparse(const PrimeField& f, std::size_t n, std::size_t per_row, Rng& rng) {
  std::vector<Triple> t;
  std::uniform_int_distribution<std::size_t> col(0, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> cs;
    for (std::size_t k = 0; k < per_row && cs.size() < n; ++k) {
      std::size_t c = col(rng);
      if (std::find(cs.begin(), cs.end(), c) != cs.end()) continue;
      cs.push_back(c);
      t.push_back({i, c, f.random_nonzero(rng)});
    }
  }
  return SparseMatrix(f, n, std::move(t));
}

}  // namespace bbc
