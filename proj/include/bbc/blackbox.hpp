#pragma once

// Matrices known only through matrix-vector products.

#include <atomic>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bbc/ff.hpp"
#include "bbc/poly.hpp"

namespace bbc {

using Vector = std::vector<Word>;

/// An n x n linear map over GF(p). Implementations are immutable after
/// construction; apply() may be called concurrently.
class BlackBox {
 public:
  virtual ~BlackBox() = default;

  virtual std::size_t dimension() const = 0;
  virtual const PrimeField& field() const = 0;

  /// out = A * in. Spans must have length dimension() and not alias.
  virtual void apply(std::span<const Word> in, std::span<Word> out) const = 0;
  /// out = A^T * in.
  virtual void apply_transpose(std::span<const Word> in, std::span<Word> out) const = 0;

  /// Estimated scalar operations per apply.
  virtual double cost() const = 0;

  /// Sum of the diagonal when the representation exposes it cheaply.
  virtual std::optional<Word> diagonal_trace() const { return std::nullopt; }

  Vector apply(const Vector& in) const {
    Vector out(dimension());
    apply(in, out);
    return out;
  }
};

using BlackBoxPtr = std::shared_ptr<const BlackBox>;

struct Triple {
  std::size_t row;
  std::size_t col;
  Word value;
};

/// Compressed sparse rows over GF(p); no duplicates, no stored zeros.
class SparseMatrix final : public BlackBox {
 public:
  /// Zero entries are dropped; duplicate positions throw InputError.
  SparseMatrix(const PrimeField& f, std::size_t n, std::vector<Triple> entries);
  static SparseMatrix identity(const PrimeField& f, std::size_t n);
  static SparseMatrix diagonal(const PrimeField& f, const std::vector<Word>& diag);

  std::size_t dimension() const override { return n_; }
  const PrimeField& field() const override { return field_; }
  void apply(std::span<const Word> in, std::span<Word> out) const override;
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override;
  double cost() const override { return 2.0 * static_cast<double>(values_.size()) + static_cast<double>(n_); }
  std::optional<Word> diagonal_trace() const override;
  using BlackBox::apply;

  std::size_t nonzeros() const { return values_.size(); }
  const std::vector<std::size_t>& row_offsets() const { return offsets_; }
  const std::vector<std::size_t>& col_indices() const { return cols_; }
  const std::vector<Word>& values() const { return values_; }
  std::vector<Triple> triples() const;
  Word at(std::size_t r, std::size_t c) const;

 private:
  PrimeField field_;
  std::size_t n_;
  std::vector<std::size_t> offsets_;  // n_ + 1
  std::vector<std::size_t> cols_;
  std::vector<Word> values_;
};

/// P(A)^e, applied by e rounds of Horner (deg(P)*e base applies).
class PolyOfMatrix final : public BlackBox {
 public:
  PolyOfMatrix(BlackBoxPtr base, FieldPoly p, unsigned power = 1);

  std::size_t dimension() const override { return base_->dimension(); }
  const PrimeField& field() const override { return base_->field(); }
  void apply(std::span<const Word> in, std::span<Word> out) const override;
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override;
  double cost() const override;
  using BlackBox::apply;

 private:
  void horner(std::span<const Word> in, std::span<Word> out, bool transpose) const;

  BlackBoxPtr base_;
  FieldPoly poly_;
  unsigned power_;
};

/// lambda*I - A
class ShiftedOperator final : public BlackBox {
 public:
  ShiftedOperator(BlackBoxPtr base, Word lambda);

  std::size_t dimension() const override { return base_->dimension(); }
  const PrimeField& field() const override { return base_->field(); }
  void apply(std::span<const Word> in, std::span<Word> out) const override;
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override;
  double cost() const override { return base_->cost() + 2.0 * static_cast<double>(dimension()); }
  using BlackBox::apply;

 private:
  BlackBoxPtr base_;
  Word lambda_;
};

/// A + U*V with U n x r and V r x n (dense, row-major).
class LowRankPerturbation final : public BlackBox {
 public:
  LowRankPerturbation(BlackBoxPtr base, std::size_t rank, std::vector<Word> u, std::vector<Word> v);
  static std::shared_ptr<LowRankPerturbation> random(BlackBoxPtr base, std::size_t rank, Rng& rng);

  std::size_t dimension() const override { return base_->dimension(); }
  const PrimeField& field() const override { return base_->field(); }
  void apply(std::span<const Word> in, std::span<Word> out) const override;
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override;
  double cost() const override {
    return base_->cost() + 4.0 * static_cast<double>(rank_ * dimension());
  }
  using BlackBox::apply;

 private:
  BlackBoxPtr base_;
  std::size_t rank_;
  std::vector<Word> u_;  // n x r
  std::vector<Word> v_;  // r x n
};

/// Diagonal scaling D (n applies cost).
class DiagonalOperator final : public BlackBox {
 public:
  DiagonalOperator(const PrimeField& f, std::vector<Word> diag);
  static std::shared_ptr<DiagonalOperator> random_nonsingular(const PrimeField& f, std::size_t n, Rng& rng);

  std::size_t dimension() const override { return diag_.size(); }
  const PrimeField& field() const override { return field_; }
  void apply(std::span<const Word> in, std::span<Word> out) const override;
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override { apply(in, out); }
  double cost() const override { return static_cast<double>(diag_.size()); }
  using BlackBox::apply;

  Word determinant() const;

 private:
  PrimeField field_;
  std::vector<Word> diag_;
};

/// A^T
class TransposeOperator final : public BlackBox {
 public:
  explicit TransposeOperator(BlackBoxPtr base) : base_(std::move(base)) {}

  std::size_t dimension() const override { return base_->dimension(); }
  const PrimeField& field() const override { return base_->field(); }
  void apply(std::span<const Word> in, std::span<Word> out) const override { base_->apply_transpose(in, out); }
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override { base_->apply(in, out); }
  double cost() const override { return base_->cost(); }
  using BlackBox::apply;

 private:
  BlackBoxPtr base_;
};

/// factors[0] * factors[1] * ... (rightmost applied first).
class ProductOperator final : public BlackBox {
 public:
  explicit ProductOperator(std::vector<BlackBoxPtr> factors);

  std::size_t dimension() const override { return factors_.front()->dimension(); }
  const PrimeField& field() const override { return factors_.front()->field(); }
  void apply(std::span<const Word> in, std::span<Word> out) const override;
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override;
  double cost() const override;
  using BlackBox::apply;

 private:
  std::vector<BlackBoxPtr> factors_;
};

/// Forwards to a base operator and counts applies (instrumentation).
class CountingOperator final : public BlackBox {
 public:
  explicit CountingOperator(BlackBoxPtr base) : base_(std::move(base)) {}

  std::size_t dimension() const override { return base_->dimension(); }
  const PrimeField& field() const override { return base_->field(); }
  void apply(std::span<const Word> in, std::span<Word> out) const override {
    ++count_;
    base_->apply(in, out);
  }
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override {
    ++count_;
    base_->apply_transpose(in, out);
  }
  double cost() const override { return base_->cost(); }
  std::optional<Word> diagonal_trace() const override { return base_->diagonal_trace(); }
  using BlackBox::apply;

  std::size_t count() const { return count_.load(); }
  void reset() const { count_ = 0; }

 private:
  BlackBoxPtr base_;
  mutable std::atomic<std::size_t> count_{0};
};

/// Companion matrix of a monic P: ones on the subdiagonal, -a_i in the last column.
SparseMatrix build_companion(const FieldPoly& p);

/// J_{P^k}: k companion blocks of P with a single 1 coupling each block to the next.
SparseMatrix build_block_jordan(const FieldPoly& p, unsigned k);

/// Block-diagonal assembly.
SparseMatrix block_diagonal(const std::vector<SparseMatrix>& blocks);

/// Random matrix with about `per_row` nonzeros in each row.
SparseMatrix random_sparse(const PrimeField& f, std::size_t n, std::size_t per_row, Rng& rng);

}  // namespace bbc
