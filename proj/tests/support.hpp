#pragma once

#include <map>
#include <memory>
#include <vector>

#include "bbc/blackbox.hpp"
#include "bbc/integer.hpp"
#include "bbc/poly.hpp"

namespace bbc::testing {

inline FieldPoly poly(const PrimeField& f, std::vector<std::int64_t> c) { return FieldPoly::from_ints(f, c); }

inline FieldPoly random_monic(const PrimeField& f, unsigned d, Rng& rng) {
  std::vector<Word> c(d + 1);
  for (unsigned i = 0; i < d; ++i) c[i] = f.random(rng);
  c[d] = 1;
  return FieldPoly(f, std::move(c));
}

inline FieldPoly random_irreducible(const PrimeField& f, unsigned d, Rng& rng) {
  for (;;) {
    FieldPoly p = random_monic(f, d, rng);
    if (is_irreducible(p)) return p;
  }
}

/// Planted primary form: for each factor, occurrence counts n_1..n_e.
struct PlantedFactor {
  FieldPoly factor;
  std::vector<unsigned> occurrences;  // occurrences[j-1] = n_j
};

inline SparseMatrix primary_form(const std::vector<PlantedFactor>& planted) {
  std::vector<SparseMatrix> blocks;
  for (const auto& pf : planted)
    for (std::size_t j = 1; j <= pf.occurrences.size(); ++j)
      for (unsigned c = 0; c < pf.occurrences[j - 1]; ++c) blocks.push_back(build_block_jordan(pf.factor, j));
  return block_diagonal(blocks);
}

inline FieldPoly planted_charpoly(const PrimeField& f, const std::vector<PlantedFactor>& planted) {
  FieldPoly c = FieldPoly::constant(f, 1);
  for (const auto& pf : planted)
    for (std::size_t j = 1; j <= pf.occurrences.size(); ++j)
      c = c * pow(pf.factor, static_cast<unsigned>(j * pf.occurrences[j - 1]));
  return c;
}

/// Unit triangular T = I + N (N strictly upper or strictly lower); apply solves T x = b.
class UnitTriangularInverse final : public BlackBox {
 public:
  UnitTriangularInverse(std::shared_ptr<const SparseMatrix> t, bool upper) : t_(std::move(t)), upper_(upper) {}
  std::size_t dimension() const override { return t_->dimension(); }
  const PrimeField& field() const override { return t_->field(); }
  void apply(std::span<const Word> in, std::span<Word> out) const override { solve(in, out, upper_); }
  void apply_transpose(std::span<const Word> in, std::span<Word> out) const override {
    // T^T is triangular of the other orientation; solve column-oriented.
    const PrimeField& f = field();
    const std::size_t n = dimension();
    std::vector<Word> x(in.begin(), in.end());
    const auto& off = t_->row_offsets();
    const auto& col = t_->col_indices();
    const auto& val = t_->values();
    if (upper_) {
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = off[r]; k < off[r + 1]; ++k)
          if (col[k] > r) x[col[k]] = f.sub(x[col[k]], f.mul(val[k], x[r]));
    } else {
      for (std::size_t r = n; r-- > 0;)
        for (std::size_t k = off[r]; k < off[r + 1]; ++k)
          if (col[k] < r) x[col[k]] = f.sub(x[col[k]], f.mul(val[k], x[r]));
    }
    std::copy(x.begin(), x.end(), out.begin());
  }
  double cost() const override { return t_->cost(); }
  using BlackBox::apply;

 private:
  void solve(std::span<const Word> in, std::span<Word> out, bool upper) const {
    const PrimeField& f = field();
    const std::size_t n = dimension();
    const auto& off = t_->row_offsets();
    const auto& col = t_->col_indices();
    const auto& val = t_->values();
    auto row = [&](std::size_t r) {
      Word acc = in[r];
      for (std::size_t k = off[r]; k < off[r + 1]; ++k)
        if (col[k] != r) acc = f.sub(acc, f.mul(val[k], out[col[k]]));
      out[r] = acc;
    };
    if (upper)
      for (std::size_t r = n; r-- > 0;) row(r);
    else
      for (std::size_t r = 0; r < n; ++r) row(r);
  }

  std::shared_ptr<const SparseMatrix> t_;
  bool upper_;
};

inline std::shared_ptr<SparseMatrix> random_unit_triangular(const PrimeField& f, std::size_t n, bool upper,
                                                            std::size_t per_row, Rng& rng) {
  std::map<std::pair<std::size_t, std::size_t>, Word> m;
  for (std::size_t i = 0; i < n; ++i) {
    m[{i, i}] = 1;
    for (std::size_t k = 0; k < per_row; ++k) {
      const std::size_t j = rng() % n;
      if ((upper && j > i) || (!upper && j < i)) m[{i, j}] = f.random(rng);
    }
  }
  std::vector<Triple> t;
  for (auto& [rc, v] : m) t.push_back({rc.first, rc.second, v});
  return std::make_shared<SparseMatrix>(f, n, std::move(t));
}

/// L U B U^{-1} L^{-1} for random sparse unit triangular L, U: same
/// similarity class as B, without its block-diagonal layout.
inline BlackBoxPtr conjugated(const SparseMatrix& b, Rng& rng) {
  const PrimeField& f = b.field();
  const std::size_t n = b.dimension();
  auto u = random_unit_triangular(f, n, true, 3, rng);
  auto l = random_unit_triangular(f, n, false, 3, rng);
  auto ui = std::make_shared<UnitTriangularInverse>(u, true);
  auto li = std::make_shared<UnitTriangularInverse>(l, false);
  return std::make_shared<ProductOperator>(
      std::vector<BlackBoxPtr>{l, u, std::make_shared<SparseMatrix>(b), ui, li});
}

inline IntegerMatrix random_integer_matrix(std::size_t n, std::size_t per_row, long lo, long hi, Rng& rng) {
  std::map<std::pair<std::size_t, std::size_t>, long> m;
  std::uniform_int_distribution<long> val(lo, hi);
  std::uniform_int_distribution<std::size_t> col(0, n - 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < per_row; ++k) m[{r, col(rng)}] = val(rng);
  std::vector<IntTriple> t;
  for (auto& [rc, v] : m) t.push_back({rc.first, rc.second, mpz_class(v)});
  return IntegerMatrix(n, std::move(t));
}

inline IntegerMatrix integer_diag(const std::vector<long>& d) {
  std::vector<IntTriple> t;
  for (std::size_t i = 0; i < d.size(); ++i) t.push_back({i, i, mpz_class(d[i])});
  return IntegerMatrix(d.size(), std::move(t));
}

}  // namespace bbc::testing
