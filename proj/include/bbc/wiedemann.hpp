#pragma once

// Wiedemann kernels over a black box: minimal polynomial, rank, determinant, trace.

#include <functional>
#include <span>
#include <vector>

#include "bbc/blackbox.hpp"
#include "bbc/poly.hpp"

namespace bbc {

/// Incremental Berlekamp-Massey over GF(p).
class BerlekampMassey {
 public:
  explicit BerlekampMassey(const PrimeField& f);

  void push(Word s);
  /// Current linear complexity L.
  std::size_t complexity() const { return length_; }
  std::size_t terms() const { return seq_.size(); }
  /// Terms pushed since L last changed.
  std::size_t stable_terms() const { return seq_.size() - last_change_; }
  /// Monic minimal polynomial of the sequence, X^L * C(1/X).
  FieldPoly minpoly() const;

 private:
  PrimeField field_;
  std::vector<Word> seq_;
  std::vector<Word> c_, b_;
  std::size_t length_ = 0;
  std::size_t shift_ = 1;
  Word last_disc_ = 1;
  std::size_t last_change_ = 0;
};

/// Minimal polynomial of a linearly recurrent sequence.
FieldPoly berlekamp_massey(const PrimeField& f, std::span<const Word> seq);

struct WiedemannOptions {
  /// Independent (u, v) projections combined by lcm before certification.
  unsigned confidence_rounds = 2;
  /// Extra rounds allowed when certification fails.
  unsigned max_extra_rounds = 8;
  /// Stop the sequence once L has been stable for 2L+10 terms.
  bool early_termination = false;
  /// Check P(A)w = 0 for fresh random w before returning.
  bool certify = true;
  /// Certification vectors; 0 selects ceil(30 / log2 p).
  unsigned certify_vectors = 0;
  /// Rank: preconditioned repetitions (maximum taken). 0 selects by field size.
  unsigned rank_repetitions = 0;
  /// Determinant: fresh-preconditioner retries. 0 selects by field size.
  unsigned det_retries = 0;
  /// Worker threads for independent batches (determinants, repetitions).
  unsigned jobs = 1;
};

/// Run fn(0..count-1) on up to `jobs` threads. Exceptions are rethrown in
/// index order after all workers finish.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Minimal polynomial of A (Las Vegas up to the certification false-accept
/// probability). Throws NotCertified if certification keeps failing.
FieldPoly wiedemann_minpoly(const BlackBox& a, Rng& rng, const WiedemannOptions& opt = {});

/// Annihilates v?  (P(A)v == 0)
bool annihilates(const BlackBox& a, const FieldPoly& p, std::span<const Word> v);

/// Rank via the minimal polynomial of D1 A^T D2 A D1 (random nonsingular
/// diagonals). Errors are one-sided low; the maximum over repetitions is returned.
std::size_t rank_blackbox(const BlackBox& a, Rng& rng, const WiedemannOptions& opt = {});

/// det(A) from the minimal polynomial of D*A for random diagonal D.
Word det_blackbox(const BlackBox& a, Rng& rng, const WiedemannOptions& opt = {});

/// Trace through the diagonal fast path when available, else n applies.
Word trace(const BlackBox& a);
/// Trace as sum of e_i^T A e_i, always n applies.
Word trace_generic(const BlackBox& a);

}  // namespace bbc
