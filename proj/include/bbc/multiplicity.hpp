#pragma once

// Multiplicity recovery for the irreducible factors of the minimal
// polynomial: nullities, combinatorial search and index calculus.

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "bbc/blackbox.hpp"
#include "bbc/poly.hpp"
#include "bbc/wiedemann.hpp"

namespace bbc {

struct FactorProfile {
  FieldPoly factor;          // monic irreducible
  unsigned degree = 0;       // d_i
  unsigned min_mult = 0;     // e_i, multiplicity in the minimal polynomial
  std::optional<unsigned> mult;  // m_i once known
  Word trace_coeff = 0;      // coefficient of X^{d_i - 1}
  unsigned lower_bound = 0;  // m_i >= lower_bound when partially resolved

  static FactorProfile make(const FieldPoly& p, unsigned e);
};

/// Profiles from a factored minimal polynomial.
std::vector<FactorProfile> make_profiles(const Factorization& minpoly);

/// Nullities nu_{i,1..J} and the occurrence counts they determine.
class OccurrenceTable {
 public:
  struct Entry {
    std::vector<std::size_t> nullities;   // nullities[j-1] = nu_j
    std::vector<std::uint64_t> occurrences;  // occurrences[j-1] = n_j, j < nullities.size()
  };

  explicit OccurrenceTable(std::size_t factors = 0) : entries_(factors) {}

  std::size_t size() const { return entries_.size(); }
  Entry& operator[](std::size_t i) { return entries_[i]; }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  /// Largest j whose nullity is known (0 if none).
  std::size_t frontier(std::size_t i) const { return entries_[i].nullities.size(); }

  nlohmann::json to_json(const std::vector<FactorProfile>& profiles) const;

 private:
  std::vector<Entry> entries_;
};

/// Multiplicities together with one block layout realizing them.
struct CandidateAssignment {
  std::vector<unsigned> mult;                     // m_i
  std::vector<std::vector<std::uint64_t>> occurrences;  // occurrences[i][j-1] = n_{i,j}
};

/// m = (n - rank(P^e(A))) / deg P. Retries the rank once on a non-divisible nullity.
unsigned nullity_multiplicity(const BlackBoxPtr& a, const FieldPoly& p, unsigned e, Rng& rng,
                              const WiedemannOptions& opt = {});

/// nu(P^j(A)) for one j.
std::size_t nullity(const BlackBoxPtr& a, const FieldPoly& p, unsigned j, Rng& rng,
                    const WiedemannOptions& opt = {});

/// Occurrence counts n_1..n_{J-1} from consecutive nullities nu_1..nu_J.
/// Throws InconsistentNullity on a non-integral or negative count.
std::vector<std::uint64_t> nullities_to_occurrences(const std::vector<std::size_t>& nu, unsigned d);

/// n_e from nu_e and n_1..n_{e-1}, for the top index e of the minimal polynomial.
std::uint64_t terminal_occurrence(std::size_t nu_e, unsigned d, unsigned e,
                                  const std::vector<std::uint64_t>& lower);

/// (sum d_i m_i - n, sum t_i m_i + Tr(A)) with the trace gap in GF(p).
struct Residual {
  long long degree_gap = 0;
  Word trace_gap = 0;
  bool zero() const { return degree_gap == 0 && trace_gap == 0; }
};
Residual degree_trace_residual(const std::vector<FactorProfile>& profiles,
                               const std::vector<unsigned>& mult, std::size_t n, Word trace);

struct SearchOptions {
  std::size_t explosion_cap = 1'000'000;
  unsigned max_discriminations = 64;
};

struct SearchStats {
  std::size_t candidates = 0;
  std::size_t determinants = 0;
  std::vector<Word> lambdas;
};

/// Interval of multiplicities m_i compatible with the table entry for factor i.
std::pair<unsigned, unsigned> multiplicity_range(const FactorProfile& prof,
                                                 const OccurrenceTable::Entry& entry,
                                                 std::size_t n);

/// All multiplicity vectors meeting the degree and trace equations and the
/// per-factor ranges. Throws SearchTooLarge above the cap.
std::vector<std::vector<unsigned>> enumerate_candidates(const std::vector<FactorProfile>& profiles,
                                                        const OccurrenceTable& known, std::size_t n,
                                                        Word trace, std::size_t cap);

/// Degree/trace enumeration followed by determinant discrimination at random points.
CandidateAssignment combinatorial_search(const BlackBoxPtr& a, const std::vector<FactorProfile>& profiles,
                                         const OccurrenceTable& known, Rng& rng,
                                         const SearchOptions& opt = {}, SearchStats* stats = nullptr,
                                         const WiedemannOptions& wopt = {});

/// Gaussian elimination over Z/pZ for a prime p (p = 2 allowed).
class ModPrime {
 public:
  explicit ModPrime(std::uint64_t p) : p_(p) {}
  std::uint64_t modulus() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t inv(std::uint64_t a) const;

 private:
  std::uint64_t p_;
};

/// Row echelon form grown one row at a time; reports whether each row was independent.
class IncrementalEchelon {
 public:
  IncrementalEchelon(std::uint64_t p, std::size_t cols) : mod_(p), cols_(cols) {}
  bool add_row(const std::vector<std::uint64_t>& row);
  std::size_t rank() const { return pivots_.size(); }

 private:
  ModPrime mod_;
  std::size_t cols_;
  std::vector<std::vector<std::uint64_t>> rows_;  // reduced, pivot entry 1
  std::vector<std::size_t> pivots_;
};

/// PLU factorization of a square matrix mod p, reusable across right-hand sides.
class LuModPrime {
 public:
  /// Returns nullopt when the matrix is singular mod p.
  static std::optional<LuModPrime> factor(std::uint64_t p, std::vector<std::vector<std::uint64_t>> m);
  std::vector<std::uint64_t> solve(const std::vector<std::uint64_t>& b) const;
  std::size_t size() const { return lu_.size(); }

 private:
  explicit LuModPrime(std::uint64_t p) : mod_(p) {}
  ModPrime mod_;
  std::vector<std::vector<std::uint64_t>> lu_;
  std::vector<std::size_t> perm_;
};

struct IndexCalculusResult {
  bool ok = false;
  std::vector<unsigned> mult;  // parallel to the unresolved index set
  std::size_t rows = 0;        // rows of H generated
  std::size_t determinants = 0;
  std::vector<Word> lambdas;
  std::string failure;
};

/// Rows h_{l,j} = (log P_j(lambda_l) mod (q-1)) mod p over the unresolved set.
struct IndexCalculusSystem {
  std::vector<std::vector<std::uint64_t>> rows;  // the first k independent rows
  std::vector<Word> lambdas;                     // their sample points
  std::size_t generated = 0;                     // rows drawn in total
  bool full_rank = false;
};

IndexCalculusSystem build_index_calculus_system(const std::vector<FieldPoly>& factors, const FieldPoly& q_known,
                                                const DlogContext& ctx, std::uint64_t p, std::size_t max_rows,
                                                Rng& rng);

/// Solve for the multiplicities of `unresolved` given the known product Q.
/// A must be defined over GF(q) = ctx.field() and p must divide q-1 with p > n.
IndexCalculusResult index_calculus(const BlackBoxPtr& a, const std::vector<FactorProfile>& profiles,
                                   const std::vector<std::size_t>& unresolved, const FieldPoly& q_known,
                                   const DlogContext& ctx, std::uint64_t p, Rng& rng,
                                   const WiedemannOptions& wopt = {});

/// log det(lambda I - A) reduced to (mod q-1) mod p; nullopt if the determinant is zero.
std::optional<std::uint64_t> log_det_shifted(const BlackBoxPtr& a, Word lambda, const DlogContext& ctx,
                                             std::uint64_t p, Rng& rng, const WiedemannOptions& wopt = {});

/// prod P_i^{m_i}
FieldPoly expand_profiles(const PrimeField& f, const std::vector<FactorProfile>& profiles,
                          const std::vector<unsigned>& mult);

}  // namespace bbc
