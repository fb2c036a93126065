#pragma once

// SMS sparse-matrix text format and graphs built from adjacency matrices.
//
//   R C M
//   i j v      (1-based, v a nonzero integer)
//   ...
//   0 0 0

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "bbc/integer.hpp"

namespace bbc {

/// Parse SMS text. Non-square inputs are padded with zeros to max(R, C).
/// Errors are InputError with the offending line number.
IntegerMatrix parse_sms(std::istream& in);
IntegerMatrix parse_sms(const std::string& text);

/// Canonical SMS: "n n M", row-major entries, terminator.
std::string emit_sms(const IntegerMatrix& a);
void write_sms(std::ostream& out, const IntegerMatrix& a);

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  explicit Graph(std::size_t n = 0) : n_(n) {}
  Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

  /// Edges from the nonzero off-diagonal pattern (symmetrized). Diagonal
  /// entries are rejected.
  static Graph from_adjacency(const IntegerMatrix& a);
  IntegerMatrix adjacency() const;

  std::size_t vertices() const { return n_; }
  /// Sorted, u < v, no duplicates.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  bool has_edge(std::size_t u, std::size_t v) const;

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Position of a sorted k-subset of {0..n-1} in lexicographic order.
std::uint64_t subset_rank(const std::vector<std::size_t>& subset, std::size_t n);

/// k-subsets as vertices (lexicographic order), adjacent when their
/// symmetric difference is an edge of g.
Graph symmetric_power(const Graph& g, std::size_t k);

/// m x m rook's graph: cells adjacent when they share a row or a column.
Graph rook_graph(std::size_t m);

}  // namespace bbc
