#pragma once

// Adaptive characteristic-polynomial drivers over GF(p).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bbc/multiplicity.hpp"

namespace bbc {

enum class Method { Auto, NullityComb, Index, Hybrid, InvFact };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct AdaptiveConfig {
  unsigned threshold = 5;                 // T
  std::size_t explosion_cap = 1'000'000;
  std::size_t hybrid_tau_cap = 10'000;
  unsigned hybrid_max_split = 8;
  unsigned confidence_rounds = 2;
  unsigned invfact_repetitions = 0;       // 0 selects by field size
  Method method = Method::Auto;
  std::uint64_t seed = 0;
  unsigned jobs = 1;

  WiedemannOptions wiedemann() const;
};

/// Decision trace, one JSON object per event. Optionally streamed as JSON lines.
class ExplainLog {
 public:
  ExplainLog() = default;
  explicit ExplainLog(std::ostream* sink) : sink_(sink) {}

  void event(const std::string& kind, nlohmann::json fields = nlohmann::json::object());
  const std::vector<nlohmann::json>& events() const { return events_; }

 private:
  std::ostream* sink_ = nullptr;
  std::vector<nlohmann::json> events_;
};

/// Nullities for the cheapest slots until at most T remain,
/// then combinatorial search. Updates profiles[i].mult.
std::vector<unsigned> nullity_comb_search(const BlackBoxPtr& a, std::vector<FactorProfile>& profiles,
                                          const AdaptiveConfig& cfg, Rng& rng, ExplainLog* log = nullptr,
                                          OccurrenceTable* table = nullptr);

/// Index-calculus prime for GF(q) and dimension n, with its dlog context.
struct IndexCalculusSetup {
  DlogContext ctx;
  std::uint64_t p;
};
std::optional<IndexCalculusSetup> index_calculus_setup(const PrimeField& f, std::size_t n);

/// Nullity for degree-one simple factors, enumeration of s factors with a
/// shared elimination for the rest.
std::vector<unsigned> hybrid_multiplicities(const BlackBoxPtr& a, std::vector<FactorProfile>& profiles,
                                            const AdaptiveConfig& cfg, const IndexCalculusSetup& ic, Rng& rng,
                                            ExplainLog* log = nullptr);

/// Cost 2m n Omega + 2/3 m^3 + 4 m^2 tau used to pick the hybrid split.
double hybrid_cost(std::size_t m, std::size_t n, double omega, std::size_t tau);

/// j-th invariant factor via gcd(minpoly(A), minpoly(A + UV)) over rank-(j-1)
/// perturbations. `minpoly` is f_1; `previous` (f_{j-1}) enables the chain check.
FieldPoly invariant_factor(const BlackBoxPtr& a, unsigned j, const FieldPoly& minpoly, Rng& rng,
                           const AdaptiveConfig& cfg, const FieldPoly* previous = nullptr);

struct CharpolyResult {
  FieldPoly charpoly;
  FieldPoly minpoly;
  std::vector<FactorProfile> profiles;  // with mult set
  Method method = Method::Auto;         // method that produced the multiplicities
};

/// Full pipeline over GF(p): minimal polynomial, factorization, multiplicities,
/// then a degree/trace/determinant check (up to three attempts). A known
/// minimal polynomial skips the first Wiedemann run.
CharpolyResult blackbox_charpoly_field(const BlackBoxPtr& a, const AdaptiveConfig& cfg, Rng& rng,
                                       ExplainLog* log = nullptr, const FieldPoly* known_minpoly = nullptr);

/// deg = n, trace identity and det(lambda I - A) = c(lambda) at one random lambda.
bool check_charpoly_field(const BlackBoxPtr& a, const FieldPoly& c, Rng& rng, const WiedemannOptions& wopt = {},
                          ExplainLog* log = nullptr);

/// Same, starting from a known factored minimal polynomial.
CharpolyResult charpoly_from_minpoly(const BlackBoxPtr& a, const FieldPoly& minpoly, const AdaptiveConfig& cfg,
                                     Rng& rng, ExplainLog* log = nullptr);

}  // namespace bbc
