#include "bbc/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

namespace bbc {

Method parse_method(const std::string& name) {
  if (name == "auto") return Method::Auto;
  if (name == "nullity-comb") return Method::NullityComb;
  if (name == "index") return Method::Index;
  if (name == "hybrid") return Method::Hybrid;
  if (name == "invfact") return Method::InvFact;
  throw InputError("unknown method '" + name + "'");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Auto: return "auto";
    case Method::NullityComb: return "nullity-comb";
    case Method::Index: return "index";
    case Method::Hybrid: return "hybrid";
    case Method::InvFact: return "invfact";
  }
  return "auto";
}

WiedemannOptions AdaptiveConfig::wiedemann() const {
  WiedemannOptions w;
  w.confidence_rounds = confidence_rounds;
  w.jobs = jobs;
  return w;
}

void ExplainLog::event(const std::string& kind, nlohmann::json fields) {
  fields["event"] = kind;
  if (sink_) *sink_ << fields.dump() << '\n' << std::flush;
  events_.push_back(std::move(fields));
}

namespace {

void note(ExplainLog* log, const std::string& kind, nlohmann::json fields = nlohmann::json::object()) {
  if (log) log->event(kind, std::move(fields));
}

std::vector<std::size_t> unresolved_indices(const std::vector<FactorProfile>& profiles) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < profiles.size(); ++i)
    if (!profiles[i].mult) out.push_back(i);
  return out;
}

std::vector<unsigned> current_mults(const std::vector<FactorProfile>& profiles) {
  std::vector<unsigned> m;
  for (const auto& p : profiles) m.push_back(p.mult.value_or(0));
  return m;
}

FieldPoly known_product(const PrimeField& f, const std::vector<FactorProfile>& profiles) {
  FieldPoly q = FieldPoly::constant(f, 1);
  for (const auto& p : profiles)
    if (p.mult) q = q * pow(p.factor, *p.mult);
  return q;
}

std::vector<std::uint64_t> draw_seeds(Rng& rng, std::size_t k) {
  std::vector<std::uint64_t> s(k);
  for (auto& x : s) x = rng();
  return s;
}

unsigned invfact_reps(const AdaptiveConfig& cfg, const PrimeField& f, std::size_t n) {
  if (cfg.invfact_repetitions) return cfg.invfact_repetitions;
  const double p = static_cast<double>(f.modulus());
  return p > 2.0 * static_cast<double>(n) * static_cast<double>(n) ? 2 : 4;
}

}  // namespace

std::vector<unsigned> nullity_comb_search(const BlackBoxPtr& a, std::vector<FactorProfile>& profiles,
                                          const AdaptiveConfig& cfg, Rng& rng, ExplainLog* log,
                                          OccurrenceTable* table_out) {
  const std::size_t n = a->dimension();
  const auto todo = unresolved_indices(profiles);
  std::size_t total = 0;
  for (const auto& p : profiles) total += static_cast<std::size_t>(p.degree) * p.mult.value_or(p.min_mult);
  if (total == n) {
    for (std::size_t i : todo) profiles[i].mult = profiles[i].min_mult;
    return current_mults(profiles);
  }
  struct Slot {
    std::size_t i;
    unsigned j;
  };
  std::vector<Slot> slots;
  for (std::size_t i : todo)
    for (unsigned j = 1; j <= profiles[i].min_mult; ++j) slots.push_back({i, j});
  std::stable_sort(slots.begin(), slots.end(), [&](const Slot& x, const Slot& y) {
    return x.j * profiles[x.i].degree < y.j * profiles[y.i].degree;
  });
  std::vector<unsigned> frontier(profiles.size(), 0);
  std::size_t popped = 0;
  while (slots.size() - popped > cfg.threshold) {
    const Slot s = slots[popped++];
    frontier[s.i] = std::max(frontier[s.i], s.j);
  }
  // Nullities nu_{i,1..J_i+1} (capped at e_i) for every unresolved factor.
  std::vector<Slot> tasks;
  for (std::size_t i : todo) {
    const unsigned upto = std::min(frontier[i] + 1, profiles[i].min_mult);
    for (unsigned j = 1; j <= upto; ++j) tasks.push_back({i, j});
  }
  note(log, "nullity_plan", {{"threshold", cfg.threshold},
                             {"slots", slots.size()},
                             {"popped", popped},
                             {"rank_calls", tasks.size()}});
  const auto wopt = cfg.wiedemann();
  OccurrenceTable table(profiles.size());
  for (int attempt = 0;; ++attempt) {
    const auto seeds = draw_seeds(rng, tasks.size());
    std::vector<std::size_t> nus(tasks.size());
    parallel_for(tasks.size(), cfg.jobs, [&](std::size_t t) {
      Rng local(seeds[t]);
      WiedemannOptions w = wopt;
      w.jobs = 1;
      nus[t] = nullity(a, profiles[tasks[t].i].factor, tasks[t].j, local, w);
    });
    table = OccurrenceTable(profiles.size());
    for (std::size_t t = 0; t < tasks.size(); ++t) table[tasks[t].i].nullities.push_back(nus[t]);
    try {
      for (std::size_t i : todo) {
        auto& entry = table[i];
        entry.occurrences = nullities_to_occurrences(entry.nullities, profiles[i].degree);
        note(log, "nullities", {{"factor", profiles[i].factor.to_string()},
                                {"nu", entry.nullities},
                                {"occurrences", entry.occurrences}});
      }
      SearchOptions sopt;
      sopt.explosion_cap = cfg.explosion_cap;
      SearchStats stats;
      auto cand = combinatorial_search(a, profiles, table, rng, sopt, &stats, wopt);
      note(log, "combinatorial_search", {{"candidates", stats.candidates},
                                         {"determinants", stats.determinants},
                                         {"lambdas", stats.lambdas}});
      for (std::size_t i : todo) profiles[i].mult = cand.mult[i];
      if (table_out) *table_out = table;
      return current_mults(profiles);
    } catch (const InconsistentNullity& e) {
      note(log, "inconsistent_nullity", {{"attempt", attempt}, {"what", e.what()}});
      if (attempt >= 2) throw;
    }
  }
}

std::optional<IndexCalculusSetup> index_calculus_setup(const PrimeField& f, std::size_t n) {
  auto p = index_calculus_prime(f.modulus(), n);
  if (!p) return std::nullopt;
  return IndexCalculusSetup{DlogContext(f), *p};
}

double hybrid_cost(std::size_t m, std::size_t n, double omega, std::size_t tau) {
  const double md = static_cast<double>(m);
  return 2.0 * md * static_cast<double>(n) * omega + (2.0 / 3.0) * md * md * md +
         4.0 * md * md * static_cast<double>(tau);
}

namespace {

// Multiplicity vectors for `which` with m_i >= e_i and weighted sum <= budget.
// Returns false once more than `cap` assignments exist.
bool enumerate_prefix(const std::vector<FactorProfile>& profiles, const std::vector<std::size_t>& which,
                      std::size_t budget, std::size_t cap, std::vector<std::vector<unsigned>>* out,
                      std::size_t* count) {
  std::vector<unsigned> cur(which.size());
  *count = 0;
  bool ok = true;
  auto rec = [&](auto&& self, std::size_t s, std::size_t left) -> void {
    if (!ok) return;
    if (s == which.size()) {
      if (++*count > cap) {
        ok = false;
        return;
      }
      if (out) out->push_back(cur);
      return;
    }
    const auto& pr = profiles[which[s]];
    for (std::size_t m = pr.min_mult; m * pr.degree <= left && ok; ++m) {
      cur[s] = static_cast<unsigned>(m);
      self(self, s + 1, left - m * pr.degree);
    }
  };
  rec(rec, 0, budget);
  return ok;
}

}  // namespace

std::vector<unsigned> hybrid_multiplicities(const BlackBoxPtr& a, std::vector<FactorProfile>& profiles,
                                            const AdaptiveConfig& cfg, const IndexCalculusSetup& ic, Rng& rng,
                                            ExplainLog* log) {
  const std::size_t n = a->dimension();
  const PrimeField& f = a->field();
  const auto wopt = cfg.wiedemann();
  // (a) degree-one simple factors by nullity
  std::vector<std::size_t> simple;
  for (std::size_t i : unresolved_indices(profiles))
    if (profiles[i].degree == 1 && profiles[i].min_mult == 1) simple.push_back(i);
  {
    const auto seeds = draw_seeds(rng, simple.size());
    std::vector<unsigned> ms(simple.size());
    parallel_for(simple.size(), cfg.jobs, [&](std::size_t t) {
      Rng local(seeds[t]);
      WiedemannOptions w = wopt;
      w.jobs = 1;
      ms[t] = nullity_multiplicity(a, profiles[simple[t]].factor, 1, local, w);
    });
    for (std::size_t t = 0; t < simple.size(); ++t) profiles[simple[t]].mult = ms[t];
  }
  note(log, "hybrid_nullity", {{"factors", simple.size()}});
  // (b) split the rest
  auto rest = unresolved_indices(profiles);
  if (rest.empty()) return current_mults(profiles);
  std::stable_sort(rest.begin(), rest.end(),
                   [&](std::size_t x, std::size_t y) { return profiles[x].degree > profiles[y].degree; });
  const FieldPoly q_known = known_product(f, profiles);
  const std::size_t known_deg = static_cast<std::size_t>(std::max(0, q_known.degree()));
  if (known_deg > n) throw InconsistentNullity("resolved factors exceed the dimension");
  const std::size_t n_rest = n - known_deg;
  const double omega = a->cost();
  const std::size_t max_s = std::min<std::size_t>(cfg.hybrid_max_split, rest.size() - 1);
  std::size_t best_s = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t best_tau = 1;
  nlohmann::json costs = nlohmann::json::array();
  for (std::size_t s = 0; s <= max_s; ++s) {
    std::size_t floor_rest = 0;
    for (std::size_t t = s; t < rest.size(); ++t) floor_rest += profiles[rest[t]].degree * profiles[rest[t]].min_mult;
    if (floor_rest > n_rest) break;
    std::vector<std::size_t> prefix(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(s));
    std::size_t tau = 0;
    if (!enumerate_prefix(profiles, prefix, n_rest - floor_rest, cfg.hybrid_tau_cap, nullptr, &tau)) break;
    const double c = hybrid_cost(rest.size() - s, n, omega, tau);
    costs.push_back({{"s", s}, {"tau", tau}, {"cost", c}});
    if (c < best_cost) {
      best_cost = c;
      best_s = s;
      best_tau = tau;
    }
  }
  note(log, "hybrid_split", {{"s", best_s}, {"tau", best_tau}, {"unknowns", rest.size() - best_s}, {"costs", costs}});
  std::vector<std::size_t> enumerated(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(best_s));
  std::vector<std::size_t> unknown(rest.begin() + static_cast<std::ptrdiff_t>(best_s), rest.end());
  std::size_t floor_rest = 0;
  for (std::size_t i : unknown) floor_rest += profiles[i].degree * profiles[i].min_mult;
  std::vector<std::vector<unsigned>> assignments;
  std::size_t tau = 0;
  enumerate_prefix(profiles, enumerated, n_rest - floor_rest, cfg.hybrid_tau_cap, &assignments, &tau);
  // (c) one system for the unknowns, one right-hand side per assignment
  FieldPoly avoid = q_known;
  for (std::size_t i : enumerated) avoid = avoid * profiles[i].factor;
  std::vector<FieldPoly> unknown_factors;
  for (std::size_t i : unknown) unknown_factors.push_back(profiles[i].factor);
  auto sys = build_index_calculus_system(unknown_factors, avoid, ic.ctx, ic.p, n + 1, rng);
  note(log, "index_calculus_rows", {{"k", unknown.size()}, {"rows", sys.generated}, {"full_rank", sys.full_rank}});
  if (!sys.full_rank) throw NotCertified("hybrid: index-calculus system rank deficient");
  const std::size_t k = unknown.size();
  const auto seeds = draw_seeds(rng, k);
  std::vector<std::optional<std::uint64_t>> logs(k);
  parallel_for(k, cfg.jobs, [&](std::size_t t) {
    Rng local(seeds[t]);
    WiedemannOptions w = wopt;
    w.jobs = 1;
    logs[t] = log_det_shifted(a, sys.lambdas[t], ic.ctx, ic.p, local, w);
  });
  std::vector<std::uint64_t> base(k);
  std::vector<std::vector<std::uint64_t>> enum_logs(k, std::vector<std::uint64_t>(enumerated.size()));
  for (std::size_t l = 0; l < k; ++l) {
    if (!logs[l]) throw NotCertified("hybrid: zero determinant at a non-root");
    const std::uint64_t lq = ic.ctx.log(q_known(sys.lambdas[l])) % ic.p;
    base[l] = (*logs[l] + ic.p - lq) % ic.p;
    for (std::size_t t = 0; t < enumerated.size(); ++t)
      enum_logs[l][t] = ic.ctx.log(profiles[enumerated[t]].factor(sys.lambdas[l])) % ic.p;
  }
  auto lu = LuModPrime::factor(ic.p, sys.rows);
  if (!lu) throw NotCertified("hybrid: singular system");
  const Word tr = trace(*a);
  std::vector<std::vector<unsigned>> survivors;
  ModPrime mp(ic.p);
  for (const auto& asg : assignments) {
    std::vector<std::uint64_t> rhs = base;
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t t = 0; t < enumerated.size(); ++t)
        rhs[l] = mp.sub(rhs[l], mp.mul(asg[t] % ic.p, enum_logs[l][t]));
    const auto x = lu->solve(rhs);
    std::vector<unsigned> full = current_mults(profiles);
    bool ok = true;
    for (std::size_t t = 0; t < enumerated.size(); ++t) full[enumerated[t]] = asg[t];
    for (std::size_t j = 0; j < k && ok; ++j) {
      ok = x[j] >= profiles[unknown[j]].min_mult && x[j] <= n;
      full[unknown[j]] = static_cast<unsigned>(x[j]);
    }
    // (d) total-degree test, with the trace identity as a free extra filter
    if (ok && degree_trace_residual(profiles, full, n, tr).zero()) survivors.push_back(std::move(full));
  }
  note(log, "hybrid_survivors", {{"assignments", assignments.size()}, {"survivors", survivors.size()}});
  for (int round = 0; survivors.size() > 1 && round < 8; ++round) {
    Word lambda = f.random(rng);
    ShiftedOperator shifted(a, lambda);
    const Word delta = det_blackbox(shifted, rng, wopt);
    std::erase_if(survivors, [&](const std::vector<unsigned>& m) {
      return expand_profiles(f, profiles, m)(lambda) != delta;
    });
    note(log, "hybrid_discriminate", {{"lambda", lambda}, {"survivors", survivors.size()}});
  }
  if (survivors.size() != 1) throw NotCertified("hybrid: " + std::to_string(survivors.size()) + " assignments survive");
  for (std::size_t i : rest) profiles[i].mult = survivors.front()[i];
  return current_mults(profiles);
}

FieldPoly invariant_factor(const BlackBoxPtr& a, unsigned j, const FieldPoly& minpoly, Rng& rng,
                           const AdaptiveConfig& cfg, const FieldPoly* previous) {
  if (j <= 1) return minpoly;
  const std::size_t n = a->dimension();
  if (j > n) return FieldPoly::constant(a->field(), 1);
  const unsigned reps = invfact_reps(cfg, a->field(), n);
  const auto wopt = cfg.wiedemann();
  for (int attempt = 0; attempt < 4; ++attempt) {
    const auto seeds = draw_seeds(rng, reps);
    std::vector<FieldPoly> mins(reps, FieldPoly(a->field()));
    parallel_for(reps, cfg.jobs, [&](std::size_t r) {
      Rng local(seeds[r]);
      WiedemannOptions w = wopt;
      w.jobs = 1;
      auto pert = LowRankPerturbation::random(a, j - 1, local);
      mins[r] = wiedemann_minpoly(*pert, local, w);
    });
    FieldPoly g = minpoly;
    for (const auto& m : mins) g = gcd(g, m);
    if (previous && !divides(g, *previous)) continue;
    return g;
  }
  throw NotCertified("invariant factor " + std::to_string(j) + " failed the divisibility chain");
}

namespace {

bool ic_multiplicities(const BlackBoxPtr& a, std::vector<FactorProfile>& profiles,
                       const IndexCalculusSetup& ic, const AdaptiveConfig& cfg, Rng& rng, ExplainLog* log) {
  const auto todo = unresolved_indices(profiles);
  const FieldPoly q = known_product(a->field(), profiles);
  for (int attempt = 0; attempt < 2; ++attempt) {
    auto res = index_calculus(a, profiles, todo, q, ic.ctx, ic.p, rng, cfg.wiedemann());
    note(log, "index_calculus", {{"k", todo.size()},
                                 {"rows", res.rows},
                                 {"determinants", res.determinants},
                                 {"lambdas", res.lambdas},
                                 {"ok", res.ok},
                                 {"failure", res.failure}});
    if (res.ok) {
      for (std::size_t t = 0; t < todo.size(); ++t) profiles[todo[t]].mult = res.mult[t];
      return true;
    }
  }
  return false;
}

void fallback_nullity(const BlackBoxPtr& a, std::vector<FactorProfile>& profiles, AdaptiveConfig cfg, Rng& rng,
                      ExplainLog* log) {
  note(log, "fallback", {{"method", "nullity-comb"}});
  cfg.explosion_cap = std::numeric_limits<std::size_t>::max();
  nullity_comb_search(a, profiles, cfg, rng, log);
}

void invfact_path(const BlackBoxPtr& a, std::vector<FactorProfile>& profiles, const FieldPoly& f1,
                  const std::optional<IndexCalculusSetup>& ic, const AdaptiveConfig& cfg, Rng& rng,
                  ExplainLog* log) {
  const std::size_t n = a->dimension();
  const auto limit = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<std::size_t> s = unresolved_indices(profiles);
  for (std::size_t i : s) profiles[i].lower_bound = profiles[i].min_mult;
  FieldPoly prev = f1;
  std::size_t iterations = 0;
  for (unsigned j = 2; s.size() > limit; ++j) {
    if (++iterations > limit) throw Error("invariant-factor loop exceeded ceil(sqrt(n)) iterations");
    FieldPoly fj = invariant_factor(a, j, f1, rng, cfg, &prev);
    std::vector<std::size_t> keep;
    for (std::size_t i : s) {
      const unsigned alpha = fj.degree() > 0 ? multiplicity_in(profiles[i].factor, fj) : 0;
      if (alpha == 0) {
        profiles[i].mult = profiles[i].lower_bound;
      } else {
        profiles[i].lower_bound += alpha;
        keep.push_back(i);
      }
    }
    s = std::move(keep);
    note(log, "invariant_factor", {{"j", j}, {"degree", fj.degree()}, {"remaining", s.size()}});
    prev = std::move(fj);
  }
  if (s.empty()) return;
  if (!ic || (cfg.method == Method::Auto && s.size() <= cfg.threshold)) {
    note(log, "invfact_finish", {{"method", "nullity-comb"}, {"remaining", s.size()}});
    nullity_comb_search(a, profiles, cfg, rng, log);
    return;
  }
  note(log, "invfact_finish", {{"method", "index"}, {"remaining", s.size()}});
  if (!ic_multiplicities(a, profiles, *ic, cfg, rng, log)) fallback_nullity(a, profiles, cfg, rng, log);
}

Method choose_method(const std::vector<FactorProfile>& profiles, std::size_t n, bool have_ic, const AdaptiveConfig& cfg,
                     ExplainLog* log) {
  double rank_cost = 0;
  std::size_t k = 0;
  for (const auto& p : profiles) {
    if (p.mult) continue;
    ++k;
    for (unsigned j = 1; j <= p.min_mult; ++j) rank_cost += 4.0 * static_cast<double>(n) * j * p.degree;
  }
  const double nn = static_cast<double>(n);
  const double ic_cost = 2.0 * nn * static_cast<double>(k + 1) + 4.0 * nn * std::ceil(std::sqrt(nn)) * 2.0;
  const Method m = (!have_ic || rank_cost <= ic_cost) ? Method::NullityComb : Method::InvFact;
  note(log, "auto_select", {{"rank_cost", rank_cost},
                            {"index_cost", have_ic ? nlohmann::json(ic_cost) : nlohmann::json(nullptr)},
                            {"method", method_name(m)}});
  (void)cfg;
  return m;
}

}  // namespace

CharpolyResult charpoly_from_minpoly(const BlackBoxPtr& a, const FieldPoly& minpoly, const AdaptiveConfig& cfg,
                                     Rng& rng, ExplainLog* log) {
  const std::size_t n = a->dimension();
  const PrimeField& f = a->field();
  CharpolyResult res{minpoly, minpoly, {}, cfg.method};
  Factorization fac = factor(minpoly, rng);
  res.profiles = make_profiles(fac);
  nlohmann::json facs = nlohmann::json::array();
  for (const auto& p : res.profiles) facs.push_back({{"factor", p.factor.to_string()}, {"e", p.min_mult}});
  note(log, "minpoly_factors", {{"degree", minpoly.degree()}, {"factors", facs}});
  if (minpoly.degree() == static_cast<int>(n)) {
    for (auto& p : res.profiles) p.mult = p.min_mult;
    res.method = Method::Auto;
    return res;
  }
  std::optional<IndexCalculusSetup> ic;
  const bool ic_possible = index_calculus_prime(f.modulus(), n).has_value();
  auto need_ic = [&]() -> const IndexCalculusSetup& {
    if (!ic) ic = index_calculus_setup(f, n);
    if (!ic) throw InputError("index calculus needs a prime p > n dividing q - 1; GF(" +
                              std::to_string(f.modulus()) + ") has none");
    return *ic;
  };
  Method method = cfg.method;
  if (method == Method::Auto) method = choose_method(res.profiles, n, ic_possible, cfg, log);
  res.method = method;
  switch (method) {
    case Method::NullityComb:
      try {
        nullity_comb_search(a, res.profiles, cfg, rng, log);
      } catch (const SearchTooLarge& e) {
        note(log, "search_too_large", {{"what", e.what()}});
        if (!ic_possible) throw;
        res.method = Method::Hybrid;
        hybrid_multiplicities(a, res.profiles, cfg, need_ic(), rng, log);
      }
      break;
    case Method::Index:
      if (!ic_multiplicities(a, res.profiles, need_ic(), cfg, rng, log))
        fallback_nullity(a, res.profiles, cfg, rng, log);
      break;
    case Method::Hybrid: {
      const auto& setup = need_ic();
      bool done = false;
      for (int attempt = 0; attempt < 2 && !done; ++attempt) {
        auto saved = res.profiles;
        try {
          hybrid_multiplicities(a, res.profiles, cfg, setup, rng, log);
          done = true;
        } catch (const NotCertified& e) {
          note(log, "hybrid_failed", {{"what", e.what()}});
          res.profiles = std::move(saved);
        }
      }
      if (!done) fallback_nullity(a, res.profiles, cfg, rng, log);
      break;
    }
    case Method::InvFact:
    case Method::Auto:
      if (ic_possible) need_ic();
      invfact_path(a, res.profiles, minpoly, ic, cfg, rng, log);
      break;
  }
  std::vector<unsigned> mult = current_mults(res.profiles);
  res.charpoly = expand_profiles(f, res.profiles, mult);
  return res;
}

bool check_charpoly_field(const BlackBoxPtr& a, const FieldPoly& c, Rng& rng, const WiedemannOptions& wopt,
                          ExplainLog* log) {
  const std::size_t n = a->dimension();
  const PrimeField& f = a->field();
  bool ok = c.degree() == static_cast<int>(n) && c.is_monic() && c.coeff(n - 1) == f.neg(trace(*a));
  const Word lambda = f.random(rng);
  Word delta = 0;
  if (ok) {
    ShiftedOperator shifted(a, lambda);
    delta = det_blackbox(shifted, rng, wopt);
    ok = c(lambda) == delta;
  }
  note(log, "verify", {{"ok", ok}, {"lambda", lambda}, {"det", delta}});
  return ok;
}

CharpolyResult blackbox_charpoly_field(const BlackBoxPtr& a, const AdaptiveConfig& cfg, Rng& rng, ExplainLog* log,
                                       const FieldPoly* known_minpoly) {
  const std::size_t n = a->dimension();
  const PrimeField& f = a->field();
  if (n == 0) {
    FieldPoly one = FieldPoly::constant(f, 1);
    return {one, one, {}, cfg.method};
  }
  const auto wopt = cfg.wiedemann();
  for (int attempt = 0; attempt < 3; ++attempt) {
    const FieldPoly f1 = (known_minpoly && attempt == 0) ? *known_minpoly : wiedemann_minpoly(*a, rng, wopt);
    note(log, "minpoly", {{"degree", f1.degree()}, {"attempt", attempt}});
    CharpolyResult res = charpoly_from_minpoly(a, f1, cfg, rng, log);
    if (check_charpoly_field(a, res.charpoly, rng, wopt, log)) return res;
  }
  throw NotCertified("characteristic polynomial failed its final check three times");
}

}  // namespace bbc
