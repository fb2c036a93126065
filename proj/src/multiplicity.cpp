#include "bbc/multiplicity.hpp"

#include <algorithm>
#include <numeric>

namespace bbc {

FactorProfile FactorProfile::make(const FieldPoly& p, unsigned e) {
  FactorProfile prof{p, static_cast<unsigned>(p.degree()), e, std::nullopt, 0, 0};
  prof.trace_coeff = p.coeff(prof.degree - 1);
  return prof;
}

std::vector<FactorProfile> make_profiles(const Factorization& minpoly) {
  std::vector<FactorProfile> out;
  for (const auto& fp : minpoly.factors) out.push_back(FactorProfile::make(fp.factor, fp.multiplicity));
  return out;
}

nlohmann::json OccurrenceTable::to_json(const std::vector<FactorProfile>& profiles) const {
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    nlohmann::json e;
    e["factor"] = profiles[i].factor.to_string();
    e["degree"] = profiles[i].degree;
    e["e"] = profiles[i].min_mult;
    if (profiles[i].mult) e["m"] = *profiles[i].mult;
    e["nullities"] = entries_[i].nullities;
    e["occurrences"] = entries_[i].occurrences;
    arr.push_back(std::move(e));
  }
  return arr;
}

std::size_t nullity(const BlackBoxPtr& a, const FieldPoly& p, unsigned j, Rng& rng, const WiedemannOptions& opt) {
  PolyOfMatrix pj(a, p, j);
  return a->dimension() - rank_blackbox(pj, rng, opt);
}

unsigned nullity_multiplicity(const BlackBoxPtr& a, const FieldPoly& p, unsigned e, Rng& rng,
                              const WiedemannOptions& opt) {
  const auto d = static_cast<std::size_t>(p.degree());
  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::size_t nu = nullity(a, p, e, rng, opt);
    if (nu % d == 0 && nu > 0) return static_cast<unsigned>(nu / d);
  }
  throw InconsistentNullity("nullity of " + p.to_string() + " not a positive multiple of its degree");
}

std::vector<std::uint64_t> nullities_to_occurrences(const std::vector<std::size_t>& nu, unsigned d) {
  std::vector<std::uint64_t> out;
  if (nu.size() < 2) return out;
  const auto dd = static_cast<long long>(d);
  auto at = [&](std::size_t j) { return j == 0 ? 0LL : static_cast<long long>(nu[j - 1]); };
  long long weighted = 0;  // sum_{k<j} k n_k
  for (std::size_t j = 1; j < nu.size(); ++j) {
    long long num, den;
    if (j == 1) {
      num = 2 * at(1) - at(2);
      den = dd;
    } else {
      const auto jm = static_cast<long long>(j - 1);
      num = at(j - 1) + jm * (at(j) - at(j + 1)) - dd * weighted;
      den = dd * jm;
    }
    if (num < 0 || num % den != 0)
      throw InconsistentNullity("nullities do not determine integral occurrence counts");
    const long long nj = num / den;
    out.push_back(static_cast<std::uint64_t>(nj));
    weighted += static_cast<long long>(j) * nj;
  }
  return out;
}

std::uint64_t terminal_occurrence(std::size_t nu_e, unsigned d, unsigned e, const std::vector<std::uint64_t>& lower) {
  long long weighted = 0;
  for (std::size_t k = 1; k < e && k <= lower.size(); ++k) weighted += static_cast<long long>(k * lower[k - 1]);
  const long long num = static_cast<long long>(nu_e) - static_cast<long long>(d) * weighted;
  const long long den = static_cast<long long>(e) * d;
  if (num <= 0 || num % den != 0) throw InconsistentNullity("terminal occurrence count not a positive integer");
  return static_cast<std::uint64_t>(num / den);
}

Residual degree_trace_residual(const std::vector<FactorProfile>& profiles, const std::vector<unsigned>& mult,
                               std::size_t n, Word trace) {
  Residual r;
  if (profiles.empty()) {
    r.degree_gap = -static_cast<long long>(n);
    r.trace_gap = trace;
    return r;
  }
  const PrimeField& f = profiles.front().factor.field();
  long long deg = 0;
  Word t = trace;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    deg += static_cast<long long>(profiles[i].degree) * mult[i];
    t = f.mul_add(profiles[i].trace_coeff, f.from_uint(mult[i]), t);
  }
  r.degree_gap = deg - static_cast<long long>(n);
  r.trace_gap = t;
  return r;
}

namespace {

struct TailInfo {
  std::size_t frontier;      // J
  std::uint64_t known_sum;   // sum_{k<J} k n_k
  std::uint64_t tail;        // blocks of size >= J
};

TailInfo tail_info(const FactorProfile& prof, const OccurrenceTable::Entry& entry) {
  TailInfo t{entry.nullities.size(), 0, 0};
  for (std::size_t k = 1; k < t.frontier; ++k) t.known_sum += k * entry.occurrences.at(k - 1);
  if (t.frontier == 0) return t;
  const std::size_t nu = entry.nullities.back();
  if (nu % prof.degree) throw InconsistentNullity("nullity not a multiple of the factor degree");
  const std::uint64_t blocks_weight = nu / prof.degree;
  if (blocks_weight < t.known_sum || (blocks_weight - t.known_sum) % t.frontier)
    throw InconsistentNullity("nullity inconsistent with lower occurrence counts");
  t.tail = (blocks_weight - t.known_sum) / t.frontier;
  return t;
}

}  // namespace

std::pair<unsigned, unsigned> multiplicity_range(const FactorProfile& prof, const OccurrenceTable::Entry& entry,
                                                 std::size_t n) {
  const unsigned e = prof.min_mult;
  const auto cap = static_cast<unsigned>(n / prof.degree);
  if (prof.mult) return {*prof.mult, *prof.mult};
  const TailInfo t = tail_info(prof, entry);
  if (t.frontier == 0) {
    const unsigned lo = std::max(e, prof.lower_bound);
    if (lo > cap) throw InconsistentNullity("multiplicity range empty");
    return {lo, cap};
  }
  std::uint64_t lo, hi;
  if (t.frontier > e) {
    if (t.tail != 0) throw InconsistentNullity("blocks larger than the minimal-polynomial exponent");
    lo = hi = t.known_sum;
  } else {
    if (t.tail == 0) throw InconsistentNullity("no block of the minimal-polynomial exponent");
    lo = t.known_sum + e + (t.tail - 1) * t.frontier;
    hi = t.known_sum + t.tail * e;
  }
  hi = std::min<std::uint64_t>(hi, cap);
  lo = std::max<std::uint64_t>(lo, prof.lower_bound);
  if (lo > hi) throw InconsistentNullity("multiplicity range empty");
  return {static_cast<unsigned>(lo), static_cast<unsigned>(hi)};
}

std::vector<std::vector<unsigned>> enumerate_candidates(const std::vector<FactorProfile>& profiles,
                                                        const OccurrenceTable& known, std::size_t n, Word trace,
                                                        std::size_t cap) {
  const std::size_t k = profiles.size();
  std::vector<std::vector<unsigned>> out;
  if (k == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  const PrimeField& f = profiles.front().factor.field();
  std::vector<std::pair<unsigned, unsigned>> range(k);
  for (std::size_t i = 0; i < k; ++i) range[i] = multiplicity_range(profiles[i], known[i], n);
  // Widest contributions first for earlier pruning.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return static_cast<std::uint64_t>(range[a].second - range[a].first) * profiles[a].degree >
           static_cast<std::uint64_t>(range[b].second - range[b].first) * profiles[b].degree;
  });
  std::vector<std::uint64_t> suffix_min(k + 1, 0), suffix_max(k + 1, 0);
  for (std::size_t s = k; s-- > 0;) {
    const auto& pr = profiles[order[s]];
    suffix_min[s] = suffix_min[s + 1] + static_cast<std::uint64_t>(range[order[s]].first) * pr.degree;
    suffix_max[s] = suffix_max[s + 1] + static_cast<std::uint64_t>(range[order[s]].second) * pr.degree;
  }
  std::vector<unsigned> mult(k);
  auto rec = [&](auto&& self, std::size_t s, std::uint64_t remaining, Word tr) -> void {
    if (s == k) {
      // tr accumulates Tr(A) + sum t_i m_i
      if (remaining == 0 && tr == 0) {
        out.push_back(mult);
        if (out.size() > cap) throw SearchTooLarge("combinatorial search exceeded " + std::to_string(cap) + " candidates");
      }
      return;
    }
    const std::size_t i = order[s];
    const std::uint64_t d = profiles[i].degree;
    for (std::uint64_t m = range[i].first; m <= range[i].second; ++m) {
      if (m * d > remaining) break;
      const std::uint64_t rest = remaining - m * d;
      if (rest < suffix_min[s + 1]) break;
      if (rest > suffix_max[s + 1]) continue;
      mult[i] = static_cast<unsigned>(m);
      self(self, s + 1, rest, f.mul_add(profiles[i].trace_coeff, f.from_uint(m), tr));
    }
  };
  rec(rec, 0, n, trace);
  return out;
}

namespace {

std::vector<std::vector<std::uint64_t>> realize(const std::vector<FactorProfile>& profiles, const OccurrenceTable& known,
                                                const std::vector<unsigned>& mult) {
  std::vector<std::vector<std::uint64_t>> occ(profiles.size());
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const unsigned e = profiles[i].min_mult;
    auto& o = occ[i];
    o.assign(e, 0);
    const auto& entry = known[i];
    const TailInfo t = tail_info(profiles[i], entry);
    if (t.frontier == 0 || profiles[i].mult) {
      // Default layout: one block of size e, the rest of size 1.
      o[e - 1] += 1;
      if (mult[i] > e) o[0] += mult[i] - e;
      continue;
    }
    for (std::size_t k = 1; k < t.frontier && k <= e; ++k) o[k - 1] = entry.occurrences[k - 1];
    if (t.frontier > e) continue;
    // tail blocks with sizes in [J, e], one of size e
    std::uint64_t extra = mult[i] - t.known_sum - e - (t.tail - 1) * t.frontier;
    o[e - 1] += 1;
    for (std::uint64_t b = 1; b < t.tail; ++b) {
      const std::uint64_t grow = std::min<std::uint64_t>(extra, e - t.frontier);
      o[t.frontier + grow - 1] += 1;
      extra -= grow;
    }
  }
  return occ;
}

}  // namespace

CandidateAssignment combinatorial_search(const BlackBoxPtr& a, const std::vector<FactorProfile>& profiles,
                                         const OccurrenceTable& known, Rng& rng, const SearchOptions& opt,
                                         SearchStats* stats, const WiedemannOptions& wopt) {
  const std::size_t n = a->dimension();
  const PrimeField& f = a->field();
  const Word tr = trace(*a);
  auto cands = enumerate_candidates(profiles, known, n, tr, opt.explosion_cap);
  if (stats) stats->candidates = cands.size();
  if (cands.empty()) throw InconsistentNullity("no multiplicity assignment satisfies degree and trace");
  unsigned rounds = 0;
  while (cands.size() > 1) {
    if (++rounds > opt.max_discriminations) throw NotCertified("determinant discrimination did not converge");
    Word lambda = 0;
    std::vector<Word> vals(profiles.size());
    bool root = true;
    for (int tries = 0; root && tries < 1000; ++tries) {
      lambda = f.random(rng);
      root = false;
      for (std::size_t i = 0; i < profiles.size() && !root; ++i) {
        vals[i] = profiles[i].factor(lambda);
        root = vals[i] == 0;
      }
    }
    if (root) throw NotCertified("no evaluation point avoids the factor roots");
    ShiftedOperator shifted(a, lambda);
    const Word delta = det_blackbox(shifted, rng, wopt);
    if (stats) {
      ++stats->determinants;
      stats->lambdas.push_back(lambda);
    }
    std::erase_if(cands, [&](const std::vector<unsigned>& m) {
      Word v = 1;
      for (std::size_t i = 0; i < m.size(); ++i) v = f.mul(v, f.pow(vals[i], m[i]));
      return v != delta;
    });
  }
  if (cands.empty()) throw NotCertified("determinant discrimination eliminated every candidate");
  return {cands.front(), realize(profiles, known, cands.front())};
}

std::uint64_t ModPrime::inv(std::uint64_t a) const {
  a %= p_;
  if (a == 0) throw DivisionByZero("inverse of zero mod p");
  std::uint64_t r = 1, b = a, e = p_ - 2;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

bool IncrementalEchelon::add_row(const std::vector<std::uint64_t>& input) {
  std::vector<std::uint64_t> row(cols_);
  for (std::size_t c = 0; c < cols_; ++c) row[c] = input[c] % mod_.modulus();
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::uint64_t coef = row[pivots_[r]];
    if (coef == 0) continue;
    for (std::size_t c = pivots_[r]; c < cols_; ++c) row[c] = mod_.sub(row[c], mod_.mul(coef, rows_[r][c]));
  }
  auto it = std::find_if(row.begin(), row.end(), [](std::uint64_t x) { return x != 0; });
  if (it == row.end()) return false;
  const auto piv = static_cast<std::size_t>(it - row.begin());
  const std::uint64_t inv = mod_.inv(row[piv]);
  for (std::size_t c = piv; c < cols_; ++c) row[c] = mod_.mul(row[c], inv);
  rows_.push_back(std::move(row));
  pivots_.push_back(piv);
  return true;
}

std::optional<LuModPrime> LuModPrime::factor(std::uint64_t p, std::vector<std::vector<std::uint64_t>> m) {
  LuModPrime lu(p);
  const ModPrime& md = lu.mod_;
  const std::size_t k = m.size();
  lu.perm_.resize(k);
  std::iota(lu.perm_.begin(), lu.perm_.end(), 0);
  for (auto& row : m)
    for (auto& x : row) x %= p;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t piv = c;
    while (piv < k && m[piv][c] == 0) ++piv;
    if (piv == k) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(lu.perm_[piv], lu.perm_[c]);
    const std::uint64_t inv = md.inv(m[c][c]);
    for (std::size_t r = c + 1; r < k; ++r) {
      if (m[r][c] == 0) continue;
      const std::uint64_t l = md.mul(m[r][c], inv);
      m[r][c] = l;
      for (std::size_t j = c + 1; j < k; ++j) m[r][j] = md.sub(m[r][j], md.mul(l, m[c][j]));
    }
  }
  lu.lu_ = std::move(m);
  return lu;
}

std::vector<std::uint64_t> LuModPrime::solve(const std::vector<std::uint64_t>& b) const {
  const std::size_t k = lu_.size();
  std::vector<std::uint64_t> y(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t s = b[perm_[i]] % mod_.modulus();
    for (std::size_t j = 0; j < i; ++j) s = mod_.sub(s, mod_.mul(lu_[i][j], y[j]));
    y[i] = s;
  }
  for (std::size_t i = k; i-- > 0;) {
    std::uint64_t s = y[i];
    for (std::size_t j = i + 1; j < k; ++j) s = mod_.sub(s, mod_.mul(lu_[i][j], y[j]));
    y[i] = mod_.mul(s, mod_.inv(lu_[i][i]));
  }
  return y;
}

IndexCalculusSystem build_index_calculus_system(const std::vector<FieldPoly>& factors, const FieldPoly& q_known,
                                                const DlogContext& ctx, std::uint64_t p, std::size_t max_rows,
                                                Rng& rng) {
  const PrimeField& f = ctx.field();
  const std::size_t k = factors.size();
  IndexCalculusSystem sys;
  IncrementalEchelon ech(p, k);
  std::vector<std::uint64_t> row(k);
  std::size_t resamples = 0;
  while (sys.rows.size() < k && sys.generated < max_rows) {
    const Word lambda = f.random(rng);
    bool root = q_known(lambda) == 0;
    for (std::size_t j = 0; j < k && !root; ++j) {
      const Word v = factors[j](lambda);
      root = v == 0;
      if (!root) row[j] = ctx.log(v) % p;
    }
    if (root) {
      if (++resamples > 64 * (max_rows + 1)) break;
      continue;
    }
    ++sys.generated;
    if (ech.add_row(row)) {
      sys.rows.push_back(row);
      sys.lambdas.push_back(lambda);
    }
  }
  sys.full_rank = sys.rows.size() == k;
  return sys;
}

std::optional<std::uint64_t> log_det_shifted(const BlackBoxPtr& a, Word lambda, const DlogContext& ctx,
                                             std::uint64_t p, Rng& rng, const WiedemannOptions& wopt) {
  ShiftedOperator shifted(a, lambda);
  const Word det = det_blackbox(shifted, rng, wopt);
  if (det == 0) return std::nullopt;
  return ctx.log(det) % p;
}

IndexCalculusResult index_calculus(const BlackBoxPtr& a, const std::vector<FactorProfile>& profiles,
                                   const std::vector<std::size_t>& unresolved, const FieldPoly& q_known,
                                   const DlogContext& ctx, std::uint64_t p, Rng& rng,
                                   const WiedemannOptions& wopt) {
  IndexCalculusResult res;
  const std::size_t n = a->dimension();
  const std::size_t k = unresolved.size();
  const std::uint64_t qm1 = ctx.field().modulus() - 1;
  if (p <= n || qm1 % p != 0) throw InputError("index calculus needs a prime p > n dividing q - 1");
  if (k == 0) {
    res.ok = q_known.degree() == static_cast<int>(n);
    if (!res.ok) res.failure = "degree check";
    return res;
  }
  std::vector<FieldPoly> factors;
  for (std::size_t j : unresolved) factors.push_back(profiles[j].factor);
  auto sys = build_index_calculus_system(factors, q_known, ctx, p, n + 1, rng);
  res.rows = sys.generated;
  res.lambdas = sys.lambdas;
  if (!sys.full_rank) {
    res.failure = "rank deficient after " + std::to_string(sys.generated) + " rows";
    return res;
  }
  // Independent determinants; per-task generators are seeded up front so the
  // result does not depend on the thread count.
  std::vector<std::uint64_t> seeds(k);
  for (auto& s : seeds) s = rng();
  std::vector<std::optional<std::uint64_t>> logs(k);
  try {
    parallel_for(k, wopt.jobs, [&](std::size_t i) {
      Rng local(seeds[i]);
      logs[i] = log_det_shifted(a, sys.lambdas[i], ctx, p, local, wopt);
    });
  } catch (const NotCertified& e) {
    res.failure = e.what();
    return res;
  }
  res.determinants = k;
  std::vector<std::uint64_t> b(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!logs[i]) {
      res.failure = "zero determinant at a non-root";
      return res;
    }
    // p | q-1, so reducing each logarithm mod p first is exact.
    const std::uint64_t lq = ctx.log(q_known(sys.lambdas[i])) % p;
    b[i] = (*logs[i] + p - lq) % p;
  }
  auto lu = LuModPrime::factor(p, sys.rows);
  if (!lu) {
    res.failure = "singular system";
    return res;
  }
  const auto x = lu->solve(b);
  std::size_t deg = static_cast<std::size_t>(std::max(0, q_known.degree()));
  for (std::size_t j = 0; j < k; ++j) {
    res.mult.push_back(static_cast<unsigned>(x[j]));
    deg += x[j] * profiles[unresolved[j]].degree;
    if (x[j] < profiles[unresolved[j]].min_mult) {
      res.failure = "multiplicity below minimal-polynomial exponent";
      return res;
    }
  }
  if (deg != n) {
    res.failure = "degree check";
    return res;
  }
  res.ok = true;
  return res;
}

FieldPoly expand_profiles(const PrimeField& f, const std::vector<FactorProfile>& profiles,
                          const std::vector<unsigned>& mult) {
  FieldPoly out = FieldPoly::constant(f, 1);
  for (std::size_t i = 0; i < profiles.size(); ++i) out = out * pow(profiles[i].factor, mult[i]);
  return out;
}

}  // namespace bbc
