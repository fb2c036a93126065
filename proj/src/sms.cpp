#include "bbc/sms.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace bbc {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("sms line " + std::to_string(line) + ": " + what);
}

bool parse_index(const std::string& tok, std::size_t& out) {
  if (tok.empty() || tok.size() > 18 || !std::all_of(tok.begin(), tok.end(), ::isdigit)) return false;
  out = std::stoull(tok);
  return true;
}

bool parse_integer(const std::string& tok, mpz_class& out) {
  std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (start == tok.size() || !std::all_of(tok.begin() + start, tok.end(), ::isdigit)) return false;
  out.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10);
  return true;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  for (std::string t; ss >> t;) toks.push_back(t);
  return toks;
}

}  // namespace

IntegerMatrix parse_sms(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t rows = 0, cols = 0;
  bool header = false, terminated = false;
  std::vector<IntTriple> entries;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  while (std::getline(in, line)) {
    ++lineno;
    const auto toks = split(line);
    if (toks.empty()) continue;
    if (terminated) fail(lineno, "content after the 0 0 0 terminator");
    if (!header) {
      if (toks.size() != 3 || !parse_index(toks[0], rows) || !parse_index(toks[1], cols))
        fail(lineno, "expected header 'rows cols M'");
      header = true;
      continue;
    }
    std::size_t i = 0, j = 0;
    mpz_class v;
    if (toks.size() != 3 || !parse_index(toks[0], i) || !parse_index(toks[1], j) || !parse_integer(toks[2], v))
      fail(lineno, "expected 'row col value'");
    if (i == 0 && j == 0 && v == 0) {
      terminated = true;
      continue;
    }
    if (i < 1 || i > rows || j < 1 || j > cols)
      fail(lineno, "index (" + toks[0] + ", " + toks[1] + ") outside " + std::to_string(rows) + " x " +
                       std::to_string(cols));
    if (v == 0) fail(lineno, "zero value");
    if (!seen.insert({i, j}).second) fail(lineno, "duplicate entry (" + toks[0] + ", " + toks[1] + ")");
    entries.push_back({i - 1, j - 1, v});
  }
  if (!header) throw InputError("sms: empty input");
  if (!terminated) fail(lineno + 1, "missing 0 0 0 terminator");
  return IntegerMatrix(std::max(rows, cols), std::move(entries));
}

IntegerMatrix parse_sms(const std::string& text) {
  std::istringstream in(text);
  return parse_sms(in);
}

void write_sms(std::ostream& out, const IntegerMatrix& a) {
  out << a.dimension() << ' ' << a.dimension() << " M\n";
  for (const auto& e : a.entries()) out << e.row + 1 << ' ' << e.col + 1 << ' ' << e.value.get_str() << '\n';
  out << "0 0 0\n";
}

std::string emit_sms(const IntegerMatrix& a) {
  std::ostringstream out;
  write_sms(out, a);
  return out.str();
}

Graph::Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges) : n_(n) {
  for (auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InputError("edge endpoint out of range");
    if (u == v) throw InputError("loop at vertex " + std::to_string(u + 1));
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

Graph Graph::from_adjacency(const IntegerMatrix& a) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (const auto& t : a.entries()) e.emplace_back(t.row, t.col);
  return Graph(a.dimension(), std::move(e));
}

IntegerMatrix Graph::adjacency() const {
  std::vector<IntTriple> t;
  t.reserve(2 * edges_.size());
  for (const auto& [u, v] : edges_) {
    t.push_back({u, v, mpz_class(1)});
    t.push_back({v, u, mpz_class(1)});
  }
  return IntegerMatrix(n_, std::move(t));
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), std::pair(u, v));
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::uint64_t subset_rank(const std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t k = s.size();
  std::uint64_t r = 0;
  std::size_t next = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = next; c < s[i]; ++c) r += binomial(n - 1 - c, k - 1 - i);
    next = s[i] + 1;
  }
  return r;
}

Graph symmetric_power(const Graph& g, std::size_t k) {
  const std::size_t n = g.vertices();
  if (k < 1 || k > n) throw InputError("symmetric power k must lie in 1.." + std::to_string(n));
  std::vector<std::vector<std::size_t>> nbr(n);
  for (const auto& [u, v] : g.edges()) {
    nbr[u].push_back(v);
    nbr[v].push_back(u);
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  std::vector<char> in(n, 0);
  std::size_t index = 0;
  for (;;) {
    std::fill(in.begin(), in.end(), 0);
    for (auto x : s) in[x] = 1;
    for (std::size_t pos = 0; pos < k; ++pos)
      for (std::size_t w : nbr[s[pos]]) {
        if (in[w]) continue;
        std::vector<std::size_t> t = s;
        t[pos] = w;
        std::sort(t.begin(), t.end());
        const std::size_t j = subset_rank(t, n);
        if (index < j) edges.emplace_back(index, j);
      }
    ++index;
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
  return Graph(static_cast<std::size_t>(binomial(n, k)), std::move(edges));
}

Graph rook_graph(std::size_t m) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t a = 0; a < m * m; ++a)
    for (std::size_t b = a + 1; b < m * m; ++b)
      if (a / m == b / m || a % m == b % m) e.emplace_back(a, b);
  return Graph(m * m, std::move(e));
}

}  // namespace bbc
