#include "bbc/format.hpp"

#include <algorithm>

namespace bbc {

namespace {

std::vector<mpz_class> symmetric_coeffs(const FieldPoly& f) {
  std::vector<mpz_class> c;
  for (Word w : f.coeffs()) c.emplace_back(static_cast<long>(f.field().symmetric(w)));
  return c;
}

std::string join(const std::vector<mpz_class>& c) {
  if (c.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ' ';
    s += c[i].get_str();
  }
  return s;
}

std::string text(const std::vector<mpz_class>& c) {
  if (c.empty()) return "0";
  std::string s;
  for (std::size_t i = c.size(); i-- > 0;) {
    const mpz_class& a = c[i];
    if (a == 0) continue;
    const bool neg = a < 0;
    const mpz_class m = abs(a);
    if (!s.empty() || neg) s += neg ? '-' : '+';
    if (i == 0) {
      s += m.get_str();
      continue;
    }
    if (m != 1) s += m.get_str() + "*";
    s += i == 1 ? "X" : "X^" + std::to_string(i);
  }
  return s;
}

template <class P>
std::string factored(const std::vector<std::pair<P, unsigned>>& fs) {
  if (fs.empty()) return "1";
  std::string s;
  for (const auto& [p, e] : fs) {
    if (!s.empty()) s += '*';
    s += "(" + poly_text(p) + ")";
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

IntPoly linear(const mpz_class& root) { return IntPoly({-root, mpz_class(1)}); }

// Integer roots of a monic squarefree g, found mod a prime where g stays
// squarefree and Hensel-lifted past the Cauchy bound.
std::vector<mpz_class> integer_roots(const IntPoly& g, Rng& rng) {
  std::vector<mpz_class> roots;
  if (g.degree() < 1) return roots;
  if (g.degree() == 1) return {-g.coeff(0)};
  mpz_class bound = 0;
  for (const auto& c : g.coeffs()) bound = std::max(bound, mpz_class(abs(c)));
  bound += 1;
  for (int attempt = 0; attempt < 20; ++attempt) {
    const PrimeField f(random_prime(rng, std::uint64_t{1} << 30, std::uint64_t{1} << 31));
    const FieldPoly gb = g.reduce(f);
    if (!gcd(gb, derivative(gb)).is_one()) continue;
    std::vector<FieldPoly> basis;
    FieldPoly rest = FieldPoly::constant(f, 1);
    for (const auto& fp : factor(gb, rng).factors) {
      if (fp.factor.degree() == 1)
        basis.push_back(fp.factor);
      else
        rest = rest * fp.factor;
    }
    if (basis.empty()) return roots;
    const std::size_t linear_count = basis.size();
    if (rest.degree() > 0) basis.push_back(rest);
    const auto lifted = hensel_lift_basis(g, basis, bound);
    for (std::size_t i = 0; i < linear_count; ++i) {
      const mpz_class r = -lifted[i].coeff(0);
      if (g(r) == 0) roots.push_back(r);
    }
    return roots;
  }
  return roots;
}

}  // namespace

std::string coeff_line(const FieldPoly& f) { return join(symmetric_coeffs(f)); }
std::string coeff_line(const IntPoly& f) { return join(f.coeffs()); }
std::string poly_text(const FieldPoly& f) { return text(symmetric_coeffs(f)); }
std::string poly_text(const IntPoly& f) { return text(f.coeffs()); }
std::string factored_text(const std::vector<std::pair<FieldPoly, unsigned>>& fs) { return factored(fs); }
std::string factored_text(const std::vector<std::pair<IntPoly, unsigned>>& fs) { return factored(fs); }

std::vector<std::pair<FieldPoly, unsigned>> field_factors(const FieldPoly& f, Rng& rng) {
  std::vector<std::pair<FieldPoly, unsigned>> out;
  for (const auto& fp : factor(f, rng).factors) out.emplace_back(fp.factor, fp.multiplicity);
  return out;
}

bool canonical_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i-- > 0;) {
    const mpz_class x = a.coeff(i), y = b.coeff(i);
    if (x == y) continue;
    const int c = cmp(abs(x), abs(y));
    if (c != 0) return c < 0;
    return x > y;
  }
  return false;
}

std::vector<std::pair<IntPoly, unsigned>> integer_display_factors(const IntPoly& f, Rng& rng) {
  std::vector<std::pair<IntPoly, unsigned>> out;
  if (f.degree() < 1) return out;
  // Yun's algorithm; f is monic, so every gcd is monic and the divisions are exact.
  const IntPoly df = derivative(f);
  IntPoly g = gcd(f, df);
  IntPoly b = exact_div(f, g);
  IntPoly d = exact_div(df, g) - derivative(b);
  for (unsigned i = 1; b.degree() > 0; ++i) {
    const IntPoly a = gcd(b, d);
    b = exact_div(b, a);
    d = exact_div(d, a) - derivative(b);
    if (a.degree() < 1) continue;
    IntPoly rest = a;
    for (const auto& r : integer_roots(a, rng)) {
      out.emplace_back(linear(r), i);
      rest = exact_div(rest, linear(r));
    }
    if (rest.degree() > 0) out.emplace_back(rest, i);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return canonical_less(x.first, y.first); });
  return out;
}

nlohmann::json coeffs_json(const FieldPoly& f) {
  auto j = nlohmann::json::array();
  for (const auto& c : symmetric_coeffs(f)) j.push_back(c.get_str());
  return j;
}

nlohmann::json coeffs_json(const IntPoly& f) {
  auto j = nlohmann::json::array();
  for (const auto& c : f.coeffs()) j.push_back(c.get_str());
  return j;
}

}  // namespace bbc
