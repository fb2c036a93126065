#include <doctest.h>

#include <sstream>

#include "bbc/cli.hpp"
#include "bbc/format.hpp"
#include "bbc/sms.hpp"
#include "support.hpp"

using namespace bbc;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "bbcharpoly");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

const std::string kDiag112 = "3 3 M\n1 1 1\n2 2 1\n3 3 2\n0 0 0\n";
}  // namespace

TEST_CASE("SMS parsing examples") {
  const auto a = parse_sms("2 2 M\n1 1 1\n2 2 2\n0 0 0\n");
  REQUIRE(a.dimension() == 2);
  REQUIRE(a.entries().size() == 2);
  CHECK(a.entries()[1].value == 2);
  const auto padded = parse_sms("3 2 R\n1 1 5\n3 2 -4\n0 0 0\n");
  CHECK(padded.dimension() == 3);
  CHECK(emit_sms(padded) == "3 3 M\n1 1 5\n3 2 -4\n0 0 0\n");
  const std::string messy = "2 2 Z\n2 1 7\n\n1 2   -123456789012345678901\n0 0 0\n";
  CHECK(emit_sms(parse_sms(messy)) == "2 2 M\n1 2 -123456789012345678901\n2 1 7\n0 0 0\n");
  CHECK(emit_sms(parse_sms(emit_sms(parse_sms(messy)))) == emit_sms(parse_sms(messy)));
}

TEST_CASE("SMS errors report the line") {
  auto msg = [](const std::string& t) {
    try {
      parse_sms(t);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(msg("2 2 M\n1 1 x\n0 0 0\n").find("line 2") != std::string::npos);
  CHECK(msg("2 2 M\n1 1 1\n3 1 1\n0 0 0\n").find("line 3") != std::string::npos);
  CHECK(msg("2 2 M\n1 1 1\n1 1 2\n0 0 0\n").find("duplicate") != std::string::npos);
  CHECK(msg("2 2 M\n1 1 1\n").find("terminator") != std::string::npos);
  CHECK(msg("2 M\n0 0 0\n").find("line 1") != std::string::npos);
  CHECK(msg("").find("empty") != std::string::npos);
  CHECK(msg("1 1 M\n1 1 0\n0 0 0\n").find("zero") != std::string::npos);
}

TEST_CASE("symmetric power examples") {
  const Graph path(3, {{0, 1}, {1, 2}});
  const Graph sq = symmetric_power(path, 2);
  // {1,2}=0, {1,3}=1, {2,3}=2: {1,2}-{1,3} via 2-3, {1,3}-{2,3} via 1-2
  CHECK(sq.vertices() == 3);
  CHECK(sq.edges() == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  CHECK(symmetric_power(path, 1).edges() == path.edges());
  CHECK_THROWS_AS(symmetric_power(path, 4), InputError);
  CHECK_THROWS_AS(symmetric_power(path, 0), InputError);
  CHECK(symmetric_power(rook_graph(4), 3).vertices() == 560);
}

TEST_CASE("symmetric power agrees with the definition") {
  Rng rng(1);
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 0; u < 7; ++u)
    for (std::size_t v = u + 1; v < 7; ++v)
      if (rng() % 2) e.emplace_back(u, v);
  const Graph g(7, e);
  const std::size_t k = 3;
  std::vector<std::vector<std::size_t>> subsets;
  for (unsigned mask = 0; mask < 128; ++mask)
    if (__builtin_popcount(mask) == 3) {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < 7; ++i)
        if (mask >> i & 1) s.push_back(i);
      subsets.push_back(s);
    }
  std::sort(subsets.begin(), subsets.end());
  for (std::size_t i = 0; i < subsets.size(); ++i) CHECK(subset_rank(subsets[i], 7) == i);
  const Graph h = symmetric_power(g, k);
  for (std::size_t i = 0; i < subsets.size(); ++i)
    for (std::size_t j = i + 1; j < subsets.size(); ++j) {
      std::vector<std::size_t> diff;
      std::set_symmetric_difference(subsets[i].begin(), subsets[i].end(), subsets[j].begin(), subsets[j].end(),
                                    std::back_inserter(diff));
      const bool adj = diff.size() == 2 && g.has_edge(diff[0], diff[1]);
      CHECK(h.has_edge(i, j) == adj);
    }
}

TEST_CASE("graph from adjacency") {
  const auto a = parse_sms("3 3 M\n1 2 1\n2 1 1\n2 3 1\n0 0 0\n");
  const Graph g = Graph::from_adjacency(a);
  CHECK(g.edges().size() == 2);
  CHECK_THROWS_AS(Graph::from_adjacency(parse_sms("2 2 M\n1 1 1\n0 0 0\n")), InputError);
  CHECK(binomial(26, 3) == 2600);
  CHECK(binomial(16, 3) == 560);
}

TEST_CASE("polynomial text") {
  const PrimeField f(101);
  CHECK(poly_text(FieldPoly::from_ints(f, {-1, 3, 1})) == "X^2+3*X-1");
  CHECK(poly_text(FieldPoly::from_ints(f, {0, -1})) == "-X");
  CHECK(coeff_line(FieldPoly::from_ints(f, {100, 1})) == "-1 1");
  Rng rng(2);
  const IntPoly c = IntPoly::from_ints({-2, 5, -4, 1});
  CHECK(factored_text(integer_display_factors(c, rng)) == "(X-1)^2*(X-2)");
  const IntPoly q = pow(IntPoly::from_ints({-2, 0, 1}), 2) * IntPoly::from_ints({3, 1}) * IntPoly::x();
  CHECK(factored_text(integer_display_factors(q, rng)) == "(X)*(X+3)*(X^2-2)^2");
  const IntPoly big = IntPoly::from_ints({-1000000007, 1}) * IntPoly::from_ints({999999999989, 1});
  CHECK(factored_text(integer_display_factors(big, rng)) == "(X-1000000007)*(X+999999999989)");
}

TEST_CASE("charpoly command") {
  auto r = run({"charpoly", "--integer", "--seed", "1", "-"}, kDiag112);
  CHECK(r.code == 0);
  CHECK(r.out == "(X-1)^2*(X-2)\n");
  r = run({"charpoly", "--field", "7", "--output", "coeffs", "--seed", "1", "-"}, kDiag112);
  CHECK(r.out == "-2 -2 3 1\n");
  r = run({"charpoly", "--integer", "--output", "json", "--seed", "3", "--verify", "-"}, kDiag112);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["coefficients"] == nlohmann::json::array({"-2", "5", "-4", "1"}));
  CHECK(j["factors"].size() == 2);
  CHECK(j["verified_primes"].size() == 3);
  r = run({"minpoly", "--integer", "--seed", "1", "-"}, kDiag112);
  CHECK(r.out == "(X-1)*(X-2)\n");
}

TEST_CASE("multiplicities command") {
  const std::string m = "4 4 M\n1 1 1\n1 2 1\n2 2 1\n3 3 1\n4 4 2\n0 0 0\n";
  auto r = run({"multiplicities", "--field", "101", "--seed", "5", "-"}, m);
  CHECK(r.code == 0);
  CHECK(r.out == "(X-1) e=2 m=3\n(X-2) e=1 m=1\n");
  r = run({"multiplicities", "--integer", "-"}, m);
  CHECK(r.code == 2);
}

TEST_CASE("explain trace is JSON lines") {
  auto r = run({"charpoly", "--field", "101", "--explain", "--seed", "9", "-"}, kDiag112);
  CHECK(r.code == 0);
  std::istringstream lines(r.err);
  int count = 0;
  for (std::string line; std::getline(lines, line); ++count) CHECK(nlohmann::json::parse(line).contains("event"));
  CHECK(count >= 3);
}

TEST_CASE("exit codes") {
  CHECK(run({"charpoly", "--field", "101", "-"}, "2 2 M\n1 1 q\n0 0 0\n").code == 2);
  CHECK(run({"charpoly", "-"}, kDiag112).code == 2);
  CHECK(run({"charpoly", "--field", "101", "--integer", "-"}, kDiag112).code == 2);
  CHECK(run({"charpoly", "--field", "100", "-"}, kDiag112).code == 2);
  CHECK(run({"charpoly", "--field", "101", "--method", "magic", "-"}, kDiag112).code == 2);
  CHECK(run({"charpoly", "--field", "101", "--method", "index", "-"}, kDiag112).code == 0);  // q-1 = 100, p = 5 > 3
  CHECK(run({"charpoly", "--field", "101", "--verify", "--verify-max-n", "2", "-"}, kDiag112).code == 2);
  CHECK(run({"sympower", "--k", "4", "-"}, "3 3 M\n1 2 1\n2 1 1\n0 0 0\n").code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("sympower command") {
  auto r = run({"sympower", "--k", "2", "-"}, "3 3 M\n1 2 1\n2 1 1\n2 3 1\n3 2 1\n0 0 0\n");
  CHECK(r.code == 0);
  CHECK(r.out == "3 3 M\n1 2 1\n2 1 1\n2 3 1\n3 2 1\n0 0 0\n");
}

TEST_CASE("fixed seed gives identical output") {
  Rng rng(3);
  const auto a = random_sparse(PrimeField(10007), 30, 3, rng);
  std::vector<IntTriple> t;
  for (const auto& e : a.triples()) t.push_back({e.row, e.col, mpz_class(static_cast<unsigned long>(e.value % 19)) - 9});
  const std::string sms = emit_sms(IntegerMatrix(30, t));
  for (const char* method : {"auto", "nullity-comb", "index", "hybrid", "invfact"}) {
    const auto a1 = run({"charpoly", "--field", "10007", "--method", method, "--seed", "7", "--output", "json", "-"}, sms);
    const auto a2 = run({"charpoly", "--field", "10007", "--method", method, "--seed", "7", "--output", "json", "-"}, sms);
    CHECK(a1.code == 0);
    CHECK(a1.out == a2.out);
  }
}
