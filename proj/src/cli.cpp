#include "bbc/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "bbc/adaptive.hpp"
#include "bbc/format.hpp"
#include "bbc/integer.hpp"
#include "bbc/oracle.hpp"
#include "bbc/sms.hpp"

namespace bbc {

namespace {

class VerifyMismatch : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::optional<std::uint64_t> field;
  bool integer = false;
  std::string method = "auto";
  unsigned threshold = 5;
  std::optional<std::uint64_t> seed;
  bool explain = false;
  bool verify = false;
  std::size_t verify_max_n = 300;
  std::string format = "factored";
  unsigned jobs = 1;
  std::size_t k = 0;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

IntegerMatrix read_matrix(const std::string& path, std::istream& in) {
  if (path == "-") return parse_sms(in);
  std::ifstream file(path);
  if (!file) throw InputError("cannot open " + path);
  return parse_sms(file);
}

void write_output(const std::string& path, std::ostream& out, const std::string& text) {
  if (path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

AdaptiveConfig field_config(const Options& o) {
  if (o.threshold < 1) throw InputError("--threshold must be at least 1");
  AdaptiveConfig cfg;
  cfg.method = parse_method(o.method);
  cfg.threshold = o.threshold;
  cfg.seed = *o.seed;
  cfg.jobs = std::max(1u, o.jobs);
  return cfg;
}

void check_verify_size(const Options& o, std::size_t n) {
  if (o.verify && n > o.verify_max_n)
    throw InputError("--verify refuses n = " + std::to_string(n) + " > " + std::to_string(o.verify_max_n) +
                     " (raise with --verify-max-n)");
}

enum class Kind { Charpoly, Minpoly };

// Dense reference for the reduced matrix.
FieldPoly reference(const IntegerMatrix& a, const PrimeField& f, Kind kind) {
  const DenseMatrix d = DenseMatrix::from_sparse(*a.reduce(f));
  return kind == Kind::Charpoly ? dense_charpoly(d) : dense_minpoly(d);
}

nlohmann::json verify_integer(const IntegerMatrix& a, const IntPoly& c, Kind kind, std::uint64_t seed,
                              ExplainLog* log) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  nlohmann::json primes = nlohmann::json::array();
  std::vector<std::uint64_t> used;
  while (used.size() < 3) {
    const std::uint64_t p = random_prime(rng, std::uint64_t{1} << 30, std::uint64_t{1} << 31);
    if (std::find(used.begin(), used.end(), p) != used.end()) continue;
    used.push_back(p);
    const PrimeField f(p);
    const bool ok = reference(a, f, kind) == c.reduce(f);
    if (log) log->event("verify_prime", {{"p", p}, {"ok", ok}});
    if (!ok) throw VerifyMismatch("verification mismatch modulo " + std::to_string(p));
    primes.push_back(p);
  }
  return primes;
}

std::string render_field(const FieldPoly& c, const std::string& format, const std::string& kind, std::size_t n,
                         Rng& rng, const nlohmann::json& extra) {
  if (format == "coeffs") return coeff_line(c) + "\n";
  const auto fs = field_factors(c, rng);
  if (format == "factored") return factored_text(fs) + "\n";
  nlohmann::json j = {{"kind", kind}, {"field", c.field().modulus()}, {"n", n}, {"degree", c.degree()},
                      {"coefficients", coeffs_json(c)}};
  auto arr = nlohmann::json::array();
  for (const auto& [p, e] : fs) arr.push_back({{"factor", coeffs_json(p)}, {"text", poly_text(p)}, {"multiplicity", e}});
  j["factors"] = arr;
  j.update(extra);
  return j.dump() + "\n";
}

std::string render_integer(const IntPoly& c, const std::string& format, const std::string& kind, std::size_t n,
                           Rng& rng, const nlohmann::json& extra) {
  if (format == "coeffs") return coeff_line(c) + "\n";
  const auto fs = integer_display_factors(c, rng);
  if (format == "factored") return factored_text(fs) + "\n";
  nlohmann::json j = {{"kind", kind}, {"field", "integer"}, {"n", n}, {"degree", c.degree()},
                      {"coefficients", coeffs_json(c)}};
  auto arr = nlohmann::json::array();
  for (const auto& [p, e] : fs) arr.push_back({{"factor", coeffs_json(p)}, {"text", poly_text(p)}, {"multiplicity", e}});
  j["factors"] = arr;
  j.update(extra);
  return j.dump() + "\n";
}

void polynomial_command(const Options& o, Kind kind, Streams s) {
  const IntegerMatrix a = read_matrix(o.input, s.in);
  const std::size_t n = a.dimension();
  check_verify_size(o, n);
  AdaptiveConfig cfg = field_config(o);
  Rng rng(*o.seed);
  Rng display(*o.seed + 1);
  ExplainLog log(o.explain ? &s.err : nullptr);
  ExplainLog* lp = o.explain ? &log : nullptr;
  const std::string kname = kind == Kind::Charpoly ? "charpoly" : "minpoly";
  if (lp) lp->event("input", {{"n", n}, {"nonzeros", a.entries().size()}, {"command", kname}});
  nlohmann::json extra = nlohmann::json::object();
  if (o.integer) {
    IntegerOptions io;
    io.field = cfg;
    const IntPoly c = kind == Kind::Charpoly ? integer_charpoly(a, rng, io, lp) : integer_minpoly(a, rng, io, lp);
    if (o.verify) extra["verified_primes"] = verify_integer(a, c, kind, *o.seed, lp);
    write_output(o.output, s.out, render_integer(c, o.format, kname, n, display, extra));
    return;
  }
  const PrimeField f(*o.field);
  const auto ap = a.reduce(f);
  FieldPoly c(f);
  if (kind == Kind::Charpoly) {
    const CharpolyResult r = blackbox_charpoly_field(ap, cfg, rng, lp);
    c = r.charpoly;
    extra["method"] = method_name(r.method);
  } else {
    c = n == 0 ? FieldPoly::constant(f, 1) : wiedemann_minpoly(*ap, rng, cfg.wiedemann());
  }
  if (o.verify) {
    const bool ok = reference(a, f, kind) == c;
    if (lp) lp->event("verify_oracle", {{"ok", ok}});
    if (!ok) throw VerifyMismatch("verification mismatch against the dense oracle");
    extra["verified"] = true;
  }
  write_output(o.output, s.out, render_field(c, o.format, kname, n, display, extra));
}

void multiplicities_command(const Options& o, Streams s) {
  if (o.integer || !o.field) throw InputError("multiplicities needs --field p");
  const IntegerMatrix a = read_matrix(o.input, s.in);
  const std::size_t n = a.dimension();
  check_verify_size(o, n);
  const AdaptiveConfig cfg = field_config(o);
  Rng rng(*o.seed);
  ExplainLog log(o.explain ? &s.err : nullptr);
  ExplainLog* lp = o.explain ? &log : nullptr;
  if (lp) lp->event("input", {{"n", n}, {"nonzeros", a.entries().size()}, {"command", "multiplicities"}});
  const PrimeField f(*o.field);
  const CharpolyResult r = blackbox_charpoly_field(a.reduce(f), cfg, rng, lp);
  if (o.verify) {
    const bool ok = reference(a, f, Kind::Charpoly) == r.charpoly;
    if (lp) lp->event("verify_oracle", {{"ok", ok}});
    if (!ok) throw VerifyMismatch("verification mismatch against the dense oracle");
  }
  std::ostringstream text;
  if (o.format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& p : r.profiles)
      arr.push_back({{"factor", coeffs_json(p.factor)},
                     {"text", poly_text(p.factor)},
                     {"degree", p.degree},
                     {"e", p.min_mult},
                     {"m", *p.mult}});
    nlohmann::json j = {{"kind", "multiplicities"}, {"field", f.modulus()}, {"n", n},
                        {"method", method_name(r.method)}, {"factors", arr}};
    if (o.verify) j["verified"] = true;
    text << j.dump() << '\n';
  } else {
    for (const auto& p : r.profiles) {
      if (o.format == "coeffs")
        text << p.min_mult << ' ' << *p.mult << ' ' << coeff_line(p.factor) << '\n';
      else
        text << '(' << poly_text(p.factor) << ") e=" << p.min_mult << " m=" << *p.mult << '\n';
    }
  }
  write_output(o.output, s.out, text.str());
}

void sympower_command(const Options& o, Streams s) {
  const Graph g = Graph::from_adjacency(read_matrix(o.input, s.in));
  const Graph h = symmetric_power(g, o.k);
  write_output(o.output, s.out, emit_sms(h.adjacency()));
}

void add_common(CLI::App* cmd, Options& o, bool polynomial) {
  cmd->add_option("input", o.input, "SMS matrix file, - for stdin")->capture_default_str();
  cmd->add_option("-o,--out", o.output, "output file, - for stdout")->capture_default_str();
  if (!polynomial) return;
  auto* fld = cmd->add_option("--field", o.field, "prime modulus p");
  auto* integer = cmd->add_flag("--integer", o.integer, "characteristic polynomial over Z");
  fld->excludes(integer);
  cmd->add_option("--method", o.method, "auto|nullity-comb|index|hybrid|invfact")->capture_default_str();
  cmd->add_option("--threshold", o.threshold, "combinatorial threshold T")->capture_default_str();
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_flag("--explain", o.explain, "JSON-lines decision trace on stderr");
  cmd->add_flag("--verify", o.verify, "cross-check against the dense oracle");
  cmd->add_option("--verify-max-n", o.verify_max_n, "largest n accepted by --verify")->capture_default_str();
  cmd->add_option("--output", o.format, "coeffs|factored|json")
      ->check(CLI::IsMember({"coeffs", "factored", "json"}))
      ->capture_default_str();
  cmd->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Characteristic polynomials of sparse black-box matrices"};
  app.require_subcommand(1);
  Options o;
  auto* charpoly = app.add_subcommand("charpoly", "characteristic polynomial");
  auto* minpoly = app.add_subcommand("minpoly", "minimal polynomial");
  auto* mults = app.add_subcommand("multiplicities", "factors of the minimal polynomial with multiplicities");
  auto* verify = app.add_subcommand("verify", "charpoly checked against the dense oracle");
  auto* sympower = app.add_subcommand("sympower", "symmetric k-th power of a graph");
  for (auto* c : {charpoly, minpoly, mults, verify}) add_common(c, o, true);
  add_common(sympower, o, false);
  sympower->add_option("-k,--k", o.k, "subset size")->required();

  Streams s{in, out, err};
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInput;
  }
  try {
    if (!o.seed) o.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    const bool poly_cmd = !sympower->parsed();
    if (poly_cmd && !o.integer && !o.field) throw InputError("one of --field p or --integer is required");
    if (charpoly->parsed()) polynomial_command(o, Kind::Charpoly, s);
    if (minpoly->parsed()) polynomial_command(o, Kind::Minpoly, s);
    if (mults->parsed()) multiplicities_command(o, s);
    if (verify->parsed()) {
      o.verify = true;
      polynomial_command(o, Kind::Charpoly, s);
    }
    if (sympower->parsed()) sympower_command(o, s);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const VerifyMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }
  return kExitOk;
}

}  // namespace bbc
